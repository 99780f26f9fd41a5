#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistlab/tensor.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

Mat random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Cplx(gauss(rng), gauss(rng));
  return m;
}

Mat random_unitary(std::mt19937_64& rng, int d) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Eigen::MatrixXcd(random_matrix(rng, d, d)));
  return Mat(qr.householderQ());
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  const Mat i2 = identity(2);
  CHECK(op_norm(Mat(kron(i2, i2) - identity(4))) == doctest::Approx(0.0));

  Mat d(2, 2);
  d << 2.0, 0.0, 0.0, 3.0;
  const Mat k = kron(d, i2);
  Mat expected = Mat::Zero(4, 4);
  expected(0, 0) = 2.0;
  expected(1, 1) = 2.0;
  expected(2, 2) = 3.0;
  expected(3, 3) = 3.0;
  CHECK(op_norm(Mat(k - expected)) == doctest::Approx(0.0));
}

TEST_CASE("trace norm is multiplicative under kron") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 4; ++rep) {
    const Mat a = random_matrix(rng, 2, 2);
    const Mat b = random_matrix(rng, 2, 2);
    // oracle: singular values from an independent eigensolve of (A(x)B)*(A(x)B)
    const Mat k = kron(a, b);
    Spectrum s = herm_eig(Mat(k.adjoint() * k));
    double oracle = 0.0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
      oracle += std::sqrt(std::max(0.0, s.eigenvalues[i]));
    CHECK(trace_norm(k) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(trace_norm(k) ==
          doctest::Approx(trace_norm(a) * trace_norm(b)).epsilon(1e-10));
  }
}

TEST_CASE("kron is associative under the fixed flattening") {
  std::mt19937_64 rng(5);
  const Mat a = random_matrix(rng, 2, 2);
  const Mat b = random_matrix(rng, 3, 2);
  const Mat c = random_matrix(rng, 2, 3);
  CHECK(op_norm(Mat(kron(kron(a, b), c) - kron(a, kron(b, c)))) < 1e-13);
}

TEST_CASE("leg_embed places operators and distant legs commute") {
  std::mt19937_64 rng(7);
  Mat t = random_matrix(rng, 4, 4);

  CHECK(op_norm(Mat(leg_embed(t, 1, 2, 2) - t)) == doctest::Approx(0.0));

  const Mat f = flip_matrix(2);
  CHECK(op_norm(Mat(leg_embed(f, 1, 3, 2) * leg_embed(f, 1, 3, 2) - identity(8))) < 1e-14);

  const Mat t1 = leg_embed(t, 1, 4, 2);
  const Mat t3 = leg_embed(t, 3, 4, 2);
  CHECK(op_norm(Mat(t1 * t3 - t3 * t1)) < 1e-12);

  CHECK_THROWS_AS(leg_embed(t, 0, 3, 2), std::out_of_range);
  CHECK_THROWS_AS(leg_embed(t, 3, 3, 2), std::out_of_range);
}

TEST_CASE("herm_eig on known spectra") {
  Spectrum s = herm_eig(identity(3));
  for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(1.0));

  // flip on C^2 (x) C^2: one antisymmetric and three symmetric directions
  Spectrum f = herm_eig(flip_matrix(2));
  CHECK(f.eigenvalues[0] == doctest::Approx(-1.0));
  for (int i = 1; i < 4; ++i) CHECK(f.eigenvalues[i] == doctest::Approx(1.0));

  const Mat shifted = identity(4) + 0.5 * flip_matrix(2);
  Spectrum g = herm_eig(shifted);
  CHECK(g.eigenvalues[0] == doctest::Approx(0.5));
  for (int i = 1; i < 4; ++i) CHECK(g.eigenvalues[i] == doctest::Approx(1.5));

  // reconstruction residual
  std::mt19937_64 rng(3);
  Mat a = random_matrix(rng, 5, 5);
  a = Mat(a + a.adjoint());
  Spectrum sa = herm_eig(a);
  const Mat rebuilt =
      sa.eigenbasis * sa.eigenvalues.cast<Cplx>().asDiagonal() * sa.eigenbasis.adjoint();
  CHECK(op_norm(Mat(a - rebuilt)) < 1e-12 * (1.0 + op_norm(a)));

  // non-self-adjoint input is rejected, not symmetrized
  Mat bad = random_matrix(rng, 3, 3);
  CHECK_THROWS_AS(herm_eig(bad), std::invalid_argument);
}

TEST_CASE("spectral_power basics and group law") {
  CHECK(op_norm(Mat(spectral_power(PositiveSpectral::identity(3), Cplx(0, 0)) - identity(3))) <
        1e-14);

  RVec one(1);
  one[0] = 4.0;
  const Mat root = spectral_power(PositiveSpectral::from_diagonal(one), Cplx(0.5, 0));
  CHECK(std::abs(root(0, 0) - Cplx(2.0, 0)) < 1e-14);

  RVec evs(3);
  evs << 0.3, 1.0, 5.5;
  const PositiveSpectral d = PositiveSpectral::from_diagonal(evs);
  const Cplx it(0, 0.7);
  CHECK(op_norm(Mat(spectral_power(d, it) * spectral_power(d, -it) - identity(3))) < 1e-12);

  // group law inside the strip |Im z| <= 1
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> re(-1.5, 1.5), im(-1.0, 1.0);
  for (int rep = 0; rep < 6; ++rep) {
    const Cplx z1(re(rng), im(rng) / 2), z2(re(rng), im(rng) / 2);
    const Mat lhs = spectral_power(d, z1) * spectral_power(d, z2);
    const Mat rhs = spectral_power(d, z1 + z2);
    CHECK(op_norm(Mat(lhs - rhs)) < 1e-10 * (1.0 + op_norm(rhs)));
  }
}

TEST_CASE("trace norm basics and unitary invariance") {
  CHECK(trace_norm(Mat(Mat::Zero(3, 3))) == doctest::Approx(0.0));

  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  CHECK(trace_norm(d) == doctest::Approx(3.0));

  std::mt19937_64 rng(23);
  const Mat a = random_matrix(rng, 4, 4);
  const Mat u = random_unitary(rng, 4);
  const Mat v = random_unitary(rng, 4);
  CHECK(trace_norm(Mat(u * a * v)) == doctest::Approx(trace_norm(a)).epsilon(1e-10));
}

TEST_CASE("matrix json round trip") {
  std::mt19937_64 rng(29);
  const Mat a = random_matrix(rng, 3, 2);
  const Mat b = matrix_from_json(matrix_to_json(a));
  CHECK(op_norm(Mat(a - b)) == doctest::Approx(0.0));
  CHECK_THROWS(matrix_from_json("{\"rows\": 2, \"cols\": 2, \"data\": [[1,0]]}"));
}
