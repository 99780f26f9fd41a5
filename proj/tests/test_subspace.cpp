#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistlab/subspace.hpp"

using namespace twistlab;

namespace {

StandardSubspace generic_h(double lambda = 4.0) {
  RVec evs(2);
  evs << lambda, 1.0 / lambda;
  AntilinearMap j;
  j.u = Mat::Zero(2, 2);
  j.u(0, 1) = 1.0;
  j.u(1, 0) = 1.0;
  return make_standard(PositiveSpectral::from_diagonal(evs), j);
}

StandardSubspace abelian_h(int d) {
  AntilinearMap j{Mat(Mat::Identity(d, d))};
  return make_standard(PositiveSpectral::identity(d), j);
}

Vec random_vec(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
  return v;
}

}  // namespace

TEST_CASE("trivial modular data gives the real subspace") {
  const StandardSubspace h = abelian_h(3);
  // standard basis vectors lie in H = R^3
  for (int i = 0; i < 3; ++i) CHECK(in_subspace(h, Vec(Vec::Unit(3, i))) < 1e-12);
  // real basis is real up to phases
  for (int c = 0; c < 3; ++c) {
    const Vec v = h.real_basis.col(c);
    CHECK(in_subspace(h, v) < 1e-12);
  }
}

TEST_CASE("generic two-dimensional standard subspace") {
  const StandardSubspace h = generic_h();

  // S^2 = 1
  CHECK(op_norm(Mat(h.tomita.u * h.tomita.u.conjugate() - identity(2))) < 1e-12);

  // fix(S) has real dimension 2 and the basis solves S v = v
  for (int c = 0; c < 2; ++c) CHECK(in_subspace(h, Vec(h.real_basis.col(c))) < 1e-10);

  // modular relation violation is rejected
  RVec evs(2);
  evs << 4.0, 0.25;
  AntilinearMap plain{Mat(Mat::Identity(2, 2))};
  CHECK_THROWS_AS(make_standard(PositiveSpectral::from_diagonal(evs), plain),
                  std::invalid_argument);

  // so is a j that fails to be an involution
  AntilinearMap twisted_j{Mat(Mat::Zero(2, 2))};
  twisted_j.u(0, 1) = 1.0;
  twisted_j.u(1, 0) = Cplx(0, 1);
  CHECK_THROWS_AS(make_standard(PositiveSpectral::identity(2), twisted_j),
                  std::invalid_argument);

  // membership probes reject mismatched dimensions
  CHECK_THROWS_AS(in_subspace(generic_h(), Vec(Vec::Zero(3))), std::invalid_argument);

  // nonpositive spectra never reach the spectral calculus
  RVec bad(2);
  bad << 1.0, 0.0;
  CHECK_THROWS_AS(PositiveSpectral::from_diagonal(bad), std::invalid_argument);
}

TEST_CASE("symplectic complement") {
  const StandardSubspace h = generic_h();
  const StandardSubspace hp = symplectic_complement(h);

  // Im<h, h'> = 0 for all basis pairs
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      worst = std::max(worst,
                       std::abs(std::imag(Vec(h.real_basis.col(a)).dot(hp.real_basis.col(b)))));
  CHECK(worst < 1e-10);

  // involutivity
  const StandardSubspace hpp = symplectic_complement(hp);
  CHECK(op_norm(Mat(hpp.delta.matrix() - h.delta.matrix())) < 1e-12);
  CHECK(op_norm(Mat(hpp.j.u - h.j.u)) < 1e-12);

  // S_{H'} = S_H^*
  const AntilinearMap s_adj = h.tomita.adjoint();
  CHECK(op_norm(Mat(hp.tomita.u - s_adj.u)) < 1e-10);

  // for the abelian case H' = H
  const StandardSubspace flat = abelian_h(2);
  const StandardSubspace flatp = symplectic_complement(flat);
  CHECK(op_norm(Mat(flatp.tomita.u - flat.tomita.u)) < 1e-12);
}

TEST_CASE("tensor powers of the modular data") {
  const StandardSubspace h = generic_h();

  const TensorPowerData p1 = tensor_power(h, 1);
  CHECK(op_norm(Mat(p1.tomita_n.u - h.tomita.u)) < 1e-14);

  const TensorPowerData p2 = tensor_power(h, 2);
  // involution persists
  CHECK(op_norm(Mat(p2.tomita_n.u * p2.tomita_n.u.conjugate() - identity(4))) < 1e-12);
  // spectrum = pairwise products
  std::vector<double> expected = {4.0 * 4.0, 1.0, 1.0, 0.0625};
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 4; ++i)
    CHECK(p2.delta_n.eigenvalues[i] == doctest::Approx(expected[i]));
}

TEST_CASE("membership residuals") {
  const StandardSubspace flat = abelian_h(2);
  std::mt19937_64 rng(41);

  // i h sits maximally far from H when Delta = 1
  Vec hvec = flat.real_basis.col(0);
  const Vec ih = Cplx(0, 1) * hvec;
  CHECK(in_subspace(flat, ih) == doctest::Approx(2.0 * hvec.norm()).epsilon(1e-12));

  // definition restated
  const StandardSubspace h = generic_h();
  for (int rep = 0; rep < 3; ++rep) {
    const Vec v = random_vec(rng, 2);
    CHECK(in_subspace(h, v) ==
          doctest::Approx((h.tomita.apply(v) - v).norm()).epsilon(1e-14));
  }
}

TEST_CASE("decomposition v = h1 + i h2 with both parts in H") {
  const StandardSubspace h = generic_h();
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 5; ++rep) {
    const Vec v = random_vec(rng, 2);
    const Vec sv = h.tomita.apply(v);
    const Vec h1 = (v + sv) / 2.0;
    const Vec h2 = (v - sv) / Cplx(0, 2);
    CHECK(in_subspace(h, h1) < 1e-10);
    CHECK(in_subspace(h, h2) < 1e-10);
    CHECK((h1 + Cplx(0, 1) * h2 - v).norm() < 1e-12);
  }
}

TEST_CASE("modular flow preserves H") {
  const StandardSubspace h = generic_h();
  for (double t : {0.3, -1.1, 2.7}) {
    const Mat u = h.modular_unitary(t);
    for (int c = 0; c < 2; ++c)
      CHECK(in_subspace(h, Vec(u * h.real_basis.col(c))) < 1e-8);
  }
}
