#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twistlab/fock.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

StandardSubspace generic_h() {
  RVec evs(2);
  evs << 4.0, 0.25;
  AntilinearMap j;
  j.u = Mat::Zero(2, 2);
  j.u(0, 1) = 1.0;
  j.u(1, 0) = 1.0;
  return make_standard(PositiveSpectral::from_diagonal(evs), j);
}

StandardSubspace abelian_h() {
  AntilinearMap j{Mat(Mat::Identity(2, 2))};
  return make_standard(PositiveSpectral::identity(2), j);
}

Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Twist fixture_ab() { return gallery_elem_tensor(diag2(1.0, 0.3), diag2(0.5, 0.2)); }

Twist fixture_proj_pair(double q = 0.5) {
  Mat e = Mat::Zero(2, 2), et = Mat::Zero(2, 2);
  e(0, 0) = 1.0;
  et(1, 1) = 1.0;
  return gallery_proj_pair(q, e, et);
}

}  // namespace

TEST_CASE("classification of the basic members") {
  // zero twist: P_n = 1 on every level
  {
    const PositivityReport r = classify(gallery_zero(2), 5);
    CHECK(r.verdict == TwistVerdict::Strict);
    for (const auto& lv : r.levels) {
      CHECK(lv.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(lv.kernel_dim == 0);
    }
  }
  // identity twist: P_n = n! 1
  {
    const auto chain = level_operators(gallery_identity(2), 5);
    double factorial = 1.0;
    for (int n = 1; n <= 5; ++n) {
      factorial *= n;
      CHECK(op_norm(Mat(chain[n] - factorial * identity(chain[n].rows()))) < 1e-10 * factorial);
    }
    CHECK(classify(gallery_identity(2), 5).verdict == TwistVerdict::Strict);
  }
  // negative identity: levels above 1 collapse
  {
    const PositivityReport r = classify(gallery_neg_identity(2), 5);
    CHECK(r.verdict == TwistVerdict::NonStrict);
    for (const auto& lv : r.levels)
      if (lv.n >= 2) CHECK(lv.kernel_dim == (1 << lv.n));
  }
  // scaled flips stay strict, with the predicted pair-level floor
  for (double q : {0.5, -0.5}) {
    const PositivityReport r = classify(gallery_q_flip(2, q), 5);
    CHECK(r.verdict == TwistVerdict::Strict);
    CHECK(r.levels[1].min_eigenvalue == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK_THROWS_AS(classify(gallery_zero(10), 5), std::length_error);
}

TEST_CASE("classification is monotone-consistent and tags sufficient classes") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    Mat a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = Cplx(gauss(rng), gauss(rng));
    a = Mat(a + a.adjoint());
    a *= 0.5 / op_norm(a);  // ||T|| = 1/2
    const Twist t(2, a);
    const PositivityReport r = classify(t, 5);
    CHECK(r.verdict == TwistVerdict::Strict);
    for (const auto& lv : r.levels) CHECK(lv.min_eigenvalue > 0.0);
    bool tagged = false;
    for (const auto& tag : r.class_tags) tagged |= tag == "norm_leq_half";
    CHECK(tagged);
  }
}

TEST_CASE("positive twists classify strict even at norm one") {
  std::mt19937_64 rng(37);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int rep = 0; rep < 3; ++rep) {
    Mat g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = Cplx(gauss(rng), gauss(rng));
    Mat pos = Mat(g.adjoint() * g);
    pos /= op_norm(pos);  // positive with norm exactly one
    const PositivityReport r = classify(Twist(2, pos), 5);
    CHECK(r.verdict == TwistVerdict::Strict);
    bool tagged = false;
    for (const auto& tag : r.class_tags) tagged |= tag == "positive";
    CHECK(tagged);
  }
}

TEST_CASE("Yang-Baxter residuals") {
  CHECK(gallery_flip(2).ybe_residual() < 1e-12);
  for (double q : {0.25, 0.5, -0.8, 1.0})
    CHECK(gallery_q_flip(2, q).ybe_residual() < 1e-12);
  CHECK(fixture_ab().ybe_residual() > 1e-3);
  CHECK(fixture_proj_pair().ybe_residual() < 1e-12);

  // the braid equation reads the same with the legs relabeled
  const Twist t = fixture_ab();
  const Mat t1 = t.leg(1, 3), t2 = t.leg(2, 3);
  const double a = op_norm(Mat(t1 * t2 * t1 - t2 * t1 * t2));
  const double b = op_norm(Mat(t2 * t1 * t2 - t1 * t2 * t1));
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("compatibility with the modular flow") {
  const StandardSubspace h = generic_h();
  CHECK(compatibility_residual(gallery_q_flip(2, 0.5), h) < 1e-12);

  // F (A (x) A) with diagonal A commutes with the diagonal flow
  CHECK(compatibility_residual(gallery_flip_sandwich(diag2(0.9, 0.5)), h) < 1e-12);

  // A (x) 1 with [A, Delta] != 0 does not
  Mat a(2, 2);
  a << 0.3, 0.2, 0.2, 0.1;
  const Twist t = gallery_elem_tensor(a, Mat(Mat::Identity(2, 2)));
  CHECK(compatibility_residual(t, h) > 1e-3);
}

TEST_CASE("scaled flip crossing function has the closed form q<2,4><1,3>") {
  // both boundary sides of the crossing identity collapse to q F for the
  // scaled flip, independently of t
  const StandardSubspace h = generic_h();
  const double q = 0.5;
  for (double t : {0.0, 0.7, -1.3}) {
    const Mat lhs = kron(Mat(h.modular_unitary(t) * h.delta_power(Cplx(-0.5, 0))), identity(2)) *
                    (q * flip_matrix(2)) *
                    kron(identity(2), Mat(h.delta_power(Cplx(0.5, 0)) * h.modular_unitary(-t)));
    CHECK(op_norm(Mat(lhs - q * flip_matrix(2))) < 1e-12);
  }
}

TEST_CASE("crossing symmetry boundary identity") {
  const StandardSubspace h = generic_h();
  CHECK(crossing_residual(gallery_q_flip(2, 0.5), h) < 1e-10);
  CHECK(crossing_residual(gallery_zero(2), h) < 1e-14);
  CHECK(crossing_residual(gallery_flip(2), h) < 1e-10);
  CHECK(crossing_residual(gallery_neg_flip(2), h) < 1e-10);

  const StandardSubspace flat = abelian_h();
  CHECK(crossing_residual(gallery_flip_sandwich(diag2(0.9, 0.5)), flat) < 1e-10);

  CHECK(crossing_residual(fixture_proj_pair(), h) > 1e-3);
  CHECK(crossing_residual(gallery_identity(2), h) > 1e-3);
}

TEST_CASE("crossing residual is invariant under commuting unitary moves of H") {
  const StandardSubspace h = generic_h();
  const Twist t = gallery_q_flip(2, 0.5);
  const double base = crossing_residual(t, h);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Cplx(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr{Eigen::MatrixXcd(g)};
  const Mat u = Mat(qr.householderQ());
  // the flip commutes with u (x) u, so the hypothesis holds for any unitary
  REQUIRE(op_norm(Mat(kron(u, u) * t.matrix() - t.matrix() * kron(u, u))) < 1e-12);

  const StandardSubspace moved = transform(h, u);
  CHECK(std::abs(crossing_residual(t, moved) - base) < 1e-10);
}

TEST_CASE("J-flip relation") {
  const StandardSubspace h = generic_h();
  CHECK(j_flip_residual(gallery_q_flip(2, 0.5), h) < 1e-12);
  CHECK(j_flip_residual(gallery_zero(2), h) < 1e-14);
  const StandardSubspace flat = abelian_h();
  CHECK(j_flip_residual(gallery_flip_sandwich(diag2(0.9, 0.5)), flat) < 1e-12);
  // a non-crossing member where the relation genuinely breaks
  CHECK(j_flip_residual(fixture_ab(), h) > 1e-3);
}

TEST_CASE("left-right obstruction") {
  CHECK(left_right_obstruction(gallery_flip(2)) < 1e-14);
  CHECK(left_right_obstruction(gallery_zero(2)) == doctest::Approx(2.0));
  CHECK(left_right_obstruction(gallery_q_flip(2, 0.5)) == doctest::Approx(1.0));
}

TEST_CASE("n-crossing continuation") {
  const StandardSubspace h = generic_h();
  const Twist t = gallery_q_flip(2, 0.5);
  const std::vector<double> grid = {0.0, 0.4, -1.0};

  CHECK(n_crossing_residual(t, h, 1, grid) < 1e-10);
  CHECK(n_crossing_residual(t, h, 2, grid) < 1e-8);
  // non-crossing members break the continuation; the projection pair is
  // vacuous here (its two-fold chains vanish), the identity twist is not
  CHECK(n_crossing_residual(gallery_identity(2), h, 2, grid) > 1e-3);
  CHECK(n_crossing_residual(fixture_proj_pair(), h, 1, grid) > 1e-3);
}

TEST_CASE("gallery constructors and their degenerations") {
  CHECK(op_norm(gallery_q_flip(2, 0.0).matrix()) == doctest::Approx(0.0));
  CHECK(op_norm(Mat(gallery_flip_sandwich(Mat(Mat::Identity(2, 2))).matrix() -
                    flip_matrix(2))) < 1e-14);
  // proj_pair with q = 1 and full projections degenerates to the identity twist
  const Twist degenerate =
      gallery_proj_pair(1.0, Mat(Mat::Identity(2, 2)), Mat(Mat::Identity(2, 2)));
  CHECK(op_norm(Mat(degenerate.matrix() - identity(4))) < 1e-14);

  CHECK_THROWS_AS(gallery("no_such_twist", 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(gallery_q_flip(2, 1.5), std::invalid_argument);
  Mat not_proj(2, 2);
  not_proj << 0.5, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(gallery_proj_pair(0.5, not_proj, not_proj), std::invalid_argument);

  // twist validation
  Mat skew(4, 4);
  skew.setZero();
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(Twist(2, skew), std::invalid_argument);
  CHECK_THROWS_AS(Twist(2, Mat(2.0 * flip_matrix(2))), std::invalid_argument);
}

TEST_CASE("crossing plus compatibility imply the J-flip relation on the gallery") {
  const StandardSubspace h = generic_h();
  const StandardSubspace flat = abelian_h();
  struct Member {
    Twist t;
    const StandardSubspace* h;
  };
  const std::vector<Member> members = {
      {gallery_zero(2), &h},         {gallery_flip(2), &h},
      {gallery_neg_flip(2), &h},     {gallery_q_flip(2, 0.5), &h},
      {gallery_q_flip(2, -0.5), &h}, {gallery_flip_sandwich(diag2(0.9, 0.5)), &flat},
  };
  for (const auto& m : members) {
    REQUIRE(compatibility_residual(m.t, *m.h) < 1e-10);
    REQUIRE(crossing_residual(m.t, *m.h) < 1e-8);
    CHECK(j_flip_residual(m.t, *m.h) < 1e-10);
  }
}
