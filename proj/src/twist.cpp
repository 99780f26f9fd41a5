#include "twistlab/twist.hpp"

#include <cmath>
#include <random>

#include "twistlab/fock.hpp"

namespace twistlab {

Twist::Twist(int d, Mat matrix) : d_(d), m_(std::move(matrix)) {
  if (d < 1) throw std::invalid_argument("Twist: dimension must be positive");
  if (m_.rows() != Eigen::Index(d) * d || m_.cols() != Eigen::Index(d) * d)
    throw std::invalid_argument("Twist: matrix is not d^2 x d^2");
  check_finite(m_, "Twist");
  norm_ = op_norm(m_);
  sa_residual_ = op_norm(Mat(m_ - m_.adjoint()));
  if (sa_residual_ > tol::kSelfAdjoint * (1.0 + norm_))
    throw std::invalid_argument("Twist: matrix is not self-adjoint (residual " +
                                std::to_string(sa_residual_) + ")");
  if (norm_ > 1.0 + 1e-10)
    throw std::invalid_argument("Twist: ||T|| = " + std::to_string(norm_) +
                                " exceeds 1");
}

double Twist::ybe_residual() const {
  if (!ybe_cache_) {
    const Mat t1 = leg(1, 3);
    const Mat t2 = leg(2, 3);
    ybe_cache_ = op_norm(Mat(t1 * t2 * t1 - t2 * t1 * t2));
  }
  return *ybe_cache_;
}

PositivityReport classify(const Twist& t, int n_max) {
  if (n_max < 2) throw std::invalid_argument("classify: n_max must be >= 2");
  const double ambient = std::pow(double(t.d()), n_max);
  if (ambient > 20000.0)
    throw std::length_error("classify: d^n_max = " + std::to_string(ambient) +
                            " exceeds the resource guard (20000)");

  PositivityReport report;
  const auto chain = level_operators(t, n_max);  // P_1..P_n_max
  bool strict = true, nonneg = true;
  for (int n = 1; n <= n_max; ++n) {
    const Mat& p = chain[n];
    Spectrum s = herm_eig(p);
    const double maxabs = s.eigenvalues.cwiseAbs().maxCoeff();
    const double floor = tol::kKernelRel * std::max(maxabs, 1.0);
    int kdim = 0;
    for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
      if (s.eigenvalues[i] < -floor) nonneg = false;
      if (std::abs(s.eigenvalues[i]) <= floor) ++kdim;
    }
    if (kdim > 0) strict = false;
    report.levels.push_back({n, s.eigenvalues.minCoeff(), kdim});
  }
  report.verdict = !nonneg  ? TwistVerdict::NotTwistUpToCutoff
                   : strict ? TwistVerdict::Strict
                            : TwistVerdict::NonStrict;

  if (t.norm() <= 0.5 + 1e-12) report.class_tags.push_back("norm_leq_half");
  {
    Spectrum s = herm_eig(t.matrix());
    if (s.eigenvalues.minCoeff() >= -1e-12) report.class_tags.push_back("positive");
  }
  const bool braided = t.braided();
  if (braided) report.class_tags.push_back("braided");
  if (braided && t.norm() < 1.0 - 1e-12) report.class_tags.push_back("braided_strict");
  if (braided) {
    const Mat sq = t.matrix() * t.matrix();
    if (op_norm(Mat(sq - identity(sq.rows()))) <= 1e-10)
      report.class_tags.push_back("symmetric");
  }
  const Mat f = flip_matrix(t.d());
  if (op_norm(Mat(t.matrix() * f - f * t.matrix())) <= 1e-12)
    report.class_tags.push_back("flip_commuting");
  return report;
}

double compatibility_residual(const Twist& t, const StandardSubspace& h) {
  if (h.d != t.d()) throw std::invalid_argument("compatibility_residual: dimension mismatch");
  const Mat dd = kron(h.delta.matrix(), h.delta.matrix());
  return op_norm(Mat(dd * t.matrix() - t.matrix() * dd));
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(-2.0 + 4.0 * i / 15.0);
  grid.push_back(0.0);
  return grid;
}

double crossing_residual(const Twist& t, const StandardSubspace& h,
                         const std::vector<double>& t_samples) {
  if (h.d != t.d()) throw std::invalid_argument("crossing_residual: dimension mismatch");
  const int d = t.d();
  const Mat& tm = t.matrix();
  const Mat sqrt_inv = h.delta_power(Cplx(-0.5, 0));
  const Mat sqrt_pos = h.delta_power(Cplx(0.5, 0));
  double worst = 0.0;
  for (double ts : t_samples) {
    const Mat u = h.modular_unitary(ts);        // Delta^{it}
    const Mat uinv = h.modular_unitary(-ts);    // Delta^{-it}
    const Mat lhs = kron(Mat(u * sqrt_inv), identity(d)) * tm *
                    kron(identity(d), Mat(sqrt_pos * uinv));
    const Mat mid = kron(identity(d), u) * tm * kron(uinv, identity(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            const Cplx lhs_entry = lhs(a * d + b, c * d + e);
            // <e_b (x) J e_d, mid (J e_a (x) e_c)>
            Vec jb = h.j.apply(Vec(Vec::Unit(d, e)));
            Vec ja = h.j.apply(Vec(Vec::Unit(d, a)));
            Vec bra = kron(Vec(Vec::Unit(d, b)), jb);
            Vec ket = kron(ja, Vec(Vec::Unit(d, c)));
            const Cplx rhs_entry = bra.dot(mid * ket);
            worst = std::max(worst, std::abs(lhs_entry - rhs_entry));
          }
  }
  return worst;
}

double j_flip_residual(const Twist& t, const StandardSubspace& h) {
  if (h.d != t.d()) throw std::invalid_argument("j_flip_residual: dimension mismatch");
  const Mat f = flip_matrix(t.d());
  const AntilinearMap jj = h.j.tensor(h.j);
  return op_norm(Mat(f * t.matrix() * f - jj.sandwich(t.matrix())));
}

double left_right_obstruction(const Twist& t) {
  const Mat f = flip_matrix(t.d());
  const Mat one = identity(f.rows());
  return op_norm(Mat((one + t.matrix()) * (one - f)));
}

double n_crossing_residual(const Twist& t, const StandardSubspace& h, int n,
                           const std::vector<double>& t_samples, int draws,
                           unsigned long long seed) {
  if (h.d != t.d()) throw std::invalid_argument("n_crossing_residual: dimension mismatch");
  if (n < 1) throw std::invalid_argument("n_crossing_residual: n must be >= 1");
  const int d = t.d();
  const double ambient = std::pow(double(d), n + 1);
  if (ambient > 20000.0)
    throw std::length_error("n_crossing_residual: d^(n+1) exceeds the resource guard");

  const auto t_of = [&](Cplx z) -> Mat {
    return kron(h.modular_unitary(z), identity(d)) * t.matrix() *
           kron(identity(d), h.modular_unitary(-z));
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto rand_vec = [&](Eigen::Index size) {
    Vec v(size);
    for (Eigen::Index i = 0; i < size; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
    return v;
  };

  const Eigen::Index bulk = Eigen::Index(std::pow(double(d), n) + 0.5);
  double worst = 0.0;
  for (int rep = 0; rep < draws; ++rep) {
    const Vec xi = rand_vec(d), xi_p = rand_vec(d);
    const Vec psi = rand_vec(bulk), phi = rand_vec(bulk);
    const Vec jxi = h.j.apply(xi), jxi_p = h.j.apply(xi_p);
    for (double ts : t_samples) {
      // direct continuation at z = t + i/2
      const Mat tz = t_of(Cplx(ts, 0.5));
      Mat chain = identity(Eigen::Index(ambient + 0.5));
      for (int k = 1; k <= n; ++k) chain = chain * leg_embed(tz, k, n + 1, d);
      const Cplx direct = Vec(kron(xi, psi)).dot(chain * kron(phi, xi_p));

      // boundary form with adjoints at real t
      const Mat tr = t_of(Cplx(ts, 0.0));
      Mat chain_adj = identity(Eigen::Index(ambient + 0.5));
      for (int k = n; k >= 1; --k)
        chain_adj = chain_adj * Mat(leg_embed(tr, k, n + 1, d).adjoint());
      const Cplx boundary = Vec(kron(psi, jxi_p)).dot(chain_adj * kron(jxi, phi));
      worst = std::max(worst, std::abs(direct - boundary));
    }
  }
  return worst;
}

// --- gallery ---------------------------------------------------------------

Mat flip_matrix(int d) {
  Mat f = Mat::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  return f;
}

Twist gallery_zero(int d) { return Twist(d, Mat::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d)); }
Twist gallery_flip(int d) { return Twist(d, flip_matrix(d)); }
Twist gallery_neg_flip(int d) { return Twist(d, Mat(-flip_matrix(d))); }

Twist gallery_q_flip(int d, double q) {
  if (std::abs(q) > 1.0)
    throw std::invalid_argument("gallery_q_flip: |q| must be <= 1");
  return Twist(d, Mat(q * flip_matrix(d)));
}

Twist gallery_identity(int d) { return Twist(d, identity(Eigen::Index(d) * d)); }
Twist gallery_neg_identity(int d) { return Twist(d, Mat(-identity(Eigen::Index(d) * d))); }

Twist gallery_elem_tensor(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("gallery_elem_tensor: factors must be square and same size");
  return Twist(int(a.rows()), kron(a, b));
}

Twist gallery_flip_sandwich(const Mat& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("gallery_flip_sandwich: factor must be square");
  const int d = int(a.rows());
  return Twist(d, Mat(flip_matrix(d) * kron(a, a)));
}

Twist gallery_proj_pair(double q, const Mat& e, const Mat& etilde) {
  const auto check_projection = [](const Mat& p, const char* name) {
    if (p.rows() != p.cols())
      throw std::invalid_argument(std::string("gallery_proj_pair: ") + name + " not square");
    if (op_norm(Mat(p * p - p)) > 1e-10 || op_norm(Mat(p - p.adjoint())) > 1e-10)
      throw std::invalid_argument(std::string("gallery_proj_pair: ") + name +
                                  " is not an orthogonal projection");
  };
  check_projection(e, "E");
  check_projection(etilde, "E~");
  if (e.rows() != etilde.rows())
    throw std::invalid_argument("gallery_proj_pair: projection sizes differ");
  if (op_norm(Mat(e * etilde - etilde * e)) > 1e-10)
    throw std::invalid_argument("gallery_proj_pair: projections do not commute");
  if (std::abs(q) > 1.0)
    throw std::invalid_argument("gallery_proj_pair: |q| must be <= 1");
  return Twist(int(e.rows()), Mat(q * kron(e, etilde)));
}

Twist gallery(const std::string& name, int d, const GalleryParams& params) {
  if (name == "zero") return gallery_zero(d);
  if (name == "flip") return gallery_flip(d);
  if (name == "neg_flip") return gallery_neg_flip(d);
  if (name == "q_flip") return gallery_q_flip(d, params.q);
  if (name == "identity") return gallery_identity(d);
  if (name == "neg_identity") return gallery_neg_identity(d);
  if (name == "elem_tensor") {
    if (!params.a || !params.b)
      throw std::invalid_argument("gallery: elem_tensor needs factors A and B");
    return gallery_elem_tensor(*params.a, *params.b);
  }
  if (name == "flip_sandwich") {
    if (!params.a) throw std::invalid_argument("gallery: flip_sandwich needs factor A");
    return gallery_flip_sandwich(*params.a);
  }
  if (name == "proj_pair") {
    if (!params.a || !params.b)
      throw std::invalid_argument("gallery: proj_pair needs projections E and E~");
    return gallery_proj_pair(params.q, *params.a, *params.b);
  }
  throw std::invalid_argument("gallery: unknown twist name '" + name + "'");
}

}  // namespace twistlab
