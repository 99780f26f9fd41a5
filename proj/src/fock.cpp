#include "twistlab/fock.hpp"

#include <cmath>

namespace twistlab {

namespace {

Eigen::Index ipow(int d, int n) {
  Eigen::Index out = 1;
  for (int i = 0; i < n; ++i) out *= d;
  return out;
}

// (xi^dagger (x) 1): contracts the first leg of an m-leg tensor.
Mat contract_first(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m - 1);
  Mat row = Mat::Zero(1, d);
  for (int i = 0; i < d; ++i) row(0, i) = std::conj(xi[i]);
  return kron(row, Mat(Mat::Identity(rest, rest)));
}

// (1 (x) xi^dagger): contracts the last leg.
Mat contract_last(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m - 1);
  Mat row = Mat::Zero(1, d);
  for (int i = 0; i < d; ++i) row(0, i) = std::conj(xi[i]);
  return kron(Mat(Mat::Identity(rest, rest)), row);
}

Mat embed_first(const Vec& xi, int m, int d) {
  // Psi -> xi (x) Psi on m source legs.
  const Eigen::Index rest = ipow(d, m);
  Mat col = Mat::Zero(d, 1);
  for (int i = 0; i < d; ++i) col(i, 0) = xi[i];
  return kron(col, Mat(Mat::Identity(rest, rest)));
}

Mat embed_last(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m);
  Mat col = Mat::Zero(d, 1);
  for (int i = 0; i < d; ++i) col(i, 0) = xi[i];
  return kron(Mat(Mat::Identity(rest, rest)), col);
}

}  // namespace

Mat r_operator(const Twist& t, int n) {
  const Eigen::Index dim = ipow(t.d(), n);
  Mat r = Mat::Identity(dim, dim);
  Mat run = Mat::Identity(dim, dim);
  for (int k = 1; k <= n - 1; ++k) {
    run = run * t.leg(k, n);
    r += run;
  }
  return r;
}

Mat r_tilde_operator(const Twist& t, int n) {
  const Eigen::Index dim = ipow(t.d(), n);
  Mat r = Mat::Identity(dim, dim);
  Mat run = Mat::Identity(dim, dim);
  for (int k = n - 1; k >= 1; --k) {
    run = run * t.leg(k, n);
    r += run;
  }
  return r;
}

std::vector<Mat> level_operators(const Twist& t, int n_max) {
  std::vector<Mat> p(n_max + 1);
  p[0] = Mat::Identity(1, 1);
  if (n_max >= 1) p[1] = Mat::Identity(t.d(), t.d());
  for (int n = 2; n <= n_max; ++n)
    p[n] = kron(Mat(Mat::Identity(t.d(), t.d())), p[n - 1]) * r_operator(t, n);
  return p;
}

FockSpace::FockSpace(Twist t, int n_levels) : twist_(std::move(t)), d_(twist_.d()), n_(n_levels) {
  if (n_levels < 1) throw std::invalid_argument("FockSpace: need at least one level");
  Eigen::Index total = 0;
  for (int n = 0; n <= n_levels; ++n) total += ipow(d_, n);
  if (total > 200000)
    throw std::length_error("FockSpace: ambient dimension guard exceeded");

  const auto chain = level_operators(twist_, n_levels);
  levels_.resize(n_levels + 1);
  dims_.resize(n_levels + 1);
  for (int n = 0; n <= n_levels; ++n) {
    FockLevel& lv = levels_[n];
    dims_[n] = ipow(d_, n);
    lv.p = chain[n];
    lv.r = n >= 1 ? r_operator(twist_, n) : Mat::Identity(1, 1);
    lv.r_tilde = n >= 1 ? r_tilde_operator(twist_, n) : Mat::Identity(1, 1);

    Spectrum s = herm_eig(lv.p);
    lv.eigenvalues = s.eigenvalues;
    lv.eigenbasis = s.eigenbasis;
    const double maxabs = std::max(s.eigenvalues.cwiseAbs().maxCoeff(), 1.0);
    const double floor = tol::kKernelRel * maxabs;
    lv.min_eigenvalue = s.eigenvalues.minCoeff();
    if (lv.min_eigenvalue < -floor)
      throw std::invalid_argument(
          "FockSpace: P_" + std::to_string(n) + " has eigenvalue " +
          std::to_string(lv.min_eigenvalue) + " below zero; not a twist up to level " +
          std::to_string(n_levels));

    const Eigen::Index dim = dims_[n];
    Vec sqrt_vals(dim), pinv_sqrt_vals(dim), pinv_vals(dim);
    lv.kernel_dim = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double lam = s.eigenvalues[i];
      if (lam <= floor) {
        ++lv.kernel_dim;
        sqrt_vals[i] = 0.0;
        pinv_sqrt_vals[i] = 0.0;
        pinv_vals[i] = 0.0;
      } else {
        sqrt_vals[i] = std::sqrt(lam);
        pinv_sqrt_vals[i] = 1.0 / std::sqrt(lam);
        pinv_vals[i] = 1.0 / lam;
      }
    }
    const Mat& u = lv.eigenbasis;
    lv.sqrt_p = u * sqrt_vals.asDiagonal() * u.adjoint();
    lv.pinv_sqrt_p = u * pinv_sqrt_vals.asDiagonal() * u.adjoint();
    lv.pinv_p = u * pinv_vals.asDiagonal() * u.adjoint();
    Vec kflags(dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      kflags[i] = (s.eigenvalues[i] <= floor) ? 1.0 : 0.0;
    lv.kernel_proj = u * kflags.asDiagonal() * u.adjoint();
    lv.range_proj = Mat::Identity(dim, dim) - lv.kernel_proj;
  }
}

bool FockSpace::strict_up_to_cutoff() const {
  for (int n = 0; n <= n_; ++n)
    if (levels_[n].kernel_dim > 0) return false;
  return true;
}

double FockSpace::kernel_stability_residual() const {
  double worst = 0.0;
  for (int n = 1; n < n_; ++n) {
    if (levels_[n].kernel_dim == 0) continue;
    const Mat probe = levels_[n + 1].p *
                      kron(levels_[n].kernel_proj, Mat(Mat::Identity(d_, d_)));
    worst = std::max(worst, op_norm(probe));
  }
  return worst;
}

FockVector FockVector::vacuum(const FockSpace& fs) {
  FockVector v;
  v.blocks.resize(fs.levels() + 1);
  v.blocks[0] = Vec::Ones(1);
  return v;
}

FockVector FockVector::single(const FockSpace& fs, int level, const Vec& v) {
  if (level < 0 || level > fs.levels())
    throw std::out_of_range("FockVector: level out of range");
  if (v.size() != fs.dim(level))
    throw std::invalid_argument("FockVector: component has wrong dimension");
  FockVector out;
  out.blocks.resize(fs.levels() + 1);
  out.blocks[level] = v;
  return out;
}

Vec FockVector::block_or_zero(const FockSpace& fs, int n) const {
  if (n < int(blocks.size()) && blocks[n].size() > 0) return blocks[n];
  return Vec::Zero(fs.dim(n));
}

FockVector FockVector::conjugate() const {
  FockVector out;
  out.blocks.reserve(blocks.size());
  for (const auto& b : blocks) out.blocks.push_back(b.conjugate());
  return out;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  FockVector out;
  out.blocks.resize(std::max(a.blocks.size(), b.blocks.size()));
  for (size_t n = 0; n < out.blocks.size(); ++n) {
    const bool ha = n < a.blocks.size() && a.blocks[n].size() > 0;
    const bool hb = n < b.blocks.size() && b.blocks[n].size() > 0;
    if (ha && hb) out.blocks[n] = a.blocks[n] + b.blocks[n];
    else if (ha) out.blocks[n] = a.blocks[n];
    else if (hb) out.blocks[n] = b.blocks[n];
  }
  return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  return a + (Cplx(-1, 0) * b);
}

FockVector operator*(const Cplx& c, const FockVector& v) {
  FockVector out = v;
  for (auto& b : out.blocks) b *= c;
  return out;
}

Cplx twisted_inner(const FockSpace& fs, const FockVector& a, const FockVector& b) {
  Cplx sum = 0.0;
  const size_t top = std::min(a.blocks.size(), b.blocks.size());
  for (size_t n = 0; n < top; ++n) {
    if (a.blocks[n].size() == 0 || b.blocks[n].size() == 0) continue;
    sum += a.blocks[n].dot(fs.level(int(n)).p * b.blocks[n]);
  }
  return sum;
}

double twisted_norm(const FockSpace& fs, const FockVector& v) {
  double sq = 0.0;
  for (size_t n = 0; n < v.blocks.size(); ++n) {
    if (v.blocks[n].size() == 0) continue;
    sq += (fs.level(int(n)).sqrt_p * v.blocks[n]).squaredNorm();
  }
  return std::sqrt(sq);
}

void FockOperator::set_block(int to, int from, Mat b) {
  blocks_[{to, from}] = std::move(b);
  max_raise_ = std::max(max_raise_, to - from);
}

const Mat* FockOperator::block(int to, int from) const {
  auto it = blocks_.find({to, from});
  return it == blocks_.end() ? nullptr : &it->second;
}

FockVector FockOperator::apply(const FockSpace& fs, const FockVector& v) const {
  FockVector out;
  out.blocks.resize(fs.levels() + 1);
  for (const auto& [key, b] : blocks_) {
    const auto [to, from] = key;
    if (from >= int(v.blocks.size()) || v.blocks[from].size() == 0) continue;
    Vec piece = b * v.blocks[from];
    if (out.blocks[to].size() == 0) out.blocks[to] = std::move(piece);
    else out.blocks[to] += piece;
  }
  return out;
}

FockOperator FockOperator::compose(const FockOperator& rhs) const {
  FockOperator out;
  for (const auto& [rkey, rb] : rhs.blocks_) {
    const auto [mid, from] = rkey;
    for (const auto& [lkey, lb] : blocks_) {
      const auto [to, lmid] = lkey;
      if (lmid != mid) continue;
      Mat prod = lb * rb;
      if (const Mat* existing = out.block(to, from)) prod += *existing;
      out.set_block(to, from, std::move(prod));
    }
  }
  out.set_profile(max_raise_ + rhs.max_raise_,
                  std::max(rhs.peak_, rhs.max_raise_ + peak_));
  return out;
}

FockOperator FockOperator::scaled(Cplx c) const {
  FockOperator out = *this;
  for (auto& [key, b] : out.blocks_) b *= c;
  return out;
}

FockOperator FockOperator::twisted_adjoint(const FockSpace& fs) const {
  FockOperator out;
  int raise = 0;
  for (const auto& [key, b] : blocks_) {
    const auto [to, from] = key;
    out.set_block(from, to, Mat(fs.level(from).pinv_p * b.adjoint() * fs.level(to).p));
    raise = std::max(raise, from - to);
  }
  out.set_profile(raise, std::max(0, raise));
  return out;
}

double FockOperator::block_twisted_norm(const FockSpace& fs, int to, int from, const Mat& b) {
  return op_norm(Mat(fs.level(to).sqrt_p * b * fs.level(from).pinv_sqrt_p));
}

double FockOperator::twisted_norm_safe(const FockSpace& fs) const {
  const int safe = safe_source_level(fs);
  double worst = 0.0;
  for (const auto& [key, b] : blocks_) {
    const auto [to, from] = key;
    if (from > safe) continue;
    worst = std::max(worst, block_twisted_norm(fs, to, from, b));
  }
  return worst;
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  FockOperator out = a;
  for (const auto& [key, blk] : b.blocks()) {
    if (const Mat* existing = out.block(key.first, key.second))
      out.set_block(key.first, key.second, Mat(*existing + blk));
    else
      out.set_block(key.first, key.second, blk);
  }
  out.set_profile(std::max(a.max_raise(), b.max_raise()), std::max(a.peak(), b.peak()));
  return out;
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  return a + b.scaled(Cplx(-1, 0));
}

FockOperator create_left(const FockSpace& fs, const Vec& xi) {
  if (xi.size() != fs.d()) throw std::invalid_argument("create_left: wrong dimension");
  check_finite(xi, "create_left");
  FockOperator op;
  for (int n = 0; n + 1 <= fs.levels(); ++n)
    op.set_block(n + 1, n, Mat(fs.level(n + 1).range_proj * embed_first(xi, n, fs.d())));
  op.set_profile(1, 1);
  return op;
}

FockOperator annihilate_left(const FockSpace& fs, const Vec& xi) {
  if (xi.size() != fs.d()) throw std::invalid_argument("annihilate_left: wrong dimension");
  check_finite(xi, "annihilate_left");
  FockOperator op;
  for (int n = 1; n <= fs.levels(); ++n)
    op.set_block(n - 1, n,
                 Mat(fs.level(n - 1).range_proj * contract_first(xi, n, fs.d()) * fs.level(n).r));
  op.set_profile(-1, 0);
  return op;
}

FockOperator create_right(const FockSpace& fs, const Vec& xi) {
  if (xi.size() != fs.d()) throw std::invalid_argument("create_right: wrong dimension");
  const double stab = fs.kernel_stability_residual();
  if (stab > 1e-8)
    throw std::invalid_argument(
        "create_right: appending a right leg does not preserve kernels (residual " +
        std::to_string(stab) + "); twist outside the supported class");
  FockOperator op;
  for (int n = 0; n + 1 <= fs.levels(); ++n)
    op.set_block(n + 1, n, Mat(fs.level(n + 1).range_proj * embed_last(xi, n, fs.d())));
  op.set_profile(1, 1);
  return op;
}

FockOperator annihilate_right(const FockSpace& fs, const Vec& xi) {
  if (xi.size() != fs.d()) throw std::invalid_argument("annihilate_right: wrong dimension");
  const double stab = fs.kernel_stability_residual();
  if (stab > 1e-8)
    throw std::invalid_argument("annihilate_right: kernel stability violated (residual " +
                                std::to_string(stab) + ")");
  FockOperator op;
  for (int n = 1; n <= fs.levels(); ++n)
    op.set_block(n - 1, n, Mat(fs.level(n - 1).range_proj * contract_last(xi, n, fs.d()) *
                               fs.level(n).r_tilde));
  op.set_profile(-1, 0);
  return op;
}

FockOperator field(const FockSpace& fs, const Vec& xi, Side side) {
  FockOperator op = side == Side::Left
                        ? create_left(fs, xi) + annihilate_left(fs, xi)
                        : create_right(fs, xi) + annihilate_right(fs, xi);
  op.set_profile(1, 1);
  return op;
}

FockOperator field_tomita(const FockSpace& fs, const Vec& xi, Side side,
                          const StandardSubspace& h) {
  const Vec sxi = h.tomita.apply(xi);
  FockOperator op = side == Side::Left
                        ? create_left(fs, xi) + annihilate_left(fs, sxi)
                        : create_right(fs, xi) + annihilate_right(fs, sxi);
  op.set_profile(1, 1);
  return op;
}

FockOperator level_projection(const FockSpace& fs, int n) {
  FockOperator op;
  op.set_block(n, n, Mat(Mat::Identity(fs.dim(n), fs.dim(n))));
  op.set_profile(0, 0);
  return op;
}

namespace {

double kron_square_commutant(const FockSpace& fs, const Mat& pair_op, bool conjugate_t) {
  const Mat& t = fs.twist().matrix();
  const Mat rhs = conjugate_t ? Mat(pair_op * t.conjugate()) : Mat(pair_op * t);
  return op_norm(Mat(t * pair_op - rhs));
}

FockOperator diagonal_blocks(const FockSpace& fs, const std::vector<Mat>& per_level) {
  FockOperator op;
  for (int n = 0; n <= fs.levels(); ++n)
    op.set_block(n, n, Mat(fs.level(n).range_proj * per_level[n]));
  op.set_profile(0, 0);
  return op;
}

std::vector<Mat> tensor_powers(const Mat& v, int n_max) {
  std::vector<Mat> out(n_max + 1);
  out[0] = Mat::Identity(1, 1);
  for (int n = 1; n <= n_max; ++n) out[n] = kron(out[n - 1], v);
  return out;
}

}  // namespace

double gamma_commutant_residual(const FockSpace& fs, const Mat& v) {
  return kron_square_commutant(fs, kron(v, v), false);
}

double gamma_commutant_residual(const FockSpace& fs, const AntilinearMap& v) {
  // [V (x) V, T] = 0 for antilinear V means (U (x) U) conj(T) = T (U (x) U).
  const Mat uu = kron(v.u, v.u);
  const Mat& t = fs.twist().matrix();
  return op_norm(Mat(uu * t.conjugate() - t * uu));
}

double gamma_y_commutant_residual(const FockSpace& fs, const Mat& z) {
  const Mat fz = flip_matrix(fs.d()) * kron(z, z);
  const Mat& t = fs.twist().matrix();
  return op_norm(Mat(fz * t - t * fz));
}

double gamma_y_commutant_residual(const FockSpace& fs, const AntilinearMap& z) {
  const Mat fz = flip_matrix(fs.d()) * kron(z.u, z.u);
  const Mat& t = fs.twist().matrix();
  return op_norm(Mat(fz * t.conjugate() - t * fz));
}

FockOperator second_quantize(const FockSpace& fs, const Mat& v) {
  const double res = gamma_commutant_residual(fs, v);
  if (res > 1e-8 * (1.0 + op_norm(v) * op_norm(v)))
    throw std::invalid_argument("second_quantize: [V (x) V, T] != 0 (residual " +
                                std::to_string(res) + ")");
  return diagonal_blocks(fs, tensor_powers(v, fs.levels()));
}

AntilinearFockOperator second_quantize(const FockSpace& fs, const AntilinearMap& v) {
  const double res = gamma_commutant_residual(fs, v);
  if (res > 1e-8 * (1.0 + op_norm(v.u) * op_norm(v.u)))
    throw std::invalid_argument("second_quantize: [V (x) V, T] != 0 for antilinear V "
                                "(residual " + std::to_string(res) + ")");
  return {diagonal_blocks(fs, tensor_powers(v.u, fs.levels()))};
}

FockOperator second_quantize_reversed(const FockSpace& fs, const Mat& z) {
  const double res = gamma_y_commutant_residual(fs, z);
  if (res > 1e-8 * (1.0 + op_norm(z) * op_norm(z)))
    throw std::invalid_argument("second_quantize_reversed: [F(Z (x) Z), T] != 0 (residual " +
                                std::to_string(res) + ")");
  auto powers = tensor_powers(z, fs.levels());
  for (int n = 0; n <= fs.levels(); ++n)
    powers[n] = reversal_permutation(n, fs.d()) * powers[n];
  return diagonal_blocks(fs, powers);
}

AntilinearFockOperator second_quantize_reversed(const FockSpace& fs, const AntilinearMap& z) {
  const double res = gamma_y_commutant_residual(fs, z);
  if (res > 1e-8 * (1.0 + op_norm(z.u) * op_norm(z.u)))
    throw std::invalid_argument("second_quantize_reversed: [F(Z (x) Z), T] != 0 for "
                                "antilinear Z (residual " + std::to_string(res) + ")");
  return second_quantize_reversed_unchecked(fs, z);
}

FockOperator second_quantize_unchecked(const FockSpace& fs, const Mat& v) {
  return diagonal_blocks(fs, tensor_powers(v, fs.levels()));
}

AntilinearFockOperator second_quantize_reversed_unchecked(const FockSpace& fs,
                                                          const AntilinearMap& z) {
  auto powers = tensor_powers(z.u, fs.levels());
  for (int n = 0; n <= fs.levels(); ++n)
    powers[n] = reversal_permutation(n, fs.d()) * powers[n];
  return {diagonal_blocks(fs, powers)};
}

double MixedCommutatorReport::max() const {
  return std::max({create_create, annihilate_annihilate, left_right, right_left, vacuum,
                   vacuum_fields});
}

MixedCommutatorReport mixed_commutators(const FockSpace& fs, const Vec& xi, const Vec& eta) {
  const int d = fs.d();
  const int n_levels = fs.levels();
  MixedCommutatorReport rep;

  const FockOperator cl = create_left(fs, xi);
  const FockOperator al = annihilate_left(fs, xi);
  const FockOperator cr = create_right(fs, eta);
  const FockOperator ar = annihilate_right(fs, eta);

  // [a*_L(xi), a*_R(eta)] = 0 on blocks (n+2, n), n <= N-2.
  {
    const FockOperator comm = cl.compose(cr) - cr.compose(cl);
    for (int n = 0; n + 2 <= n_levels; ++n)
      if (const Mat* b = comm.block(n + 2, n))
        rep.create_create =
            std::max(rep.create_create, FockOperator::block_twisted_norm(fs, n + 2, n, *b));
  }
  // [a_L(xi), a_R(eta)] = 0 on blocks (n-2, n).
  {
    const FockOperator all = annihilate_left(fs, xi);
    const FockOperator arr = annihilate_right(fs, eta);
    const FockOperator comm = all.compose(arr) - arr.compose(all);
    for (int n = 2; n <= n_levels; ++n)
      if (const Mat* b = comm.block(n - 2, n))
        rep.annihilate_annihilate =
            std::max(rep.annihilate_annihilate, FockOperator::block_twisted_norm(fs, n - 2, n, *b));
  }
  // [a_L(xi), a*_R(eta)] [Psi_n] = [a_L(xi) T_1...T_n (Psi_n (x) eta)], n <= N-1.
  {
    const FockOperator comm = al.compose(cr) - cr.compose(al);
    for (int n = 0; n + 1 <= n_levels; ++n) {
      Mat chain = Mat::Identity(fs.dim(n + 1), fs.dim(n + 1));
      for (int k = 1; k <= n; ++k) chain = chain * fs.twist().leg(k, n + 1);
      const Mat expected = fs.level(n).range_proj * contract_first(xi, n + 1, d) * chain *
                           embed_last(eta, n, d);
      const Mat* b = comm.block(n, n);
      const Mat got = b ? *b : Mat(Mat::Zero(fs.dim(n), fs.dim(n)));
      rep.left_right =
          std::max(rep.left_right, FockOperator::block_twisted_norm(fs, n, n, Mat(got - expected)));
    }
  }
  // [a_R(xi'), a*_L(eta')] [Psi_n] = [a_R(xi') T_n...T_1 (eta' (x) Psi_n)].
  {
    const FockOperator arx = annihilate_right(fs, xi);
    const FockOperator cle = create_left(fs, eta);
    const FockOperator comm = arx.compose(cle) - cle.compose(arx);
    for (int n = 0; n + 1 <= n_levels; ++n) {
      Mat chain = Mat::Identity(fs.dim(n + 1), fs.dim(n + 1));
      for (int k = n; k >= 1; --k) chain = chain * fs.twist().leg(k, n + 1);
      const Mat expected = fs.level(n).range_proj * contract_last(xi, n + 1, d) * chain *
                           embed_first(eta, n, d);
      const Mat* b = comm.block(n, n);
      const Mat got = b ? *b : Mat(Mat::Zero(fs.dim(n), fs.dim(n)));
      rep.right_left =
          std::max(rep.right_left, FockOperator::block_twisted_norm(fs, n, n, Mat(got - expected)));
    }
  }
  // Vacuum identities.
  {
    const FockVector vac = FockVector::vacuum(fs);
    const FockOperator comm = al.compose(cr) - cr.compose(al);
    FockVector got = comm.apply(fs, vac);
    FockVector expected = Cplx(xi.dot(eta)) * vac;
    rep.vacuum = twisted_norm(fs, got - expected);

    const FockOperator phil = field(fs, xi, Side::Left);
    const FockOperator phir = field(fs, eta, Side::Right);
    const FockOperator fcomm = phil.compose(phir) - phir.compose(phil);
    FockVector fgot = fcomm.apply(fs, vac);
    FockVector fexp = Cplx(0, 2.0 * std::imag(xi.dot(eta))) * vac;
    rep.vacuum_fields = twisted_norm(fs, fgot - fexp);
  }
  return rep;
}

double creation_bound_constant(const Twist& t, int n) {
  double c = 0.0;
  for (int k = 0; k <= n; ++k) c += std::pow(t.norm(), k);
  return c;
}

double factorization_residual(const FockSpace& fs, int n) {
  if (n < 1 || n + 1 > fs.levels())
    throw std::out_of_range("factorization_residual: level out of range");
  const Mat lhs = fs.level(n + 1).p;
  const Mat rhs = kron(fs.level(n).p, Mat(Mat::Identity(fs.d(), fs.d()))) *
                  fs.level(n + 1).r_tilde;
  return op_norm(Mat(lhs - rhs));
}

}  // namespace twistlab
