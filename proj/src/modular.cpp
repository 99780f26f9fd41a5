#include "twistlab/modular.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "twistlab/twist.hpp"

namespace twistlab {

namespace {

Eigen::Index ipow(int d, int n) {
  Eigen::Index out = 1;
  for (int i = 0; i < n; ++i) out *= d;
  return out;
}

Mat contract_first_mat(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m - 1);
  Mat row = Mat::Zero(1, d);
  for (int i = 0; i < d; ++i) row(0, i) = std::conj(xi[i]);
  return kron(row, Mat(Mat::Identity(rest, rest)));
}

Mat contract_last_mat(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m - 1);
  Mat row = Mat::Zero(1, d);
  for (int i = 0; i < d; ++i) row(0, i) = std::conj(xi[i]);
  return kron(Mat(Mat::Identity(rest, rest)), row);
}

Mat embed_first_mat(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m);
  Mat col = Mat::Zero(d, 1);
  for (int i = 0; i < d; ++i) col(i, 0) = xi[i];
  return kron(col, Mat(Mat::Identity(rest, rest)));
}

Mat embed_last_mat(const Vec& xi, int m, int d) {
  const Eigen::Index rest = ipow(d, m);
  Mat col = Mat::Zero(d, 1);
  for (int i = 0; i < d; ++i) col(i, 0) = xi[i];
  return kron(Mat(Mat::Identity(rest, rest)), col);
}

// Stacks a Fock vector into P^{1/2}-coordinates up to `top`.
Vec metric_coords(const FockSpace& fs, const FockVector& v, int top) {
  Eigen::Index total = 0;
  for (int n = 0; n <= top; ++n) total += fs.dim(n);
  Vec out = Vec::Zero(total);
  Eigen::Index off = 0;
  for (int n = 0; n <= top; ++n) {
    if (n < int(v.blocks.size()) && v.blocks[n].size() > 0)
      out.segment(off, fs.dim(n)) = fs.level(n).sqrt_p * v.blocks[n];
    off += fs.dim(n);
  }
  return out;
}

double safe_block_gap(const FockSpace& fs, const FockOperator& a, const FockOperator& b) {
  // max twisted block norm of (a - b), sources restricted to the safe window
  const FockOperator diff = a - b;
  return diff.twisted_norm_safe(fs);
}

}  // namespace

MonomialBasis monomial_basis(const FockSpace& fs, const StandardSubspace& h, int max_degree) {
  if (max_degree > fs.levels())
    throw std::invalid_argument("monomial_basis: degree exceeds truncation level");
  const int d = fs.d();
  std::vector<FockOperator> fields;
  for (int i = 0; i < d; ++i)
    fields.push_back(field(fs, Vec(h.real_basis.col(i)), Side::Left));

  MonomialBasis basis;
  std::vector<std::vector<int>> frontier = {{}};
  basis.indices.push_back({});
  basis.vectors.push_back(FockVector::vacuum(fs));
  for (int deg = 1; deg <= max_degree; ++deg) {
    std::vector<std::vector<int>> next;
    for (const auto& seq : frontier)
      for (int i = 0; i < d; ++i) {
        std::vector<int> ext = seq;
        ext.push_back(i);
        next.push_back(ext);
      }
    frontier = next;
    for (const auto& seq : frontier) {
      FockVector v = FockVector::vacuum(fs);
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) v = fields[*it].apply(fs, v);
      basis.indices.push_back(seq);
      basis.vectors.push_back(std::move(v));
    }
  }
  return basis;
}

std::vector<CyclicityLevel> cyclicity_rank(const FockSpace& fs, const StandardSubspace& h,
                                           int max_degree) {
  const MonomialBasis basis = monomial_basis(fs, h, max_degree);
  std::vector<CyclicityLevel> out;
  for (int n = 0; n <= max_degree; ++n) {
    Mat cols(fs.dim(n), Eigen::Index(basis.vectors.size()));
    for (size_t a = 0; a < basis.vectors.size(); ++a)
      cols.col(a) = fs.level(n).sqrt_p * basis.vectors[a].block_or_zero(fs, n);
    Eigen::JacobiSVD<Mat> svd(cols);
    const auto& sv = svd.singularValues();
    int rank = 0;
    if (sv.size() > 0) {
      const double thresh = std::max(tol::kKernelRel * sv[0], 1e-12);
      while (rank < sv.size() && sv[rank] > thresh) ++rank;
    }
    const int expected = int(fs.dim(n)) - fs.level(n).kernel_dim;
    out.push_back({n, rank, expected});
  }
  return out;
}

TomitaReport tomita_consistency(const FockSpace& fs, const StandardSubspace& h, int max_degree) {
  if (max_degree + 1 > fs.levels())
    throw std::invalid_argument("tomita_consistency: truncation too small (need N > degree)");
  const MonomialBasis basis = monomial_basis(fs, h, max_degree);
  const int d = fs.d();

  // Reversed monomials: phi's are self-adjoint for real-basis arguments,
  // so A* Omega is the product applied in the opposite order.
  std::vector<FockOperator> fields;
  for (int i = 0; i < d; ++i)
    fields.push_back(field(fs, Vec(h.real_basis.col(i)), Side::Left));
  std::vector<FockVector> starred;
  for (const auto& seq : basis.indices) {
    FockVector v = FockVector::vacuum(fs);
    for (auto it = seq.begin(); it != seq.end(); ++it) v = fields[*it].apply(fs, v);
    starred.push_back(std::move(v));
  }

  TomitaReport rep;

  // Well-definedness: any null combination of the A Omega must be a null
  // combination (conjugated) of the A* Omega.
  {
    const int top = max_degree;
    Mat x(metric_coords(fs, basis.vectors[0], top).size(), Eigen::Index(basis.vectors.size()));
    Mat y(x.rows(), x.cols());
    for (size_t a = 0; a < basis.vectors.size(); ++a) {
      x.col(a) = metric_coords(fs, basis.vectors[a], top);
      y.col(a) = metric_coords(fs, starred[a], top);
    }
    Eigen::JacobiSVD<Mat> svd(x, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double thresh = sv.size() > 0 ? std::max(tol::kKernelRel * sv[0], 1e-12) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv[rank] > thresh) ++rank;
    const double scale = std::max(1.0, op_norm(y));
    for (Eigen::Index c = rank; c < svd.matrixV().cols(); ++c) {
      Vec null = svd.matrixV().col(c);
      rep.welldefined_residual =
          std::max(rep.welldefined_residual, (y * null.conjugate()).norm() / scale);
    }
  }

  // Match against the order-reversed second quantization of S_H.
  const AntilinearFockOperator candidate = second_quantize_reversed_unchecked(fs, h.tomita);
  for (size_t a = 0; a < basis.vectors.size(); ++a) {
    const FockVector got = candidate.apply(fs, basis.vectors[a]);
    rep.match_residual =
        std::max(rep.match_residual, twisted_norm(fs, got - starred[a]));
  }
  return rep;
}

LocalityReport locality_residual(const FockSpace& fs, const StandardSubspace& h, int n_max) {
  LocalityReport rep;
  const int d = fs.d();
  const StandardSubspace hprime = symplectic_complement(h);

  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj) {
      const FockOperator fl = field(fs, Vec(h.real_basis.col(i)), Side::Left);
      const FockOperator fr = field(fs, Vec(hprime.real_basis.col(jj)), Side::Right);
      const FockOperator comm = fl.compose(fr) - fr.compose(fl);
      rep.commutator = std::max(rep.commutator, comm.twisted_norm_safe(fs));
    }

  const Mat& tm = fs.twist().matrix();
  for (int n = 1; n <= n_max; ++n) {
    if (ipow(d, n + 1) > 20000) break;
    Mat down = Mat::Identity(ipow(d, n + 1), ipow(d, n + 1));
    for (int k = 1; k <= n; ++k) down = down * leg_embed(tm, k, n + 1, d);
    Mat up = Mat::Identity(ipow(d, n + 1), ipow(d, n + 1));
    for (int k = n; k >= 1; --k) up = up * leg_embed(tm, k, n + 1, d);
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj) {
        const Vec hh = h.real_basis.col(i);
        const Vec hp = hprime.real_basis.col(jj);
        const Mat lhs = contract_first_mat(hh, n + 1, d) * down * embed_last_mat(hp, n, d);
        const Mat rhs = contract_last_mat(hp, n + 1, d) * up * embed_first_mat(hh, n, d);
        rep.n_crossing = std::max(rep.n_crossing, op_norm(Mat(lhs - rhs)));
      }
  }
  return rep;
}

FlowReport modular_flow_covariance(const FockSpace& fs, const StandardSubspace& h,
                                   const std::vector<double>& t_samples) {
  FlowReport rep;
  const int d = fs.d();
  for (double ts : t_samples) {
    const Mat u = h.modular_unitary(ts);
    const FockOperator gamma = second_quantize(fs, u);
    const FockOperator gamma_inv = second_quantize(fs, Mat(u.adjoint()));
    for (int i = 0; i < d; ++i) {
      const Vec hh = h.real_basis.col(i);
      const FockOperator lhs =
          gamma.compose(field(fs, hh, Side::Left)).compose(gamma_inv);
      const FockOperator rhs = field(fs, Vec(u * hh), Side::Left);
      rep.unitary_covariance = std::max(rep.unitary_covariance, safe_block_gap(fs, lhs, rhs));
    }
    const FockVector vac = FockVector::vacuum(fs);
    rep.vacuum_fixed =
        std::max(rep.vacuum_fixed, twisted_norm(fs, gamma.apply(fs, vac) - vac));
    if (const Mat* b1 = gamma.block(1, 1))
      rep.level_one_restriction =
          std::max(rep.level_one_restriction, op_norm(Mat(*b1 - u)));
  }

  // Antiunitary counterpart: conjugation by Gamma_T^Y(J_H) maps left fields
  // to right fields of the J-reflected vectors.
  const AntilinearFockOperator jy = second_quantize_reversed_unchecked(fs, h.j);
  for (int i = 0; i < d; ++i) {
    const Vec hh = h.real_basis.col(i);
    const FockOperator phi_l = field(fs, hh, Side::Left);
    // (L o conj) X (L o conj): linear with blocks L conj(X) conj(L)
    FockOperator conjugated;
    for (const auto& [key, xb] : phi_l.blocks()) {
      const auto [to, from] = key;
      const Mat* lt = jy.linear_part.block(to, to);
      const Mat* lf = jy.linear_part.block(from, from);
      if (!lt || !lf) continue;
      conjugated.set_block(to, from, Mat((*lt) * xb.conjugate() * lf->conjugate()));
    }
    conjugated.set_profile(1, 1);
    const FockOperator rhs = field(fs, h.j.apply(hh), Side::Right);
    rep.j_exchange = std::max(rep.j_exchange, safe_block_gap(fs, conjugated, rhs));
  }
  return rep;
}

DualityReport duality_proxy(const FockSpace& fs, const StandardSubspace& h, int max_degree) {
  DualityReport rep;
  const int d = fs.d();
  const StandardSubspace hprime = symplectic_complement(h);

  const AntilinearFockOperator jy = second_quantize_reversed_unchecked(fs, h.j);
  for (int i = 0; i < d; ++i) {
    const Vec hh = h.real_basis.col(i);
    const FockOperator phi_l = field(fs, hh, Side::Left);
    FockOperator conjugated;
    for (const auto& [key, xb] : phi_l.blocks()) {
      const auto [to, from] = key;
      const Mat* lt = jy.linear_part.block(to, to);
      const Mat* lf = jy.linear_part.block(from, from);
      if (!lt || !lf) continue;
      conjugated.set_block(to, from, Mat((*lt) * xb.conjugate() * lf->conjugate()));
    }
    conjugated.set_profile(1, 1);
    rep.j_exchange = std::max(
        rep.j_exchange,
        safe_block_gap(fs, conjugated, field(fs, h.j.apply(hh), Side::Right)));
  }

  // Mutual commutation of low-degree monomials.
  std::vector<FockOperator> left_monomials, right_monomials;
  for (int i = 0; i < d; ++i) {
    left_monomials.push_back(field(fs, Vec(h.real_basis.col(i)), Side::Left));
    right_monomials.push_back(field(fs, Vec(hprime.real_basis.col(i)), Side::Right));
  }
  const int deg = std::min(max_degree, 2);
  if (deg >= 2) {
    const size_t base = left_monomials.size();
    for (size_t a = 0; a < base; ++a)
      for (size_t b = 0; b < base; ++b) {
        left_monomials.push_back(left_monomials[a].compose(left_monomials[b]));
        right_monomials.push_back(right_monomials[a].compose(right_monomials[b]));
      }
  }
  for (const auto& la : left_monomials)
    for (const auto& rb : right_monomials) {
      const FockOperator comm = la.compose(rb) - rb.compose(la);
      rep.mutual_commutation = std::max(rep.mutual_commutation, comm.twisted_norm_safe(fs));
    }

  // Flip twist: the range classes are symmetric, where left and right
  // appends agree; the gap is only claimed to vanish there.
  if (op_norm(Mat(fs.twist().matrix() - flip_matrix(d))) < 1e-12) {
    for (int i = 0; i < d; ++i) {
      const Vec hh = h.real_basis.col(i);
      const FockOperator gap =
          field(fs, hh, Side::Left) - field(fs, hh, Side::Right);
      rep.left_right_field_gap = std::max(rep.left_right_field_gap, gap.twisted_norm_safe(fs));
    }
  }
  return rep;
}

EquivalenceVerdict equivalence_suite(const FockSpace& fs, const StandardSubspace& h,
                                     const std::vector<Vec>& witness, double threshold) {
  EquivalenceVerdict v;
  const int max_degree = std::min(3, fs.levels() - 1);

  const TomitaReport tomita = tomita_consistency(fs, h, max_degree);
  v.tomita_residual = std::max(tomita.match_residual, tomita.welldefined_residual);
  const KmsReport kms = kms_shift_check(fs, h, witness, {0.0, 0.35, -0.8});
  v.kms_residual = kms.full;
  v.tomita_kms = v.tomita_residual <= threshold && v.kms_residual <= threshold;

  v.ybe_residual = fs.twist().ybe_residual();
  v.crossing_residual = crossing_residual(fs.twist(), h);
  v.ybe_and_crossing = v.ybe_residual <= threshold && v.crossing_residual <= threshold;

  const LocalityReport loc = locality_residual(fs, h, std::min(3, fs.levels() - 1));
  v.locality_res = std::max(loc.commutator, loc.n_crossing);
  v.locality = v.locality_res <= threshold;
  return v;
}

}  // namespace twistlab
