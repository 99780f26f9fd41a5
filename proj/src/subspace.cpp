#include "twistlab/subspace.hpp"

#include <Eigen/Eigenvalues>

namespace twistlab {

namespace {

// Real-linear 2d x 2d representation of an antilinear map U o conj acting
// on (x; y) for v = x + iy.  With U = A + iB:  U conj(v) = (Ax+By) + i(Bx-Ay).
Eigen::MatrixXd real_rep(const Mat& u) {
  const Eigen::Index d = u.rows();
  Eigen::MatrixXd a = u.real();
  Eigen::MatrixXd b = u.imag();
  Eigen::MatrixXd rep(2 * d, 2 * d);
  rep.topLeftCorner(d, d) = a;
  rep.topRightCorner(d, d) = b;
  rep.bottomLeftCorner(d, d) = b;
  rep.bottomRightCorner(d, d) = -a;
  return rep;
}

Mat fix_space_basis(const AntilinearMap& s, Eigen::Index d) {
  // +1 eigenspace of the real-linear representation of S; for an antilinear
  // involution this space has real dimension d.  S is generally not
  // orthogonal in the real metric (Delta != 1), so the fix space is the
  // kernel of (rep - 1), extracted by SVD.
  Eigen::MatrixXd rep = real_rep(s.u);
  Eigen::MatrixXd shifted = rep - Eigen::MatrixXd::Identity(2 * d, 2 * d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double thresh = std::max(1e-9 * sv[0], 1e-12);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > thresh) ++rank;
  const Eigen::Index kdim = 2 * d - rank;
  if (kdim != d)
    throw std::runtime_error("make_standard: fix space of S has real dimension " +
                             std::to_string(kdim) + ", expected " + std::to_string(d));
  // Trailing right-singular vectors span the kernel and are already
  // orthonormal w.r.t. Re<.,.> (the standard R^{2d} inner product).
  Eigen::MatrixXd ker = svd.matrixV().rightCols(d);
  Mat basis(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r)
      basis(r, c) = Cplx(ker(r, c), ker(d + r, c));
  return basis;
}

}  // namespace

StandardSubspace make_standard(const PositiveSpectral& delta, const AntilinearMap& j) {
  const Eigen::Index d = delta.dim();
  if (j.dim() != d)
    throw std::invalid_argument("make_standard: dimension mismatch between delta and j");

  const double inv_res = j.involution_residual();
  if (inv_res > tol::kSelfAdjoint * 10 * (1.0 + 1.0))
    throw std::invalid_argument("make_standard: j is not an antilinear involution (residual " +
                                std::to_string(inv_res) + ")");

  // Modular relation J Delta J = Delta^{-1}.
  const Mat dm = delta.matrix();
  const Mat dinv = spectral_power(delta, Cplx(-1, 0));
  const double mod_res = op_norm(Mat(j.sandwich(dm) - dinv));
  if (mod_res > 1e-8 * (1.0 + op_norm(dinv)))
    throw std::invalid_argument("make_standard: modular relation J Delta J = Delta^{-1} violated "
                                "(residual " + std::to_string(mod_res) + ")");

  StandardSubspace h;
  h.d = d;
  h.delta = delta;
  h.j = j;
  h.tomita = j.compose_linear(spectral_power(delta, Cplx(0.5, 0)));
  h.real_basis = fix_space_basis(h.tomita, d);
  return h;
}

StandardSubspace symplectic_complement(const StandardSubspace& h) {
  PositiveSpectral inv;
  inv.eigenvalues = RVec(h.delta.eigenvalues.size());
  inv.eigenbasis = Mat(h.delta.eigenbasis.rows(), h.delta.eigenbasis.cols());
  // reciprocal spectrum, re-sorted ascending
  const Eigen::Index n = h.delta.eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    inv.eigenvalues[i] = 1.0 / h.delta.eigenvalues[n - 1 - i];
    inv.eigenbasis.col(i) = h.delta.eigenbasis.col(n - 1 - i);
  }
  return make_standard(inv, h.j);
}

TensorPowerData tensor_power(const StandardSubspace& h, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
  TensorPowerData out;
  Mat s = h.tomita.u;
  Mat jm = h.j.u;
  Mat basis = h.delta.eigenbasis;
  RVec evs = h.delta.eigenvalues;
  for (int k = 1; k < n; ++k) {
    s = kron(s, h.tomita.u);
    jm = kron(jm, h.j.u);
    basis = kron(basis, h.delta.eigenbasis);
    RVec next(evs.size() * h.delta.eigenvalues.size());
    Eigen::Index idx = 0;
    for (Eigen::Index a = 0; a < evs.size(); ++a)
      for (Eigen::Index b = 0; b < h.delta.eigenvalues.size(); ++b, ++idx)
        next[idx] = evs[a] * h.delta.eigenvalues[b];
    evs = next;
  }
  out.tomita_n = {s};
  out.j_n = {jm};
  // sort the product spectrum ascending, permuting the basis accordingly
  std::vector<Eigen::Index> idx(evs.size());
  for (Eigen::Index i = 0; i < evs.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](Eigen::Index a, Eigen::Index b) { return evs[a] < evs[b]; });
  out.delta_n.eigenvalues = RVec(evs.size());
  out.delta_n.eigenbasis = Mat(basis.rows(), basis.cols());
  for (Eigen::Index i = 0; i < evs.size(); ++i) {
    out.delta_n.eigenvalues[i] = evs[idx[i]];
    out.delta_n.eigenbasis.col(i) = basis.col(idx[i]);
  }
  return out;
}

double in_subspace(const StandardSubspace& h, const Vec& v) {
  if (v.size() != h.d) throw std::invalid_argument("in_subspace: dimension mismatch");
  return (h.tomita.apply(v) - v).norm();
}

StandardSubspace transform(const StandardSubspace& h, const Mat& u) {
  PositiveSpectral delta;
  delta.eigenvalues = h.delta.eigenvalues;
  delta.eigenbasis = u * h.delta.eigenbasis;
  AntilinearMap j{u * h.j.u * u.transpose()};
  return make_standard(delta, j);
}

}  // namespace twistlab
