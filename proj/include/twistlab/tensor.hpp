#pragma once

// Dense complex linear algebra and tensor-product plumbing shared by the
// whole library.  Index flattening for tensor products is lexicographic
// with the leftmost factor most significant, fixed here once and for all:
// (A (x) B)[(i,k),(j,l)] = A(i,j) * B(k,l)  with row index i*rows(B)+k.

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace twistlab {

using Cplx = std::complex<double>;
// Row-major so that in-memory layout matches the serialized matrix format.
using Mat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::Matrix<Cplx, Eigen::Dynamic, 1>;
using RVec = Eigen::VectorXd;

namespace tol {
// Self-adjointness acceptance: ||A - A*|| <= kSelfAdjoint * (1 + ||A||).
inline constexpr double kSelfAdjoint = 1e-10;
// Eigenvalues below kKernelRel * max|lambda| count as zero.
inline constexpr double kKernelRel = 1e-9;
}  // namespace tol

/// Spectral data of a strictly positive self-adjoint operator:
/// eigenvalues ascending, eigenbasis unitary (columns are eigenvectors).
struct PositiveSpectral {
  RVec eigenvalues;
  Mat eigenbasis;

  Eigen::Index dim() const { return eigenvalues.size(); }
  Mat matrix() const;          // U diag(lambda) U^*
  static PositiveSpectral identity(Eigen::Index d);
  static PositiveSpectral from_diagonal(const RVec& lambdas);
};

/// Full spectrum of a self-adjoint operator (eigenvalues may be negative).
struct Spectrum {
  RVec eigenvalues;   // ascending
  Mat eigenbasis;     // unitary, columns are eigenvectors
};

Mat identity(Eigen::Index d);

void check_finite(const Mat& a, const char* what);
void check_finite(const Vec& v, const char* what);

/// Kronecker product with the global flattening convention.
Mat kron(const Mat& a, const Mat& b);
Vec kron(const Vec& a, const Vec& b);

/// n-fold Kronecker power.
Mat kron_pow(const Mat& a, int n);

/// Embeds a two-site operator t (d^2 x d^2) on legs k,k+1 of an n-fold
/// tensor power of C^d; k is 1-based, 1 <= k <= n-1.
Mat leg_embed(const Mat& t, int k, int n, int d);

/// Tensor-leg reversal (psi_1 (x) ... (x) psi_n -> psi_n (x) ... (x) psi_1)
/// as a permutation matrix on (C^d)^{(x) n}.
Mat reversal_permutation(int n, int d);

/// Operator 2-norm (largest singular value).
double op_norm(const Mat& a);

/// Trace norm (sum of singular values).
double trace_norm(const Mat& a);

/// Eigendecomposition of a self-adjoint matrix.  Rejects inputs with
/// ||A - A*|| > kSelfAdjoint * (1 + ||A||); never symmetrizes silently.
Spectrum herm_eig(const Mat& a);

/// herm_eig restricted to strictly positive operators.
PositiveSpectral herm_eig_positive(const Mat& a);

/// f(D) = sum_k lambda_k^z P_k.  Entire in z; unitary for z = it.
Mat spectral_power(const PositiveSpectral& d, Cplx z);

// --- matrix file format --------------------------------------------------
// JSON object { "rows": r, "cols": c, "data": [[re,im], ...] } row-major.
std::string matrix_to_json(const Mat& a);
Mat matrix_from_json(const std::string& text);
Mat load_matrix(const std::string& path);
void save_matrix(const std::string& path, const Mat& a);

}  // namespace twistlab
