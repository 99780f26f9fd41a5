#pragma once

// Standard subspaces of C^d given by modular data (Delta, J), with the
// derived Tomita operator S = J Delta^{1/2}, symplectic complements,
// tensor powers and membership tests.
//
// Antilinear maps are stored through their unitary/linear part U with the
// action v -> U conj(v).  Composition rules live here so conjugation
// bookkeeping happens in exactly one place:
//   antilinear A after antilinear B : linear,  U_A conj(U_B)
//   antilinear A after linear M     : antilinear, U_A conj(M)
//   linear M after antilinear A     : antilinear, M U_A

#include "twistlab/tensor.hpp"

namespace twistlab {

struct AntilinearMap {
  Mat u;  // v -> u * conj(v)

  Eigen::Index dim() const { return u.rows(); }
  Vec apply(const Vec& v) const { return u * v.conjugate(); }

  /// Adjoint w.r.t. <Av,w> = <A*w,v>: unitary part transposed.
  AntilinearMap adjoint() const { return {u.transpose()}; }

  /// ||U conj(U) - 1||; zero for involutions.
  double involution_residual() const {
    return op_norm(Mat(u * u.conjugate() - Mat::Identity(u.rows(), u.cols())));
  }

  /// A o B for antilinear A, B is linear: U_A conj(U_B).
  Mat compose_antilinear(const AntilinearMap& other) const {
    return u * other.u.conjugate();
  }
  /// A o M for linear M: antilinear with part U_A conj(M).
  AntilinearMap compose_linear(const Mat& m) const { return {u * m.conjugate()}; }

  /// Conjugation A X A^{-1} of a linear operator X by an antilinear
  /// involution A: linear with matrix U conj(X) conj(U).
  Mat sandwich(const Mat& x) const { return u * x.conjugate() * u.conjugate(); }

  AntilinearMap tensor(const AntilinearMap& other) const {
    return {kron(u, other.u)};
  }
};

struct StandardSubspace {
  Eigen::Index d = 0;
  PositiveSpectral delta;
  AntilinearMap j;
  AntilinearMap tomita;  // S = J Delta^{1/2}, derived
  Mat real_basis;        // d columns spanning H over R, orthonormal in Re<.,.>

  Mat delta_power(Cplx z) const { return spectral_power(delta, z); }
  /// Delta^{iz} by spectral calculus; unitary for real z.
  Mat modular_unitary(Cplx z) const { return spectral_power(delta, Cplx(0, 1) * z); }
};

/// Builds a standard subspace from modular data.  Validates that j is an
/// antilinear involution and that j delta j = delta^{-1}.
StandardSubspace make_standard(const PositiveSpectral& delta, const AntilinearMap& j);

/// H' = (Delta^{-1}, J); equals J H.
StandardSubspace symplectic_complement(const StandardSubspace& h);

/// Componentwise tensor power of the modular data.
struct TensorPowerData {
  AntilinearMap tomita_n;
  PositiveSpectral delta_n;
  AntilinearMap j_n;
};
TensorPowerData tensor_power(const StandardSubspace& h, int n);

/// ||S v - v||; v lies in H iff this is below tolerance.
double in_subspace(const StandardSubspace& h, const Vec& v);

/// U H for a unitary U: (U Delta U^*, U J U^*).
StandardSubspace transform(const StandardSubspace& h, const Mat& u_unitary);

}  // namespace twistlab
