#pragma once

// Trace-norm arithmetic for pairs of standard subspaces: the one-particle
// index ||Delta_H^{1/4} Delta_K^{-1/4}||_1 and the per-level twisted trace
// norms on the Fock space, checked against the geometric prediction x^n.

#include <vector>

#include "twistlab/fock.hpp"
#include "twistlab/subspace.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

/// Trace norm of Delta_H^{1/4} Delta_K^{-1/4}.
double l2_index(const StandardSubspace& h, const StandardSubspace& k);

struct NuclearityReport {
  double one_particle_index = 0.0;       // x
  std::vector<double> level_trace_norms;  // tau_n, n = 0..N
  double truncated_sum = 0.0;             // sum of tau_n
  double geometric_sum = 0.0;             // sum of x^n
  double deviation = 0.0;                 // max_n |tau_n - x^n|
};

/// tau_n = ||P_n^{1/2} (Delta_H^{1/4} Delta_K^{-1/4})^{(x)n} P_n^{-1/2}||_1,
/// computed from singular values of the transformed matrix (the commutation
/// shortcut is what is being cross-validated, so it is not used).
/// Preconditions: ||T|| < 1, the space is strict up to the cutoff, and T is
/// compatible with both H and K; violations throw.
NuclearityReport fock_l2_check(const Twist& t, const StandardSubspace& h,
                               const StandardSubspace& k, int n_levels);

}  // namespace twistlab
