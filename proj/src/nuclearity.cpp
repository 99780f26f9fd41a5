#include "twistlab/nuclearity.hpp"

#include <cmath>

namespace twistlab {

double l2_index(const StandardSubspace& h, const StandardSubspace& k) {
  if (h.d != k.d) throw std::invalid_argument("l2_index: dimension mismatch");
  const Mat x = h.delta_power(Cplx(0.25, 0)) * k.delta_power(Cplx(-0.25, 0));
  return trace_norm(x);
}

NuclearityReport fock_l2_check(const Twist& t, const StandardSubspace& h,
                               const StandardSubspace& k, int n_levels) {
  if (t.norm() >= 1.0)
    throw std::invalid_argument("fock_l2_check: requires ||T|| < 1");
  const double res_h = compatibility_residual(t, h);
  const double res_k = compatibility_residual(t, k);
  const double gate = 1e-8;
  if (res_h > gate || res_k > gate)
    throw std::invalid_argument(
        "fock_l2_check: twist is not compatible with both subspaces (residuals " +
        std::to_string(res_h) + ", " + std::to_string(res_k) +
        "); the trace-norm identity is not claimed");

  const FockSpace fs(t, n_levels);
  if (!fs.strict_up_to_cutoff())
    throw std::invalid_argument("fock_l2_check: level operators are singular up to the cutoff");

  NuclearityReport rep;
  rep.one_particle_index = l2_index(h, k);
  const Mat x = h.delta_power(Cplx(0.25, 0)) * k.delta_power(Cplx(-0.25, 0));
  Mat x_pow = Mat::Identity(1, 1);
  for (int n = 0; n <= n_levels; ++n) {
    if (n > 0) x_pow = kron(x_pow, x);
    // inverse square root on the (full) range; strictness checked above
    const Mat transformed = fs.level(n).sqrt_p * x_pow * fs.level(n).pinv_sqrt_p;
    const double tau = trace_norm(transformed);
    rep.level_trace_norms.push_back(tau);
    rep.truncated_sum += tau;
    const double geo = std::pow(rep.one_particle_index, n);
    rep.geometric_sum += geo;
    rep.deviation = std::max(rep.deviation, std::abs(tau - geo));
  }
  return rep;
}

}  // namespace twistlab
