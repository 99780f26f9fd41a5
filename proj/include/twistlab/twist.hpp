#pragma once

// Twists: self-adjoint contractions T on C^d (x) C^d, their classification
// (positivity of the induced level operators up to a cutoff, Yang-Baxter,
// sufficient-condition classes) and their relations to a standard subspace
// (compatibility, crossing symmetry, J-flip, n-crossing continuation).

#include <optional>
#include <string>
#include <vector>

#include "twistlab/subspace.hpp"
#include "twistlab/tensor.hpp"

namespace twistlab {

struct PositivityLevel {
  int n = 0;
  double min_eigenvalue = 0.0;
  int kernel_dim = 0;
};

enum class TwistVerdict { Strict, NonStrict, NotTwistUpToCutoff };

struct PositivityReport {
  std::vector<PositivityLevel> levels;  // n = 1..n_max
  TwistVerdict verdict = TwistVerdict::Strict;
  std::vector<std::string> class_tags;
};

class Twist {
 public:
  /// Validates self-adjointness (to tolerance) and ||T|| <= 1 + tolerance.
  Twist(int d, Mat matrix);

  int d() const { return d_; }
  const Mat& matrix() const { return m_; }
  double selfadjoint_residual() const { return sa_residual_; }
  double norm() const { return norm_; }

  /// ||T1 T2 T1 - T2 T1 T2|| on (C^d)^{(x)3}; zero for braided twists.
  double ybe_residual() const;
  bool braided(double tolerance = 1e-10) const { return ybe_residual() <= tolerance; }

  /// T_k on n legs.
  Mat leg(int k, int n) const { return leg_embed(m_, k, n, d_); }

 private:
  int d_;
  Mat m_;
  double sa_residual_ = 0.0;
  double norm_ = 0.0;
  mutable std::optional<double> ybe_cache_;
};

/// Positivity of the level operators P_n for n = 1..n_max together with the
/// sufficient-condition class tags.  The verdict is "up to cutoff" only.
/// Guard: d^n_max <= 20000.
PositivityReport classify(const Twist& t, int n_max);

/// ||[Delta (x) Delta, T]||; zero iff T commutes with the whole modular
/// unitary group Delta^{it} (x) Delta^{it}.
double compatibility_residual(const Twist& t, const StandardSubspace& h);

/// Default sample grid for crossing checks: 16 uniform points in [-2,2]
/// plus t = 0.
std::vector<double> default_t_grid();

/// Crossing-symmetry boundary identity, checked entrywise in the standard
/// basis on a grid of real t.  Returns the max entry deviation between
///   LHS(t) = (D^{it}D^{-1/2} (x) 1) T (1 (x) D^{1/2}D^{-it})
/// and RHS[(a,b),(c,d)] = <e_b (x) J e_d, (1 (x) D^{it}) T (D^{-it} (x) 1)
/// (J e_a (x) e_c)>.
double crossing_residual(const Twist& t, const StandardSubspace& h,
                         const std::vector<double>& t_samples = default_t_grid());

/// ||F T F - (J (x) J) T (J (x) J)||.
double j_flip_residual(const Twist& t, const StandardSubspace& h);

/// ||(1 + T)(1 - F)||; vanishing is necessary for left-in-right inclusions.
double left_right_obstruction(const Twist& t);

/// n-crossing continuation check: with T(z) = (D^{iz} (x) 1) T (1 (x) D^{-iz}),
/// compares the direct continuation T(t+i/2)_1...T(t+i/2)_n against
/// <Psi_n (x) J xi', T(t)*_n...T(t)*_1 (J xi (x) Phi_n)> for seeded random
/// vectors on each sampled t.  Guard on d^{n+1}.
double n_crossing_residual(const Twist& t, const StandardSubspace& h, int n,
                           const std::vector<double>& t_samples = default_t_grid(),
                           int draws = 8, unsigned long long seed = 1);

// --- gallery ---------------------------------------------------------------

Mat flip_matrix(int d);

Twist gallery_zero(int d);
Twist gallery_flip(int d);
Twist gallery_neg_flip(int d);
Twist gallery_q_flip(int d, double q);
Twist gallery_identity(int d);
Twist gallery_neg_identity(int d);
Twist gallery_elem_tensor(const Mat& a, const Mat& b);   // A (x) B
Twist gallery_flip_sandwich(const Mat& a);               // F (A (x) A)
Twist gallery_proj_pair(double q, const Mat& e, const Mat& etilde);  // q E (x) E~

/// Named lookup used by the batch front end.  Throws on unknown names or
/// invalid parameters.
struct GalleryParams {
  double q = 0.0;
  std::optional<Mat> a;
  std::optional<Mat> b;
};
Twist gallery(const std::string& name, int d, const GalleryParams& params);

}  // namespace twistlab
