// Acceptance suite: end-to-end criteria for the verification laboratory,
// one pass/fail line per criterion.  Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "twistlab/fock.hpp"
#include "twistlab/modular.hpp"
#include "twistlab/npoint.hpp"
#include "twistlab/nuclearity.hpp"
#include "twistlab/perm.hpp"
#include "twistlab/runner.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;

namespace {

struct Outcome {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void absorb(double residual, double threshold) {
    worst = std::max(worst, residual);
    if (residual > threshold) ok = false;
  }
  void require(bool condition, const std::string& why = "") {
    if (!condition) {
      ok = false;
      if (!why.empty()) note = why;
    }
  }
};

StandardSubspace generic_h(double lambda = 4.0) {
  RVec evs(2);
  evs << lambda, 1.0 / lambda;
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

Twist fixture_proj_pair() {
  return gallery_proj_pair(0.5, diag2(1.0, 0.0), diag2(0.0, 1.0));
}

Vec rand_vec(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
  return v;
}

std::vector<Vec> rand_vectors(std::mt19937_64& rng, int count, int d) {
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) out.push_back(rand_vec(rng, d));
  return out;
}

// frozen witness configuration for the non-crossing projection pair
std::vector<Vec> frozen_witness() {
  std::vector<Vec> xs(4, Vec(2));
  xs[0] << Cplx(1.0, 0.0), Cplx(0.0, 0.5);
  xs[1] << Cplx(0.5, -0.5), Cplx(1.0, 0.0);
  xs[2] << Cplx(0.0, 1.0), Cplx(0.5, 0.0);
  xs[3] << Cplx(1.0, 0.5), Cplx(-0.5, 1.0);
  return xs;
}

// --- criteria ---------------------------------------------------------------

Outcome criterion_classification() {
  Outcome out;
  {
    const PositivityReport r = classify(gallery_zero(2), 5);
    out.require(r.verdict == TwistVerdict::Strict, "zero twist not strict");
    for (const auto& lv : r.levels) out.absorb(std::abs(lv.min_eigenvalue - 1.0), 1e-10);
  }
  {
    const auto chain = level_operators(gallery_identity(2), 5);
    double factorial = 1.0;
    for (int n = 1; n <= 5; ++n) {
      factorial *= n;
      out.absorb(op_norm(Mat(chain[n] - factorial * identity(chain[n].rows()))) / factorial,
                 1e-10);
    }
  }
  {
    const auto chain = level_operators(gallery_neg_identity(2), 5);
    for (int n = 2; n <= 5; ++n) out.absorb(op_norm(chain[n]), 1e-10);
  }
  for (double q : {0.5, -0.5}) {
    const PositivityReport r = classify(gallery_q_flip(2, q), 5);
    out.require(r.verdict == TwistVerdict::Strict, "scaled flip not strict");
    out.absorb(std::abs(r.levels[1].min_eigenvalue - 0.5), 1e-10);
  }
  return out;
}

Outcome criterion_ybe() {
  Outcome out;
  out.absorb(gallery_flip(2).ybe_residual(), 1e-12);
  out.absorb(gallery_q_flip(2, 0.5).ybe_residual(), 1e-12);
  out.absorb(gallery_flip_sandwich(diag2(0.9, 0.5)).ybe_residual(), 1e-12);
  out.require(fixture_ab().ybe_residual() >= 1e-3, "product fixture unexpectedly braided");
  return out;
}

Outcome criterion_perm_sum() {
  Outcome out;
  for (const Twist& t : {gallery_q_flip(2, 0.5), gallery_q_flip(2, -0.5), gallery_flip(2),
                         gallery_neg_flip(2)}) {
    const auto chain = level_operators(t, 5);
    for (int n = 2; n <= 5; ++n) {
      out.absorb(op_norm(Mat(p_sum(t, n, Peeling::Right) - chain[n])), 1e-10);
      out.absorb(op_norm(Mat(p_sum(t, n, Peeling::Left) - chain[n])), 1e-10);
    }
  }
  const Twist scalar(1, Mat(Mat::Constant(1, 1, Cplx(0.5, 0))));
  out.absorb(std::abs(p_sum(scalar, 3, Peeling::Right)(0, 0) - Cplx(2.625, 0)), 1e-14);
  out.absorb(std::abs(q_factorial(0.5, 3) - 2.625), 1e-14);
  return out;
}

Outcome criterion_factorization() {
  Outcome out;
  for (const Twist& t : {gallery_q_flip(2, 0.5), gallery_flip(2), gallery_neg_flip(2),
                         fixture_proj_pair()}) {
    const FockSpace fs(t, 5);
    for (int n = 1; n <= 4; ++n) out.absorb(factorization_residual(fs, n), 1e-10);
  }
  const FockSpace ab(fixture_ab(), 4);
  const double reported = factorization_residual(ab, 2);
  out.require(reported >= 1e-3, "non-braided fixture factorizes unexpectedly");
  out.note = "non-braided residual " + std::to_string(reported);
  return out;
}

Outcome criterion_creation_contracts() {
  Outcome out;
  std::mt19937_64 rng(7);
  for (const Twist& t : {gallery_q_flip(2, 0.5), gallery_q_flip(2, -0.5), gallery_zero(2),
                         gallery_flip(2), gallery_neg_flip(2)}) {
    const FockSpace fs(t, 4);
    // adjoint pairing as operators on classes
    for (int draw = 0; draw < 3; ++draw) {
      const Vec xi = rand_vec(rng, 2);
      out.absorb((create_left(fs, xi).twisted_adjoint(fs) - annihilate_left(fs, xi))
                     .twisted_norm_safe(fs),
                 1e-10);
      out.absorb((create_right(fs, xi).twisted_adjoint(fs) - annihilate_right(fs, xi))
                     .twisted_norm_safe(fs),
                 1e-10);
    }
    // norm bounds for 100 draws
    for (int rep = 0; rep < 100; ++rep) {
      const Vec xi = rand_vec(rng, 2);
      const FockOperator cl = create_left(fs, xi);
      for (int n = 0; n < fs.levels(); ++n) {
        const Mat* b = cl.block(n + 1, n);
        const double measured = FockOperator::block_twisted_norm(fs, n + 1, n, *b);
        out.absorb(measured - std::sqrt(creation_bound_constant(t, n)) * xi.norm(), 1e-10);
        if (t.norm() < 1.0)
          out.absorb(measured - xi.norm() / std::sqrt(1.0 - t.norm()), 1e-10);
      }
    }
  }
  return out;
}

Outcome criterion_mixed_commutators() {
  Outcome out;
  std::mt19937_64 rng(11);
  for (const Twist& t : {gallery_q_flip(2, 0.5), gallery_zero(2)}) {
    const FockSpace fs(t, 5);  // safe levels reach n = 3
    for (int draw = 0; draw < 3; ++draw) {
      const Vec xi = rand_vec(rng, 2), eta = rand_vec(rng, 2);
      const MixedCommutatorReport rep = mixed_commutators(fs, xi, eta);
      out.absorb(rep.create_create, 1e-10);
      out.absorb(rep.annihilate_annihilate, 1e-10);
      out.absorb(rep.left_right, 1e-10);
      out.absorb(rep.right_left, 1e-10);
      out.absorb(rep.vacuum, 1e-12);
      out.absorb(rep.vacuum_fields, 1e-12);
    }
  }
  return out;
}

Outcome criterion_diagrams() {
  Outcome out;
  out.require(enumerate_diagrams(1).size() == 1 && enumerate_diagrams(2).size() == 3 &&
                  enumerate_diagrams(3).size() == 15,
              "diagram counts");
  std::map<int, int> hist;
  for (const auto& d : enumerate_diagrams(3)) ++hist[d.crossing_count];
  out.require(hist == std::map<int, int>{{0, 5}, {1, 6}, {2, 3}, {3, 1}}, "crossing multiset");

  const StandardSubspace h = generic_h();
  const Twist t = gallery_q_flip(2, 0.5);
  const FockSpace fs(t, 6);
  std::mt19937_64 rng(13);
  for (int draw = 0; draw < 20; ++draw)
    for (int two_n : {2, 4, 6})
      out.absorb(diagram_sum_check(fs, h, rand_vectors(rng, two_n, 2), Cplx(0.3, 0)), 1e-8);

  // grouped partial sums against the explicit tables, termwise
  const auto diagrams = explicit_term_diagrams(3);
  for (int draw = 0; draw < 5; ++draw) {
    const auto xs = rand_vectors(rng, 6, 2);
    const auto table = explicit_term_table(t, h, xs, Cplx(0.2, 0));
    for (int k = 0; k < 4; ++k) {
      Cplx group = 0.0;
      for (const Cplx& v : table[k]) group += v;
      out.absorb(std::abs(group - crossing_class_sum(k, t, h, xs, Cplx(0.2, 0))), 1e-10);
      for (size_t i = 0; i < table[k].size(); ++i)
        out.absorb(std::abs(evaluate_diagram(diagrams[k][i], t, h, xs, Cplx(0.2, 0)) -
                            table[k][i]),
                   1e-10);
    }
  }
  return out;
}

Outcome criterion_kms() {
  Outcome out;
  const StandardSubspace h = generic_h();
  const FockSpace fs(gallery_q_flip(2, 0.5), 6);
  std::mt19937_64 rng(17);
  std::vector<double> grid;
  for (int i = 0; i < 8; ++i) grid.push_back(-1.4 + 0.4 * i);
  for (int two_n : {2, 4, 6}) {
    const KmsReport rep = kms_shift_check(fs, h, rand_vectors(rng, two_n, 2), grid);
    out.absorb(rep.full, 1e-8);
    out.absorb(rep.per_diagram, 1e-8);
  }
  const FockSpace bad(fixture_proj_pair(), 4);
  const KmsReport witness = kms_shift_check(bad, h, frozen_witness(), {0.0});
  out.require(witness.full >= 1e-3, "frozen witness did not separate");
  out.note = "witness residual " + std::to_string(witness.full);
  return out;
}

Outcome criterion_equivalence() {
  Outcome out;
  const StandardSubspace h = generic_h();
  const StandardSubspace flat = abelian_h();
  std::mt19937_64 rng(19);

  struct Member {
    Twist t;
    const StandardSubspace* hs;
    bool standard;
  };
  const std::vector<Member> members = {
      {gallery_zero(2), &h, true},
      {gallery_flip(2), &h, true},
      {gallery_neg_flip(2), &h, true},
      {gallery_q_flip(2, 0.5), &h, true},
      {gallery_q_flip(2, -0.5), &h, true},
      {gallery_flip_sandwich(diag2(0.9, 0.5)), &flat, true},
      {gallery_identity(2), &h, false},
      {gallery_neg_identity(2), &h, false},
      {fixture_proj_pair(), &h, false},
      {fixture_ab(), &h, false},
  };
  for (const auto& m : members) {
    if (compatibility_residual(m.t, *m.hs) > 1e-10) {
      out.require(false, "gallery member unexpectedly incompatible");
      continue;
    }
    const FockSpace fs(m.t, 4);
    const std::vector<Vec> witness = m.standard ? rand_vectors(rng, 4, 2) : frozen_witness();
    const EquivalenceVerdict v = equivalence_suite(fs, *m.hs, witness, 1e-8);
    out.require(v.consistent(), "characterizations disagree");
    out.require(v.tomita_kms == m.standard, "verdict does not match the member class");
    if (m.standard) {
      out.absorb(v.tomita_residual, 1e-8);
      out.absorb(v.crossing_residual, 1e-8);
      out.absorb(v.locality_res, 1e-8);
    } else {
      out.require(std::max(v.tomita_residual, v.kms_residual) >= 1e-3, "weak tomita witness");
      out.require(v.crossing_residual >= 1e-3 || v.ybe_residual >= 1e-3,
                  "weak crossing witness");
      out.require(v.locality_res >= 1e-3, "weak locality witness");
    }
  }
  return out;
}

Outcome criterion_modular_data() {
  Outcome out;
  const StandardSubspace h = generic_h();
  {
    const FockSpace fs(gallery_q_flip(2, 0.5), 4);
    const TomitaReport rep = tomita_consistency(fs, h, 3);
    out.absorb(rep.welldefined_residual, 1e-8);
    out.absorb(rep.match_residual, 1e-8);

    const FlowReport flow = modular_flow_covariance(fs, h, {0.3, -0.7, 1.2});
    out.absorb(flow.unitary_covariance, 1e-10);
    out.absorb(flow.vacuum_fixed, 1e-10);
    out.absorb(flow.j_exchange, 1e-10);
  }
  {
    const FockSpace fs(gallery_q_flip(2, 0.5), 5);
    const DualityReport rep = duality_proxy(fs, h, 2);
    out.absorb(rep.j_exchange, 1e-9);
    out.absorb(rep.mutual_commutation, 1e-9);
  }
  {
    const FockSpace fs(gallery_flip(2), 4);
    const DualityReport rep = duality_proxy(fs, h, 2);
    out.absorb(rep.left_right_field_gap, 1e-10);
  }
  return out;
}

Outcome criterion_nuclearity() {
  Outcome out;
  const StandardSubspace h = generic_h(4.0);
  const StandardSubspace k = generic_h(16.0);
  out.absorb(std::abs(l2_index(h, k) - (std::pow(2.0, -0.5) + std::pow(2.0, 0.5))), 1e-12);

  const NuclearityReport rep = fock_l2_check(gallery_q_flip(2, 0.5), h, k, 4);
  out.absorb(rep.deviation, 1e-9);

  // the compatibility gate must refuse a rotated second subspace
  PositiveSpectral rotated;
  rotated.eigenvalues = RVec(2);
  rotated.eigenvalues << 1.0 / 16.0, 16.0;
  Mat u(2, 2);
  u << Cplx(std::cos(0.4), 0), Cplx(-std::sin(0.4), 0), Cplx(std::sin(0.4), 0),
      Cplx(std::cos(0.4), 0);
  rotated.eigenbasis = u;
  AntilinearMap j;
  j.u = Mat::Zero(2, 2);
  j.u(0, 1) = 1.0;
  j.u(1, 0) = 1.0;
  j.u = u * j.u * u.transpose();
  const StandardSubspace k_rot = make_standard(rotated, j);
  bool fired = false;
  try {
    fock_l2_check(gallery_flip_sandwich(diag2(0.9, 0.5)), h, k_rot, 3);
  } catch (const std::invalid_argument&) {
    fired = true;
  }
  out.require(fired, "compatibility gate did not fire");
  return out;
}

Outcome criterion_determinism() {
  Outcome out;
  const RunReport a = run_gallery(7, 6);
  const RunReport b = run_gallery(7, 6);
  out.require(a.exit_code == 0, "gallery battery has undeclared failures");
  out.require(a.payload_bytes() == b.payload_bytes(), "payload bytes differ between runs");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"twist classification table", 5, criterion_classification},
      {"Yang-Baxter residuals", 1, criterion_ybe},
      {"permutation-sum oracle", 10, criterion_perm_sum},
      {"reversed factorization", 5, criterion_factorization},
      {"creation/annihilation contracts", 10, criterion_creation_contracts},
      {"mixed commutator identities", 5, criterion_mixed_commutators},
      {"diagram calculus", 60, criterion_diagrams},
      {"KMS shift and rotation rule", 60, criterion_kms},
      {"standardness equivalence suite", 120, criterion_equivalence},
      {"modular data", 120, criterion_modular_data},
      {"nuclearity arithmetic", 10, criterion_nuclearity},
      {"report determinism", 600, criterion_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.note = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > criteria[i].budget_seconds) {
      out.ok = false;
      if (out.note.empty()) out.note = "time budget exceeded";
    }
    if (!out.ok) ++failures;
    std::printf("[%2zu] %-4s %-36s worst=%.3e  %5.2fs%s%s\n", i + 1,
                out.ok ? "PASS" : "FAIL", criteria[i].title, out.worst, seconds,
                out.note.empty() ? "" : "  ", out.note.c_str());
  }
  if (failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", failures);
  return failures;
}
