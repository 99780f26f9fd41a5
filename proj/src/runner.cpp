#include "twistlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "twistlab/fock.hpp"
#include "twistlab/modular.hpp"
#include "twistlab/npoint.hpp"
#include "twistlab/nuclearity.hpp"
#include "twistlab/perm.hpp"

namespace twistlab {

namespace {

using Clock = std::chrono::steady_clock;

struct Collector {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
  std::string prefix;
  const std::map<std::string, Expectation>* expectations = nullptr;
  int failures = 0;
  std::ostringstream summary;

  void add(const std::string& name, const std::string& anchor, double residual,
           double threshold, double elapsed_ms, const std::string& forced_status = "") {
    const std::string full = prefix.empty() ? name : prefix + "/" + name;
    std::string status = forced_status;
    if (status.empty()) {
      const Expectation* exp = nullptr;
      if (expectations) {
        auto it = expectations->find(name);
        if (it != expectations->end()) exp = &it->second;
      }
      if (exp && exp->must_fail) {
        status = residual >= exp->floor ? "xfail_ok" : "xfail_missed";
        threshold = exp->floor;
      } else {
        status = residual <= threshold ? "pass" : "fail";
      }
    }
    if (status == "fail" || status == "xfail_missed") ++failures;
    nlohmann::ordered_json entry;
    entry["name"] = full;
    entry["anchor"] = anchor;
    entry["status"] = status;
    entry["residual"] = residual;
    entry["threshold"] = threshold;
    checks.push_back(entry);
    timing[full] = elapsed_ms;
    summary << "[" << status << "] " << full << "  residual=" << residual
            << "  threshold=" << threshold << "\n";
  }

  void info(const std::string& name, const std::string& anchor, double value,
            double elapsed_ms) {
    add(name, anchor, value, 0.0, elapsed_ms, "info");
  }
  void skip(const std::string& name, const std::string& anchor, const std::string& why) {
    const std::string full = prefix.empty() ? name : prefix + "/" + name;
    nlohmann::ordered_json entry;
    entry["name"] = full;
    entry["anchor"] = anchor;
    entry["status"] = "skip";
    entry["note"] = why;
    checks.push_back(entry);
    summary << "[skip] " << full << "  (" << why << ")\n";
  }
};

struct Timer {
  Clock::time_point start = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
};

Vec seeded_vec(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
  return v;
}

// --- suites -----------------------------------------------------------------

void suite_classify(const RunConfig& cfg, const Twist& t, Collector& col) {
  Timer timer;
  col.add("classify.selfadjoint", "Def 2.1", t.selfadjoint_residual(),
          tol::kSelfAdjoint * (1.0 + t.norm()), timer.ms());

  timer = {};
  col.add("classify.contraction", "Def 2.1", std::max(0.0, t.norm() - 1.0), 1e-10, timer.ms());

  timer = {};
  const PositivityReport report = classify(t, cfg.n_max);
  double negativity = 0.0;
  for (const auto& lv : report.levels) negativity = std::max(negativity, -lv.min_eigenvalue);
  col.add("classify.positivity", "Def 2.1", std::max(0.0, negativity), 1e-9, timer.ms());

  timer = {};
  bool consistent = true;
  const bool sufficient =
      t.norm() <= 0.5 + 1e-12 ||
      herm_eig(t.matrix()).eigenvalues.minCoeff() >= -1e-12 ||
      (t.braided() && t.norm() < 1.0 - 1e-12);
  if (sufficient && report.verdict != TwistVerdict::Strict) consistent = false;
  col.add("classify.sufficient_condition_consistency", "Thm 2.2", consistent ? 0.0 : 1.0,
          0.5, timer.ms());

  timer = {};
  col.add("classify.ybe", "eq:YBE", t.ybe_residual(), 1e-12, timer.ms());

  timer = {};
  col.info("classify.left_right_obstruction", "Lemma 4.3", left_right_obstruction(t),
           timer.ms());
}

void suite_fock(const RunConfig& cfg, const Twist& t, const StandardSubspace& h,
                std::mt19937_64& rng, Collector& col) {
  const FockSpace fs(t, cfg.fock_levels);

  Timer timer;
  double construction = 0.0;
  for (int n = 1; n < fs.levels(); ++n) {
    const Mat lhs = fs.level(n + 1).p;
    const Mat rhs = kron(Mat(Mat::Identity(fs.d(), fs.d())), fs.level(n).p) * fs.level(n + 1).r;
    construction = std::max(construction, op_norm(Mat(lhs - rhs)));
  }
  col.add("fock.construction_identity", "def:Pn", construction, 1e-12, timer.ms());

  timer = {};
  double fact = 0.0;
  for (int n = 1; n < fs.levels(); ++n)
    fact = std::max(fact, factorization_residual(fs, n));
  col.add("fock.factorization_tilde", "Lemma 3.20 / eq:Preversed", fact, 1e-10, timer.ms());

  timer = {};
  {
    // permutation-sum cross-check; for non-braided twists the gap between
    // the two peeling orders is reported as informative output
    double gap = 0.0, peel_gap = 0.0;
    for (int n = 2; n <= std::min(4, fs.levels()); ++n) {
      gap = std::max(gap, op_norm(Mat(p_sum(t, n, Peeling::Left) - fs.level(n).p)));
      peel_gap = std::max(
          peel_gap, op_norm(Mat(p_sum(t, n, Peeling::Right) - p_sum(t, n, Peeling::Left))));
    }
    col.add("fock.permutation_sum", "eq:CSnFormula", gap, 1e-10, timer.ms());
    if (t.braided())
      col.add("fock.peeling_agreement", "Lemma 3.20 / eq:CSnFormula", peel_gap, 1e-10,
              timer.ms());
    else
      col.info("fock.peeling_gap", "Lemma 3.20 / eq:CSnFormula", peel_gap, timer.ms());
  }

  const bool right_ok = fs.kernel_stability_residual() <= 1e-8;

  timer = {};
  {
    double left_gap = 0.0, right_gap = 0.0;
    for (int draw = 0; draw < 3; ++draw) {
      const Vec xi = seeded_vec(rng, fs.d());
      const FockOperator cl = create_left(fs, xi);
      left_gap = std::max(
          left_gap, (cl.twisted_adjoint(fs) - annihilate_left(fs, xi)).twisted_norm_safe(fs));
      if (right_ok) {
        const FockOperator cr = create_right(fs, xi);
        right_gap = std::max(
            right_gap,
            (cr.twisted_adjoint(fs) - annihilate_right(fs, xi)).twisted_norm_safe(fs));
      }
    }
    col.add("fock.twisted_adjoint", "def:aLTstar / eq:aL", left_gap, 1e-10, timer.ms());
    // the right annihilation formula rests on the reversed factorization,
    // so non-braided twists genuinely miss this identity
    if (right_ok)
      col.add("fock.twisted_adjoint_right", "eq:aR* / eq:aR", right_gap, 1e-10, timer.ms());
    else
      col.skip("fock.twisted_adjoint_right", "eq:aR* / eq:aR",
               "right operators unavailable (kernel stability)");
  }

  timer = {};
  {
    double excess = 0.0;
    const Vec xi = seeded_vec(rng, fs.d());
    const double nx = xi.norm();
    const FockOperator cl = create_left(fs, xi);
    for (int n = 0; n < fs.levels(); ++n) {
      if (const Mat* b = cl.block(n + 1, n)) {
        const double measured = FockOperator::block_twisted_norm(fs, n + 1, n, *b);
        const double bound = std::sqrt(creation_bound_constant(t, n)) * nx;
        excess = std::max(excess, measured - bound);
        if (t.norm() < 1.0) {
          const double global = nx / std::sqrt(1.0 - t.norm());
          excess = std::max(excess, measured - global);
        }
      }
    }
    col.add("fock.norm_bounds", "eq:abound1 / eq:altnormbound", std::max(0.0, excess), 1e-10,
            timer.ms());
  }

  timer = {};
  if (right_ok) {
    double worst = 0.0;
    for (int draw = 0; draw < 2; ++draw) {
      const Vec xi = seeded_vec(rng, fs.d());
      const Vec eta = seeded_vec(rng, fs.d());
      worst = std::max(worst, mixed_commutators(fs, xi, eta).max());
    }
    col.add("fock.mixed_commutators", "eq:mixedrelations", worst, 1e-10, timer.ms());
  } else {
    col.skip("fock.mixed_commutators", "eq:mixedrelations",
             "right operators unavailable (kernel stability)");
  }

  timer = {};
  {
    const Mat u1 = h.modular_unitary(0.4);
    const Mat u2 = h.modular_unitary(-0.9);
    const FockOperator g1 = second_quantize(fs, u1);
    const FockOperator g2 = second_quantize(fs, u2);
    const FockOperator g12 = second_quantize(fs, Mat(u1 * u2));
    col.add("fock.gamma_group_law", "Lemma 2.6",
            (g1.compose(g2) - g12).twisted_norm_safe(fs), 1e-10, timer.ms());
  }

  timer = {};
  {
    const Vec xi = seeded_vec(rng, fs.d());
    const Mat u = h.modular_unitary(0.7);
    const FockOperator lhs = second_quantize(fs, u)
                                 .compose(create_left(fs, xi))
                                 .compose(second_quantize(fs, Mat(u.adjoint())));
    const FockOperator rhs = create_left(fs, Vec(u * xi));
    col.add("fock.gamma_covariance", "Lemma 2.6", (lhs - rhs).twisted_norm_safe(fs), 1e-10,
            timer.ms());
  }

  timer = {};
  if (right_ok && gamma_y_commutant_residual(fs, h.j) <= 1e-8) {
    const AntilinearFockOperator jy = second_quantize_reversed(fs, h.j);
    double worst = 0.0;
    for (int i = 0; i < fs.d(); ++i) {
      const Vec hh = h.real_basis.col(i);
      const FockOperator phi_l = field(fs, hh, Side::Left);
      FockOperator conjugated;
      for (const auto& [key, xb] : phi_l.blocks()) {
        const Mat* lt = jy.linear_part.block(key.first, key.first);
        const Mat* lf = jy.linear_part.block(key.second, key.second);
        if (!lt || !lf) continue;
        conjugated.set_block(key.first, key.second,
                             Mat((*lt) * xb.conjugate() * lf->conjugate()));
      }
      conjugated.set_profile(1, 1);
      const FockOperator rhs = field(fs, h.j.apply(hh), Side::Right);
      worst = std::max(worst, (conjugated - rhs).twisted_norm_safe(fs));
    }
    col.add("fock.gamma_y_exchange", "eq:LRY", worst, 1e-10, timer.ms());
  } else {
    col.skip("fock.gamma_y_exchange", "eq:LRY",
             "reversal precondition [F(J (x) J), T] = 0 not met");
  }
}

void suite_npoint(const RunConfig& cfg, const Twist& t, const StandardSubspace& h,
                  std::mt19937_64& rng, Collector& col) {
  const FockSpace fs(t, cfg.fock_levels);

  Timer timer;
  {
    double bad = 0.0;
    const std::vector<int> expected_counts = {1, 3, 15};
    for (int n = 1; n <= 3; ++n) {
      const auto diagrams = enumerate_diagrams(n);
      if (int(diagrams.size()) != expected_counts[n - 1]) bad = 1.0;
    }
    std::map<int, int> multiset;
    for (const auto& d : enumerate_diagrams(3)) ++multiset[d.crossing_count];
    if (multiset != std::map<int, int>{{0, 5}, {1, 6}, {2, 3}, {3, 1}}) bad = 1.0;
    col.add("npoint.enumeration", "Appendix A", bad, 0.5, timer.ms());
  }

  timer = {};
  {
    double worst = 0.0;
    for (int two_n = 2; two_n <= std::min(6, fs.levels()); two_n += 2)
      for (int draw = 0; draw < 3; ++draw) {
        std::vector<Vec> xs;
        for (int k = 0; k < two_n; ++k) xs.push_back(seeded_vec(rng, fs.d()));
        worst = std::max(worst, diagram_sum_check(fs, h, xs, Cplx(0.3, 0)));
      }
    col.add("npoint.diagram_sum", "eq:TranslateDiagram", worst, 1e-8, timer.ms());
  }

  timer = {};
  {
    double odd = 0.0;
    std::vector<Vec> xs;
    for (int k = 0; k < 3; ++k) xs.push_back(seeded_vec(rng, fs.d()));
    odd = std::abs(wightman(fs, h, xs));
    col.add("npoint.odd_vanishing", "def:W2n", odd, 1e-12, timer.ms());
  }

  timer = {};
  if (fs.levels() >= 6) {
    double worst = 0.0;
    for (int draw = 0; draw < 2; ++draw) {
      std::vector<Vec> xs;
      for (int k = 0; k < 6; ++k) xs.push_back(seeded_vec(rng, fs.d()));
      const auto table = explicit_term_table(t, h, xs, Cplx(0.2, 0));
      const auto diagrams = explicit_term_diagrams(3);
      for (int k = 0; k < 4; ++k) {
        Cplx table_sum = 0.0;
        for (const Cplx& v : table[k]) table_sum += v;
        const Cplx generic = crossing_class_sum(k, t, h, xs, Cplx(0.2, 0));
        worst = std::max(worst, std::abs(table_sum - generic));
        for (size_t i = 0; i < table[k].size(); ++i) {
          const Cplx dv = evaluate_diagram(diagrams[k][i], t, h, xs, Cplx(0.2, 0));
          worst = std::max(worst, std::abs(dv - table[k][i]));
        }
      }
    }
    col.add("npoint.w_grading", "Lemma 3.9 / eq:6pt-split", worst, 1e-10, timer.ms());
  } else {
    col.skip("npoint.w_grading", "Lemma 3.9 / eq:6pt-split", "needs fock_levels >= 6");
  }

  timer = {};
  {
    std::vector<double> grid;
    for (int i = 0; i < 8; ++i) grid.push_back(-1.4 + 0.4 * i);
    double full = 0.0, per_diagram = 0.0;
    for (int two_n = 2; two_n <= std::min(6, fs.levels()); two_n += 2) {
      std::vector<Vec> xs;
      for (int k = 0; k < two_n; ++k) xs.push_back(seeded_vec(rng, fs.d()));
      const KmsReport rep = kms_shift_check(fs, h, xs, grid);
      full = std::max(full, rep.full);
      per_diagram = std::max(per_diagram, rep.per_diagram);
    }
    col.add("npoint.kms", "Lemma 3.5", full, cfg.tolerance, timer.ms());
    col.add("npoint.rotation", "Appendix A rotation rule", per_diagram, cfg.tolerance,
            timer.ms());
  }
}

void suite_modular(const RunConfig& cfg, const Twist& t, const StandardSubspace& h,
                   std::mt19937_64& rng, Collector& col) {
  const FockSpace fs(t, cfg.fock_levels);
  const int degree = std::min(cfg.max_degree, cfg.fock_levels - 1);

  Timer timer;
  {
    double bad = 0.0;
    for (const auto& lv : cyclicity_rank(fs, h, degree))
      bad = std::max(bad, double(std::abs(lv.rank - lv.expected)));
    col.add("modular.cyclicity", "Lemma 2.9", bad, 0.5, timer.ms());
  }

  timer = {};
  {
    const TomitaReport rep = tomita_consistency(fs, h, degree);
    col.add("modular.tomita", "Prop 3.24", std::max(rep.welldefined_residual, rep.match_residual),
            cfg.tolerance, timer.ms());
    // smallest monomial degree at which a mismatch becomes visible
    // (0 = none up to the cap); informative output
    double detection = 0.0;
    for (int deg = 1; deg <= degree; ++deg) {
      const TomitaReport probe = tomita_consistency(fs, h, deg);
      if (std::max(probe.welldefined_residual, probe.match_residual) >= 1e-3) {
        detection = deg;
        break;
      }
    }
    col.info("modular.tomita_detection_degree", "Prop 3.24", detection, timer.ms());
  }

  timer = {};
  if (fs.kernel_stability_residual() <= 1e-8) {
    const LocalityReport rep = locality_residual(fs, h, std::min(3, cfg.fock_levels - 1));
    col.add("modular.locality", "Prop 3.22 / eq:nCrossing",
            std::max(rep.commutator, rep.n_crossing), cfg.tolerance, timer.ms());
  } else {
    col.skip("modular.locality", "Prop 3.22 / eq:nCrossing",
             "right operators unavailable (kernel stability)");
  }

  timer = {};
  {
    const FlowReport rep = modular_flow_covariance(fs, h, {0.3, -0.75});
    col.add("modular.flow_covariance", "Prop 3.24",
            std::max({rep.unitary_covariance, rep.vacuum_fixed, rep.level_one_restriction}),
            1e-10, timer.ms());
    col.add("modular.j_exchange", "eq:LRY", rep.j_exchange, cfg.tolerance, timer.ms());
  }

  timer = {};
  {
    const DualityReport rep = duality_proxy(fs, h, 2);
    col.add("modular.duality", "Cor 3.26",
            std::max({rep.j_exchange, rep.mutual_commutation, rep.left_right_field_gap}),
            cfg.tolerance, timer.ms());
  }

  timer = {};
  {
    std::vector<Vec> witness;
    for (int k = 0; k < 4; ++k) witness.push_back(seeded_vec(rng, fs.d()));
    const EquivalenceVerdict v = equivalence_suite(fs, h, witness, cfg.tolerance);
    col.add("modular.equivalence_agreement", "Thm 3.12 / Thm 3.23",
            v.consistent() ? 0.0 : 1.0, 0.5, timer.ms());
  }
}

void suite_nuclearity(const RunConfig& cfg, const Twist& t, const StandardSubspace& h,
                      Collector& col) {
  if (!cfg.subspace_k) {
    col.skip("nuclearity.fock_l2", "Prop 4.11", "no second subspace configured");
    return;
  }
  const StandardSubspace k = cfg.subspace_k->build();

  Timer timer;
  col.info("nuclearity.l2_index", "Prop 4.11", l2_index(h, k), timer.ms());

  timer = {};
  try {
    const NuclearityReport rep = fock_l2_check(t, h, k, std::min(cfg.fock_levels, 4));
    col.add("nuclearity.fock_l2", "Prop 4.11", rep.deviation, 1e-9, timer.ms());
  } catch (const std::invalid_argument& e) {
    const Expectation* exp = nullptr;
    if (col.expectations) {
      auto it = col.expectations->find("nuclearity.fock_l2");
      if (it != col.expectations->end()) exp = &it->second;
    }
    if (exp && exp->must_fail)
      col.add("nuclearity.fock_l2", "Prop 4.11", 1.0, 0.0, timer.ms(), "xfail_ok");
    else
      col.skip("nuclearity.fock_l2", "Prop 4.11", e.what());
  }
}

void run_member(const RunConfig& cfg, Collector& col) {
  const Twist t = cfg.twist.build();
  const StandardSubspace h = cfg.subspace.build();
  std::mt19937_64 rng(cfg.seed);

  const auto wants = [&](const std::string& s) {
    for (const auto& w : cfg.suites)
      if (w == s || w == "all") return true;
    return false;
  };

  // Compatibility is reported up front; the modular suites assume it.
  Timer timer;
  col.add("compatibility", "Def 3.1", compatibility_residual(t, h), 1e-10, timer.ms());
  timer = {};
  col.add("crossing", "Def 3.3 / eq:Crossingboundary", crossing_residual(t, h),
          cfg.tolerance, timer.ms());
  timer = {};
  col.add("j_flip", "Lemma 3.4", j_flip_residual(t, h), cfg.tolerance, timer.ms());

  if (wants("classify")) suite_classify(cfg, t, col);
  if (wants("fock")) suite_fock(cfg, t, h, rng, col);
  if (wants("npoint")) suite_npoint(cfg, t, h, rng, col);
  if (wants("modular")) suite_modular(cfg, t, h, rng, col);
  if (wants("nuclearity")) suite_nuclearity(cfg, t, h, col);
}

RunReport finish(const RunConfig& cfg, Collector& col) {
  RunReport report;
  nlohmann::ordered_json payload;
  payload["schema"] = 1;
  payload["config"] = cfg.echo();
  payload["checks"] = col.checks;
  payload["summary"] = {{"failures", col.failures},
                        {"total", col.checks.size()}};
  report.document["schema"] = 1;
  report.document["payload"] = payload;
  report.document["timing"] = col.timing;
  report.exit_code = col.failures == 0 ? 0 : 1;
  col.summary << (col.failures == 0 ? "all checks met their expectations\n"
                                    : std::to_string(col.failures) + " check(s) failed\n");
  report.human_summary = col.summary.str();
  return report;
}

}  // namespace

RunReport run(const RunConfig& cfg) {
  if (cfg.gallery_all) return run_gallery(cfg.seed, cfg.fock_levels);
  Collector col;
  col.expectations = &cfg.expectations;
  run_member(cfg, col);
  RunReport report = finish(cfg, col);
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    if (!out) throw std::runtime_error("run: cannot open output path " + cfg.out_path);
    out << report.document.dump(2) << "\n";
  }
  return report;
}

std::vector<GalleryEntry> builtin_gallery(int fock_levels) {
  std::vector<GalleryEntry> entries;

  SubspaceSpec generic;
  generic.dim = 2;
  generic.delta_eigenvalues = {4.0, 0.25};
  generic.j_kind = "swap_conjugation";

  SubspaceSpec abelian;
  abelian.dim = 2;
  abelian.delta_eigenvalues = {1.0, 1.0};
  abelian.j_kind = "conjugation";

  SubspaceSpec generic_k;
  generic_k.dim = 2;
  generic_k.delta_eigenvalues = {16.0, 0.0625};
  generic_k.j_kind = "swap_conjugation";

  const auto base = [&](const std::string& name) {
    GalleryEntry e;
    e.label = name;
    e.config.suites = {"all"};
    e.config.fock_levels = fock_levels;
    e.config.subspace = generic;
    e.config.subspace_k = generic_k;
    e.config.twist.kind = "gallery";
    e.config.twist.name = name;
    e.config.twist.d = 2;
    return e;
  };

  // Fully standard members: every check passes.
  entries.push_back(base("zero"));
  entries.push_back(base("flip"));
  entries.push_back(base("neg_flip"));
  {
    GalleryEntry e = base("q_flip");
    e.label = "q_flip_plus";
    e.config.twist.q = 0.5;
    entries.push_back(e);
  }
  {
    GalleryEntry e = base("q_flip");
    e.label = "q_flip_minus";
    e.config.twist.q = -0.5;
    entries.push_back(e);
  }
  {
    GalleryEntry e = base("flip_sandwich");
    e.config.twist.a_diag = {{0.9, 0.5}};
    e.config.subspace = abelian;
    entries.push_back(e);
  }

  // Braided but not crossing-symmetric: the standardness side fails.  The
  // J-flip relation and the J-exchange are necessary consequences only in
  // one direction and happen to hold for these members, so they stay
  // expected-pass.
  const std::vector<std::string> crossing_failures = {
      "crossing",        "npoint.kms",       "npoint.rotation",
      "modular.tomita",  "modular.locality", "modular.duality"};
  {
    GalleryEntry e = base("identity");
    for (const auto& name : crossing_failures) e.config.expectations[name] = {true, 1e-3};
    entries.push_back(e);
  }
  {
    GalleryEntry e = base("neg_identity");
    for (const auto& name : crossing_failures) e.config.expectations[name] = {true, 1e-3};
    entries.push_back(e);
  }
  {
    GalleryEntry e = base("proj_pair");
    e.config.twist.q = 0.5;
    e.config.twist.e_axis = 1;
    e.config.twist.etilde_axis = 2;
    for (const auto& name : crossing_failures) e.config.expectations[name] = {true, 1e-3};
    entries.push_back(e);
  }

  // Not braided at all: Yang-Baxter, the reversed factorization, the
  // right-adjoint pairing and the relative commutation identities fail too,
  // and here even the J-flip relation and the J-exchange break.
  {
    GalleryEntry e = base("elem_tensor");
    e.config.twist.a_diag = {{1.0, 0.3}};
    e.config.twist.b_diag = {{0.5, 0.2}};
    for (const auto& name : crossing_failures) e.config.expectations[name] = {true, 1e-3};
    e.config.expectations["j_flip"] = {true, 1e-3};
    e.config.expectations["classify.ybe"] = {true, 1e-3};
    e.config.expectations["fock.factorization_tilde"] = {true, 1e-3};
    e.config.expectations["fock.twisted_adjoint_right"] = {true, 1e-3};
    e.config.expectations["fock.mixed_commutators"] = {true, 1e-3};
    e.config.expectations["modular.j_exchange"] = {true, 1e-3};
    entries.push_back(e);
  }
  return entries;
}

RunReport run_gallery(unsigned long long seed, int fock_levels) {
  int failures = 0;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
  std::ostringstream summary;

  for (const GalleryEntry& entry : builtin_gallery(fock_levels)) {
    Collector member;
    member.prefix = entry.label;
    member.expectations = &entry.config.expectations;
    RunConfig cfg = entry.config;
    cfg.seed = seed;
    run_member(cfg, member);
    failures += member.failures;
    for (auto& c : member.checks) checks.push_back(c);
    for (auto& [k, v] : member.timing.items()) timing[k] = v;
    summary << member.summary.str();
  }

  RunConfig echo_cfg;
  echo_cfg.gallery_all = true;
  echo_cfg.seed = seed;
  echo_cfg.fock_levels = fock_levels;
  echo_cfg.suites = {"all"};

  RunReport report;
  nlohmann::ordered_json payload;
  payload["schema"] = 1;
  payload["config"] = {{"gallery_all", true}, {"seed", seed}, {"fock_levels", fock_levels}};
  payload["checks"] = checks;
  payload["summary"] = {{"failures", failures}, {"total", checks.size()}};
  report.document["schema"] = 1;
  report.document["payload"] = payload;
  report.document["timing"] = timing;
  report.exit_code = failures == 0 ? 0 : 1;
  summary << (failures == 0 ? "all checks met their expectations\n"
                            : std::to_string(failures) + " check(s) failed\n");
  report.human_summary = summary.str();
  return report;
}

void write_demo_specs(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("demo: cannot create " + dir + ": " + ec.message());

  const auto spec_text = [](const GalleryEntry& e) {
    std::ostringstream out;
    out << "# twist verification spec: " << e.label << "\n";
    out << "seed = 7\n";
    out << "suites = [\"all\"]\n\n";
    out << "[cutoffs]\n";
    out << "n_max = 5\n";
    out << "fock_levels = " << e.config.fock_levels << "\n";
    out << "max_degree = 3\n\n";
    out << "[twist]\n";
    out << "kind = \"gallery\"\n";
    out << "name = \"" << e.config.twist.name << "\"\n";
    out << "d = 2\n";
    const auto& tw = e.config.twist;
    if (tw.q != 0.0 || tw.a_diag || tw.b_diag || tw.e_axis) {
      out << "\n[twist.params]\n";
      if (tw.q != 0.0) out << "q = " << tw.q << "\n";
      if (tw.a_diag) {
        out << "a_diag = [" << (*tw.a_diag)[0] << ", " << (*tw.a_diag)[1] << "]\n";
      }
      if (tw.b_diag) {
        out << "b_diag = [" << (*tw.b_diag)[0] << ", " << (*tw.b_diag)[1] << "]\n";
      }
      if (tw.e_axis) out << "e_axis = " << *tw.e_axis << "\n";
      if (tw.etilde_axis) out << "etilde_axis = " << *tw.etilde_axis << "\n";
    }
    out << "\n[subspace]\n";
    out << "dim = 2\n";
    out << "delta_eigenvalues = [" << e.config.subspace.delta_eigenvalues[0] << ", "
        << e.config.subspace.delta_eigenvalues[1] << "]\n";
    out << "delta_basis = \"identity\"\n\n";
    out << "[subspace.j]\n";
    out << "kind = \"" << e.config.subspace.j_kind << "\"\n";
    if (e.config.subspace_k) {
      out << "\n[subspace_k]\n";
      out << "dim = 2\n";
      out << "delta_eigenvalues = [" << e.config.subspace_k->delta_eigenvalues[0] << ", "
          << e.config.subspace_k->delta_eigenvalues[1] << "]\n";
      out << "delta_basis = \"identity\"\n\n";
      out << "[subspace_k.j]\n";
      out << "kind = \"" << e.config.subspace_k->j_kind << "\"\n";
    }
    if (!e.config.expectations.empty()) {
      out << "\n# declared must-fail checks with their residual floors\n";
      out << "[expect]\n";
      for (const auto& [name, exp] : e.config.expectations)
        out << "\"" << name << "\" = " << exp.floor << "\n";
    }
    return out.str();
  };

  for (const GalleryEntry& e : builtin_gallery(6)) {
    std::ofstream out(fs::path(dir) / (e.label + ".toml"));
    if (!out) throw std::runtime_error("demo: cannot write into " + dir);
    out << spec_text(e);
  }
  std::ofstream all(fs::path(dir) / "gallery_all.toml");
  if (!all) throw std::runtime_error("demo: cannot write into " + dir);
  all << "# whole-gallery battery: every member with its expected outcomes\n";
  all << "gallery_all = true\n";
  all << "seed = 7\n\n";
  all << "[cutoffs]\n";
  all << "fock_levels = 6\n";
}

}  // namespace twistlab
