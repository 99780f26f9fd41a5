// twistlab: batch verification front end for twisted Fock spaces.
//
//   twistlab run      --config <path> [--suite <name>] [--seed <u64>] [--out <path>]
//   twistlab demo     --out <dir>
//   twistlab classify --twist <spec.toml> [--nmax <n>]
//   twistlab npoint   --config <path> --order <2n> [--out <path>]
//
// Exit codes: 0 all checks met expectations, 1 check failure, 2 config or
// input error, 3 resource guard exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "twistlab/config.hpp"
#include "twistlab/fock.hpp"
#include "twistlab/npoint.hpp"
#include "twistlab/runner.hpp"
#include "twistlab/toml_lite.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& suite,
            std::optional<unsigned long long> seed, const std::string& out) {
  twistlab::RunConfig cfg = twistlab::RunConfig::load(config_path);
  if (!suite.empty()) cfg.suites = {suite};
  if (seed) cfg.seed = *seed;
  if (!out.empty()) cfg.out_path = out;
  twistlab::RunReport report = twistlab::run(cfg);
  if (!cfg.out_path.empty() && cfg.gallery_all) {
    std::ofstream f(cfg.out_path);
    f << report.document.dump(2) << "\n";
  }
  std::cout << report.human_summary;
  return report.exit_code;
}

int cmd_demo(const std::string& out_dir) {
  twistlab::write_demo_specs(out_dir);
  std::cout << "wrote gallery spec files into " << out_dir << "\n";
  return 0;
}

int cmd_classify(const std::string& twist_path, int n_max) {
  nlohmann::json j = twistlab::toml_load(twist_path);
  if (!j.contains("twist")) throw std::invalid_argument("classify: spec has no [twist]");
  nlohmann::json wrapper = {{"twist", j.at("twist")},
                            {"subspace",
                             {{"dim", 2}, {"delta_eigenvalues", {1.0, 1.0}},
                              {"j", "conjugation"}}}};
  twistlab::RunConfig cfg = twistlab::RunConfig::from_json(wrapper);
  const twistlab::Twist t = cfg.twist.build();
  const twistlab::PositivityReport rep = twistlab::classify(t, n_max);

  nlohmann::ordered_json out;
  out["norm"] = t.norm();
  out["selfadjoint_residual"] = t.selfadjoint_residual();
  out["ybe_residual"] = t.ybe_residual();
  out["class_tags"] = rep.class_tags;
  // positivity is certified only up to the cutoff, and the verdict says so
  out["verdict"] = rep.verdict == twistlab::TwistVerdict::Strict
                       ? "strict_up_to_cutoff"
                   : rep.verdict == twistlab::TwistVerdict::NonStrict
                       ? "nonstrict_up_to_cutoff"
                       : "not_twist_up_to_cutoff";
  out["cutoff"] = n_max;
  auto levels = nlohmann::ordered_json::array();
  for (const auto& lv : rep.levels)
    levels.push_back({{"n", lv.n},
                      {"min_eigenvalue", lv.min_eigenvalue},
                      {"kernel_dim", lv.kernel_dim}});
  out["levels"] = levels;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_npoint(const std::string& config_path, int order, const std::string& out_path) {
  twistlab::RunConfig cfg = twistlab::RunConfig::load(config_path);
  if (order < 2 || order % 2 != 0)
    throw std::invalid_argument("npoint: --order must be a positive even number");
  const twistlab::Twist t = cfg.twist.build();
  const twistlab::StandardSubspace h = cfg.subspace.build();
  const twistlab::FockSpace fs(t, std::max(cfg.fock_levels, order));

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<twistlab::Vec> xs;
  for (int k = 0; k < order; ++k) {
    twistlab::Vec v(t.d());
    for (int i = 0; i < t.d(); ++i) v[i] = twistlab::Cplx(gauss(rng), gauss(rng));
    xs.push_back(v);
  }

  nlohmann::ordered_json out;
  out["order"] = order;
  out["seed"] = cfg.seed;
  auto entries = nlohmann::ordered_json::array();
  twistlab::Cplx sum = 0.0;
  for (const auto& d : twistlab::enumerate_diagrams(order / 2)) {
    const twistlab::Cplx value = twistlab::evaluate_diagram(d, t, h, xs);
    sum += value;
    auto pairs = nlohmann::ordered_json::array();
    for (auto [s, tt] : d.pairs) pairs.push_back({s, tt});
    entries.push_back({{"pairs", pairs},
                       {"crossings", d.crossing_count},
                       {"value", {value.real(), value.imag()}}});
  }
  out["diagrams"] = entries;
  const twistlab::Cplx w = twistlab::wightman(fs, h, xs);
  out["diagram_sum"] = {sum.real(), sum.imag()};
  out["wightman"] = {w.real(), w.imag()};
  out["residual"] = std::abs(sum - w);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("npoint: cannot open " + out_path);
    f << out.dump(2) << "\n";
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification lab for twisted Fock spaces"};
  app.require_subcommand(1);

  std::string config_path, suite, out_path, twist_path, demo_dir;
  std::optional<unsigned long long> seed;
  int n_max = 5, order = 4;

  auto* run_cmd = app.add_subcommand("run", "run verification suites from a config");
  run_cmd->add_option("--config", config_path, "TOML or JSON config")->required();
  run_cmd->add_option("--suite", suite, "restrict to one suite");
  run_cmd->add_option("--seed", seed, "override the random seed");
  run_cmd->add_option("--out", out_path, "report output path");

  auto* demo_cmd = app.add_subcommand("demo", "write ready-to-run gallery spec files");
  demo_cmd->add_option("--out", demo_dir, "output directory")->required();

  auto* classify_cmd = app.add_subcommand("classify", "classify a twist up to a cutoff");
  classify_cmd->add_option("--twist", twist_path, "twist spec file")->required();
  classify_cmd->add_option("--nmax", n_max, "positivity cutoff");

  auto* npoint_cmd = app.add_subcommand("npoint", "emit per-diagram values as JSON");
  npoint_cmd->add_option("--config", config_path, "TOML or JSON config")->required();
  npoint_cmd->add_option("--order", order, "number of field insertions (2n)")->required();
  npoint_cmd->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, suite, seed, out_path);
    if (demo_cmd->parsed()) return cmd_demo(demo_dir);
    if (classify_cmd->parsed()) return cmd_classify(twist_path, n_max);
    if (npoint_cmd->parsed()) return cmd_npoint(config_path, order, out_path);
  } catch (const std::length_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
