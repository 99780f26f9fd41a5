#pragma once

// Run configuration for the batch front end: twist and subspace specs,
// suite selection, cutoffs, tolerances, seed and expectations.  TOML is the
// primary config format; JSON is accepted as a fallback.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistlab/subspace.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

struct TwistSpec {
  std::string kind = "gallery";  // "gallery" | "matrix"
  std::string name;              // gallery name
  int d = 2;
  double q = 0.0;
  std::optional<std::vector<double>> a_diag;  // diagonal factor A
  std::optional<std::vector<double>> b_diag;  // diagonal factor B
  std::optional<int> e_axis;       // proj_pair: E projects onto basis axis (1-based)
  std::optional<int> etilde_axis;  // proj_pair: E~ axis
  std::string matrix_file;         // kind = "matrix"

  Twist build() const;
};

struct SubspaceSpec {
  int dim = 2;
  std::vector<double> delta_eigenvalues;
  std::string delta_basis = "identity";  // "identity" | path to a matrix file
  std::string j_kind = "swap_conjugation";  // "conjugation"|"swap_conjugation"|"matrix"
  std::string j_matrix_file;

  StandardSubspace build() const;
};

/// Expected outcome of one named check.
struct Expectation {
  bool must_fail = false;
  double floor = 1e-3;  // must-fail checks require residual >= floor
};

struct RunConfig {
  bool gallery_all = false;  // run the whole built-in gallery battery
  TwistSpec twist;
  SubspaceSpec subspace;
  std::optional<SubspaceSpec> subspace_k;  // second subspace for nuclearity
  std::vector<std::string> suites;         // classify|fock|npoint|modular|nuclearity|all
  int n_max = 5;       // positivity cutoff
  int fock_levels = 4; // truncation level N
  int max_degree = 3;  // monomial degree cap
  double tolerance = 1e-8;
  unsigned long long seed = 7;
  std::string out_path;
  std::map<std::string, Expectation> expectations;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);  // .toml or .json by content
  nlohmann::ordered_json echo() const;
};

}  // namespace twistlab
