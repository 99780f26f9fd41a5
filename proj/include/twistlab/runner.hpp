#pragma once

// Batch verification driver: runs the selected suites for one twist /
// subspace pair (or the whole built-in gallery), collects per-check
// results into a deterministic JSON report and computes the exit code.
//
// Report layout: { "schema": 1, "payload": {...}, "timing": {...} }.
// The payload is byte-stable for a fixed config and seed; wall-clock data
// lives only under "timing" and is excluded from determinism comparisons.

#include <string>

#include <json.hpp>

#include "twistlab/config.hpp"

namespace twistlab {

struct RunReport {
  nlohmann::ordered_json document;
  int exit_code = 0;
  std::string human_summary;

  std::string payload_bytes() const { return document.at("payload").dump(); }
};

RunReport run(const RunConfig& cfg);

/// Gallery member descriptor used for the built-in battery and `demo`.
struct GalleryEntry {
  std::string label;
  RunConfig config;
};

/// All built-in gallery members with their canonical subspaces and expected
/// outcomes.
std::vector<GalleryEntry> builtin_gallery(int fock_levels = 4);

/// Runs every gallery member; check names are prefixed with the member
/// label.
RunReport run_gallery(unsigned long long seed, int fock_levels = 4);

/// Writes ready-to-run spec files for every gallery member plus the
/// all-member config into `dir`.  Deterministic output.
void write_demo_specs(const std::string& dir);

}  // namespace twistlab
