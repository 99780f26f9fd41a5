#pragma once

// Minimal TOML reader covering the subset used by run configs and twist /
// subspace spec files: comments, [table] and [dotted.table] headers,
// key = value with strings, integers, floats, booleans, and flat arrays.
// Parses into a JSON document so config handling is format-agnostic.  Not
// covered: inline tables, arrays of tables, multi-line strings, dates.

#include <string>

#include <json.hpp>

namespace twistlab {

/// Throws std::runtime_error with a line number on malformed input.
nlohmann::json toml_parse(const std::string& text);

nlohmann::json toml_load(const std::string& path);

}  // namespace twistlab
