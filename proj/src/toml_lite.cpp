#include "twistlab/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace twistlab {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::runtime_error("toml: line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// strips a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

nlohmann::json parse_scalar(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (v.empty()) fail(line, "empty value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(line, "unterminated string");
    std::string out;
    for (size_t i = 1; i + 1 < v.size(); ++i) {
      if (v[i] == '\\' && i + 2 < v.size() + 1) {
        ++i;
        switch (v[i]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(line, "unsupported escape");
        }
      } else {
        out += v[i];
      }
    }
    return out;
  }
  if (v == "true") return true;
  if (v == "false") return false;
  // number: integer when it looks integral, double otherwise
  try {
    size_t used = 0;
    if (v.find_first_of(".eEinf") == std::string::npos) {
      long long n = std::stoll(v, &used);
      if (used == v.size()) return n;
    }
    used = 0;
    double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
    // fall through
  }
  fail(line, "cannot parse value '" + v + "'");
}

nlohmann::json parse_value(const std::string& raw, int line) {
  const std::string v = trim(raw);
  if (!v.empty() && v.front() == '[') {
    if (v.back() != ']') fail(line, "unterminated array");
    auto arr = nlohmann::json::array();
    std::string body = v.substr(1, v.size() - 2);
    std::string item;
    bool in_str = false;
    int depth = 0;
    for (char c : body) {
      if (c == '"') in_str = !in_str;
      if (!in_str && c == '[') ++depth;
      if (!in_str && c == ']') --depth;
      if (c == ',' && !in_str && depth == 0) {
        if (!trim(item).empty()) arr.push_back(parse_value(item, line));
        item.clear();
      } else {
        item += c;
      }
    }
    if (!trim(item).empty()) arr.push_back(parse_value(item, line));
    return arr;
  }
  return parse_scalar(v, line);
}

std::vector<std::string> split_key_path(const std::string& s, int line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == '.') {
      if (trim(cur).empty()) fail(line, "empty key segment");
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (trim(cur).empty()) fail(line, "empty key segment");
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace

nlohmann::json toml_parse(const std::string& text) {
  nlohmann::json root = nlohmann::json::object();
  nlohmann::json* table = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(strip_comment(line));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(lineno, "unterminated table header");
      const auto path = split_key_path(s.substr(1, s.size() - 2), lineno);
      table = &root;
      for (const auto& part : path) table = &((*table)[part]);
      if (!table->is_object() && !table->is_null()) fail(lineno, "table redefines a value");
      if (table->is_null()) *table = nlohmann::json::object();
      continue;
    }
    const size_t eq = s.find('=');
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"')
      key = key.substr(1, key.size() - 2);
    if (key.empty()) fail(lineno, "empty key");
    (*table)[key] = parse_value(s.substr(eq + 1), lineno);
  }
  return root;
}

nlohmann::json toml_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("toml: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return toml_parse(ss.str());
}

}  // namespace twistlab
