#include "twistlab/config.hpp"

#include <fstream>
#include <sstream>

#include "twistlab/toml_lite.hpp"

namespace twistlab {

namespace {

Mat diag_from(const std::vector<double>& entries) {
  Mat m = Mat::Zero(entries.size(), entries.size());
  for (size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

Mat axis_projection(int d, int axis) {
  if (axis < 1 || axis > d)
    throw std::invalid_argument("twist spec: projection axis out of range");
  Mat p = Mat::Zero(d, d);
  p(axis - 1, axis - 1) = 1.0;
  return p;
}

}  // namespace

Twist TwistSpec::build() const {
  if (kind == "matrix") {
    if (matrix_file.empty())
      throw std::invalid_argument("twist spec: kind 'matrix' needs matrix_file");
    Mat m = load_matrix(matrix_file);
    const double root = std::sqrt(double(m.rows()));
    const int dd = int(root + 0.5);
    if (Eigen::Index(dd) * dd != m.rows())
      throw std::invalid_argument("twist spec: matrix is not d^2 x d^2");
    return Twist(dd, std::move(m));
  }
  if (kind != "gallery")
    throw std::invalid_argument("twist spec: unknown kind '" + kind + "'");
  GalleryParams params;
  params.q = q;
  if (a_diag) params.a = diag_from(*a_diag);
  if (b_diag) params.b = diag_from(*b_diag);
  if (name == "proj_pair") {
    params.a = axis_projection(d, e_axis.value_or(1));
    params.b = axis_projection(d, etilde_axis.value_or(2));
  }
  return gallery(name, d, params);
}

StandardSubspace SubspaceSpec::build() const {
  if (int(delta_eigenvalues.size()) != dim)
    throw std::invalid_argument("subspace spec: need one delta eigenvalue per dimension");
  PositiveSpectral delta;
  if (delta_basis == "identity") {
    RVec evs(dim);
    for (int i = 0; i < dim; ++i) evs[i] = delta_eigenvalues[i];
    delta = PositiveSpectral::from_diagonal(evs);
  } else {
    Mat u = load_matrix(delta_basis);
    RVec evs(dim);
    for (int i = 0; i < dim; ++i) evs[i] = delta_eigenvalues[i];
    delta.eigenvalues = evs;
    delta.eigenbasis = u;
  }
  AntilinearMap j;
  if (j_kind == "conjugation") {
    j.u = Mat::Identity(dim, dim);
  } else if (j_kind == "swap_conjugation") {
    j.u = Mat::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) j.u(i, dim - 1 - i) = 1.0;
  } else if (j_kind == "matrix") {
    j.u = load_matrix(j_matrix_file);
  } else {
    throw std::invalid_argument("subspace spec: unknown j kind '" + j_kind + "'");
  }
  return make_standard(delta, j);
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig cfg;
  const auto get_or = [&](const nlohmann::json& obj, const char* key,
                          auto fallback) -> decltype(fallback) {
    if (obj.contains(key)) return obj.at(key).get<decltype(fallback)>();
    return fallback;
  };

  if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
  else cfg.suites = {"all"};
  cfg.gallery_all = get_or(j, "gallery_all", false);
  cfg.seed = get_or(j, "seed", (unsigned long long)(7));
  cfg.out_path = get_or(j, "out", std::string());

  if (j.contains("cutoffs")) {
    const auto& c = j.at("cutoffs");
    cfg.n_max = get_or(c, "n_max", 5);
    cfg.fock_levels = get_or(c, "fock_levels", 4);
    cfg.max_degree = get_or(c, "max_degree", 3);
  }
  if (j.contains("tolerances")) cfg.tolerance = get_or(j.at("tolerances"), "default", 1e-8);

  if (!j.contains("twist")) {
    if (cfg.gallery_all) return cfg;
    throw std::invalid_argument("config: missing [twist]");
  }
  {
    const auto& t = j.at("twist");
    cfg.twist.kind = get_or(t, "kind", std::string("gallery"));
    cfg.twist.name = get_or(t, "name", std::string());
    cfg.twist.d = get_or(t, "d", 2);
    cfg.twist.matrix_file = get_or(t, "matrix_file", std::string());
    if (t.contains("params")) {
      const auto& p = t.at("params");
      cfg.twist.q = get_or(p, "q", 0.0);
      if (p.contains("a_diag"))
        cfg.twist.a_diag = p.at("a_diag").get<std::vector<double>>();
      if (p.contains("b_diag"))
        cfg.twist.b_diag = p.at("b_diag").get<std::vector<double>>();
      if (p.contains("e_axis")) cfg.twist.e_axis = p.at("e_axis").get<int>();
      if (p.contains("etilde_axis")) cfg.twist.etilde_axis = p.at("etilde_axis").get<int>();
    }
  }

  if (!j.contains("subspace")) throw std::invalid_argument("config: missing [subspace]");
  const auto parse_subspace = [&](const nlohmann::json& s) {
    SubspaceSpec spec;
    spec.dim = get_or(s, "dim", 2);
    spec.delta_eigenvalues = s.at("delta_eigenvalues").get<std::vector<double>>();
    spec.delta_basis = get_or(s, "delta_basis", std::string("identity"));
    if (s.contains("j")) {
      if (s.at("j").is_string()) {
        spec.j_kind = s.at("j").get<std::string>();
      } else {
        spec.j_kind = get_or(s.at("j"), "kind", std::string("swap_conjugation"));
        spec.j_matrix_file = get_or(s.at("j"), "matrix", std::string());
      }
    }
    return spec;
  };
  cfg.subspace = parse_subspace(j.at("subspace"));
  if (j.contains("subspace_k")) cfg.subspace_k = parse_subspace(j.at("subspace_k"));

  if (j.contains("expect")) {
    for (const auto& [name, value] : j.at("expect").items()) {
      Expectation e;
      e.must_fail = true;
      e.floor = value.is_number() ? value.get<double>() : 1e-3;
      cfg.expectations[name] = e;
    }
  }
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  // JSON documents start with '{'; everything else goes through the TOML
  // reader.
  const size_t first = text.find_first_not_of(" \t\r\n");
  nlohmann::json j;
  if (first != std::string::npos && text[first] == '{')
    j = nlohmann::json::parse(text);
  else
    j = toml_parse(text);
  return from_json(j);
}

nlohmann::ordered_json RunConfig::echo() const {
  nlohmann::ordered_json e;
  e["twist"] = {{"kind", twist.kind}, {"name", twist.name}, {"d", twist.d}};
  if (twist.q != 0.0) e["twist"]["q"] = twist.q;
  if (twist.a_diag) e["twist"]["a_diag"] = *twist.a_diag;
  if (twist.b_diag) e["twist"]["b_diag"] = *twist.b_diag;
  if (twist.e_axis) e["twist"]["e_axis"] = *twist.e_axis;
  if (twist.etilde_axis) e["twist"]["etilde_axis"] = *twist.etilde_axis;
  if (!twist.matrix_file.empty()) e["twist"]["matrix_file"] = twist.matrix_file;
  e["subspace"] = {{"dim", subspace.dim},
                   {"delta_eigenvalues", subspace.delta_eigenvalues},
                   {"j", subspace.j_kind}};
  if (subspace_k)
    e["subspace_k"] = {{"dim", subspace_k->dim},
                       {"delta_eigenvalues", subspace_k->delta_eigenvalues},
                       {"j", subspace_k->j_kind}};
  e["suites"] = suites;
  e["cutoffs"] = {{"n_max", n_max}, {"fock_levels", fock_levels}, {"max_degree", max_degree}};
  e["tolerance"] = tolerance;
  e["seed"] = seed;
  if (!expectations.empty()) {
    nlohmann::ordered_json ex;
    for (const auto& [name, exp] : expectations) ex[name] = exp.floor;
    e["expect"] = ex;
  }
  return e;
}

}  // namespace twistlab
