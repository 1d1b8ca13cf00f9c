#include "conetrace/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace conetrace {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, path + ": " + msg);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true/false");
  return j.get<bool>();
}

cplx complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  fail(path, "expected a number or [re, im]");
}

std::vector<cplx> complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<cplx> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_value(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

template <class T, class F>
void opt_get(const json& j, const char* key, const std::string& path, T& out, F conv) {
  if (j.contains(key)) out = conv(j.at(key), path + "." + key);
}

DomainChoice parse_domain(const json& j, const std::string& path) {
  DomainChoice d;
  if (j.is_string()) {
    d.preset = j.get<std::string>();
    d.label = d.preset;
  } else {
    only_keys(j, path, {"preset", "label", "columns"});
    if (j.contains("preset")) {
      if (!j["preset"].is_string()) fail(path + ".preset", "expected a string");
      d.preset = j["preset"].get<std::string>();
    }
    if (j.contains("columns")) {
      if (!d.preset.empty()) fail(path, "give either a preset or columns, not both");
      if (!j["columns"].is_array()) fail(path + ".columns", "expected an array of columns");
      for (std::size_t c = 0; c < j["columns"].size(); ++c)
        d.columns.push_back(complex_list(j["columns"][c], path + ".columns[" + std::to_string(c) + "]"));
    } else if (d.preset.empty()) {
      fail(path, "needs a preset or columns");
    }
    d.label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>()
                                                              : (d.preset.empty() ? "custom" : d.preset);
  }
  if (!d.preset.empty() && d.preset != "min" && d.preset != "max" && d.preset != "friedrichs")
    fail(path, "unknown preset '" + d.preset + "' (min, max, friedrichs)");
  return d;
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<int> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

std::vector<double> num_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(num(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

}  // namespace

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

AnalysisConfig parse_config(const json& j) {
  AnalysisConfig c;
  only_keys(j, "$", {"operator", "domain", "domains", "sector", "ray", "numerics", "fit", "heat", "output"});
  if (!j.contains("operator")) fail("$", "missing operator block");

  const json& op = j["operator"];
  only_keys(op, "$.operator", {"m", "depth", "coeffs", "bc"});
  if (!op.contains("m")) fail("$.operator", "missing m");
  c.m = integer(op["m"], "$.operator.m");
  if (c.m < 1) fail("$.operator.m", "order must be positive");
  if (!op.contains("coeffs") || !op["coeffs"].is_array()) fail("$.operator.coeffs", "expected a [k][nu] table");
  const json& tab = op["coeffs"];
  if (static_cast<int>(tab.size()) != c.m + 1)
    fail("$.operator.coeffs", "needs m+1 = " + std::to_string(c.m + 1) + " rows, got " + std::to_string(tab.size()));
  for (std::size_t k = 0; k < tab.size(); ++k)
    c.coeffs.push_back(complex_list(tab[k], "$.operator.coeffs[" + std::to_string(k) + "]"));
  if (op.contains("depth")) {
    const int depth = integer(op["depth"], "$.operator.depth");
    if (depth < 0) fail("$.operator.depth", "must be non-negative");
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
      if (static_cast<int>(c.coeffs[k].size()) > depth + 1)
        fail("$.operator.coeffs[" + std::to_string(k) + "]", "longer than depth + 1");
      c.coeffs[k].resize(depth + 1, 0.0);
    }
  }
  if (op.contains("bc")) {
    if (!op["bc"].is_array()) fail("$.operator.bc", "expected an array of rows");
    std::vector<std::vector<cplx>> rows;
    for (std::size_t r = 0; r < op["bc"].size(); ++r) {
      rows.push_back(complex_list(op["bc"][r], "$.operator.bc[" + std::to_string(r) + "]"));
      if (static_cast<int>(rows.back().size()) != c.m) fail("$.operator.bc[" + std::to_string(r) + "]", "row must have m entries");
    }
    c.bc = rows;
  }

  if (j.contains("domain") && j.contains("domains")) fail("$", "give either domain or domains");
  if (j.contains("domain")) c.domains.push_back(parse_domain(j["domain"], "$.domain"));
  if (j.contains("domains")) {
    if (!j["domains"].is_array()) fail("$.domains", "expected an array");
    for (std::size_t i = 0; i < j["domains"].size(); ++i)
      c.domains.push_back(parse_domain(j["domains"][i], "$.domains[" + std::to_string(i) + "]"));
  }

  if (j.contains("sector")) {
    const json& s = j["sector"];
    only_keys(s, "$.sector", {"theta0_deg", "halfwidth_deg"});
    double th = 180.0, hw = 45.0;
    opt_get(s, "theta0_deg", "$.sector", th, num);
    opt_get(s, "halfwidth_deg", "$.sector", hw, num);
    if (hw < 0 || hw >= 180) fail("$.sector.halfwidth_deg", "must lie in [0, 180)");
    c.sector = {th * kPi / 180.0, hw * kPi / 180.0};
  }
  if (j.contains("ray")) {
    const json& r = j["ray"];
    only_keys(r, "$.ray", {"r_min", "r_max", "points", "ell", "phi"});
    opt_get(r, "r_min", "$.ray", c.ray.r_min, num);
    opt_get(r, "r_max", "$.ray", c.ray.r_max, num);
    opt_get(r, "points", "$.ray", c.ray.points, integer);
    opt_get(r, "ell", "$.ray", c.ray.ell, integer);
    opt_get(r, "phi", "$.ray", c.ray.phi, complex_list);
    if (!(c.ray.r_min > 0 && c.ray.r_max > c.ray.r_min)) fail("$.ray", "need 0 < r_min < r_max");
    if (c.ray.points < 2) fail("$.ray.points", "need at least 2 points");
    if (c.ray.ell < 1) fail("$.ray.ell", "must be ≥ 1");
  }
  if (j.contains("numerics")) {
    const json& n = j["numerics"];
    only_keys(n, "$.numerics", {"x_match", "series_order", "rel_tol", "quad_tol", "quad_panels", "gauss_nodes", "rank_tol"});
    opt_get(n, "x_match", "$.numerics", c.numerics.x_match, num);
    opt_get(n, "series_order", "$.numerics", c.numerics.series_order, integer);
    opt_get(n, "rel_tol", "$.numerics", c.numerics.rel_tol, num);
    opt_get(n, "quad_tol", "$.numerics", c.numerics.quad_tol, num);
    opt_get(n, "quad_panels", "$.numerics", c.numerics.quad_panels, integer);
    opt_get(n, "gauss_nodes", "$.numerics", c.numerics.gauss_nodes, integer);
    opt_get(n, "rank_tol", "$.numerics", c.numerics.rank_tol, num);
    if (!(c.numerics.x_match > 0 && c.numerics.x_match < 1)) fail("$.numerics.x_match", "must lie in (0, 1)");
    if (c.numerics.quad_panels < 1) fail("$.numerics.quad_panels", "must be ≥ 1");
    if (c.numerics.gauss_nodes < 4) fail("$.numerics.gauss_nodes", "must be ≥ 4");
  }
  if (j.contains("fit")) {
    const json& f = j["fit"];
    only_keys(f, "$.fit", {"J", "log_caps", "r_min", "peel", "detect_threshold", "condition_limit"});
    opt_get(f, "J", "$.fit", c.fit.J, integer);
    opt_get(f, "log_caps", "$.fit", c.fit.log_caps, int_list);
    opt_get(f, "r_min", "$.fit", c.fit.r_min, num);
    opt_get(f, "peel", "$.fit", c.fit.peel, boolean);
    opt_get(f, "detect_threshold", "$.fit", c.fit.detect_threshold, num);
    opt_get(f, "condition_limit", "$.fit", c.fit.condition_limit, num);
    if (c.fit.J < 0) fail("$.fit.J", "must be ≥ 0");
  }
  if (j.contains("heat")) {
    const json& h = j["heat"];
    only_keys(h, "$.heat", {"eigenvalues", "lambda_min", "t_min", "t_max", "points", "J", "log_caps", "probes", "s_grid", "residue_tol"});
    opt_get(h, "eigenvalues", "$.heat", c.heat.eigenvalues, integer);
    opt_get(h, "lambda_min", "$.heat", c.heat.lambda_min, num);
    opt_get(h, "t_min", "$.heat", c.heat.t_min, num);
    opt_get(h, "t_max", "$.heat", c.heat.t_max, num);
    opt_get(h, "points", "$.heat", c.heat.points, integer);
    opt_get(h, "J", "$.heat", c.heat.J, integer);
    opt_get(h, "log_caps", "$.heat", c.heat.log_caps, int_list);
    opt_get(h, "probes", "$.heat", c.heat.probes, num_list);
    opt_get(h, "s_grid", "$.heat", c.heat.s_grid, num_list);
    opt_get(h, "residue_tol", "$.heat", c.heat.residue_tol, num);
    if (c.heat.eigenvalues < 20) fail("$.heat.eigenvalues", "need at least 20 eigenvalues for the Weyl tail");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, "$.output", {"dir", "plot"});
    if (o.contains("dir")) {
      if (!o["dir"].is_string()) fail("$.output.dir", "expected a string");
      c.output.dir = o["dir"].get<std::string>();
    }
    opt_get(o, "plot", "$.output", c.output.plot, boolean);
  }
  c.canonical = j.dump();
  c.hash = fnv1a(c.canonical);
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

ConeOperator build_operator(const AnalysisConfig& c) {
  BoundaryCondition bc;
  if (c.bc) {
    bc.rows = CMatrix(c.bc->size(), c.m);
    for (std::size_t r = 0; r < c.bc->size(); ++r)
      for (int k = 0; k < c.m; ++k) bc.rows(r, k) = (*c.bc)[r][k];
  }
  try {
    return build_operator(c.m, c.coeffs, bc);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, std::string("$.operator: ") + e.what());
  }
}

DomainSpec resolve_domain(const ConeOperator& a, const DomainChoice& d) {
  if (d.preset == "min") return minimal_domain(a);
  if (d.preset == "max") return maximal_domain(a);
  if (d.preset == "friedrichs") return friedrichs_domain(a);
  const int dim = max_domain_dimension(a);
  CMatrix W(dim, static_cast<int>(d.columns.size()));
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    if (static_cast<int>(d.columns[c].size()) != dim)
      throw Error(ErrorCode::ConfigError, "domain '" + d.label + "': columns need d = " + std::to_string(dim) + " entries");
    for (int r = 0; r < dim; ++r) W(r, c) = d.columns[c][r];
  }
  try {
    return make_domain(a, W, d.label);
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, "domain '" + d.label + "': " + e.what());
  }
}

EngineOptions engine_options(const AnalysisConfig& c) {
  EngineOptions e;
  e.frobenius.x_match = c.numerics.x_match;
  e.frobenius.series_order = c.numerics.series_order;
  e.ode_rel_tol = c.numerics.rel_tol;
  return e;
}

TraceOptions trace_options(const AnalysisConfig& c) {
  TraceOptions t;
  t.engine = engine_options(c);
  t.quad_rel_tol = c.numerics.quad_tol;
  t.gauss_nodes = c.numerics.gauss_nodes;
  t.check_nodes = std::max(4, c.numerics.gauss_nodes * 3 / 4);
  t.panels.gamma = 1.0 / c.numerics.quad_panels;
  return t;
}

Polynomial phi_polynomial(const AnalysisConfig& c) { return Polynomial(c.ray.phi); }

std::string config_help() {
  return R"(Config file (JSON). Unknown keys are rejected. Complex numbers are a number or [re, im].
  operator.m              order m (required)
  operator.coeffs         table [k][nu] of a_k(x) = sum_nu a[k][nu] x^nu, k = 0..m (required)
  operator.depth          pad/limit the table to nu <= depth (optional)
  operator.bc             rows of functionals on (u(1), u'(1), ..., u^(m-1)(1)); default Dirichlet, m even
  domain | domains        preset "min" | "max" | "friedrichs", or {"label", "columns": [[...], ...]}
  sector.theta0_deg       180       sector.halfwidth_deg   45
  ray.r_min 10  ray.r_max 1e5  ray.points 40  ray.ell 1  ray.phi [1]  (coefficients of phi in x)
  numerics.x_match 0.1  numerics.series_order 40  numerics.rel_tol 1e-12  numerics.quad_tol 1e-9
  numerics.quad_panels 1 (panels per |lambda|^(-1/m) near x=1)  numerics.gauss_nodes 16  numerics.rank_tol 1e-8
  fit.J 4  fit.log_caps [0,1]  fit.r_min 300  fit.peel false  fit.detect_threshold 10  fit.condition_limit 1e12
  heat.eigenvalues 60  heat.lambda_min -100  heat.t_min 1e-3  heat.t_max 3e-2  heat.points 30  heat.J 4  heat.log_caps []
  heat.probes [] (default: one off-lattice power)  heat.s_grid [1, 0.75, 0.25, 0, -0.5]  heat.residue_tol 1e-3
  output.dir "."  output.plot false)";
}

}  // namespace conetrace
