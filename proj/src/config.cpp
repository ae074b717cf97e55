#include "nilharm/config.hpp"

#include <filesystem>
#include <nlohmann/json.hpp>

#include "nilharm/expr.hpp"
#include "nilharm/io.hpp"

namespace nilharm {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::map<std::string, double> default_tolerances() {
  return {{"rep_homomorphism", 1e-6}, {"rep_unitarity", 1e-8}, {"calibration", 1e-5},  {"trace_identity", 1e-5},
          {"weyl_oracle", 1e-5},      {"oracle", 1e-5},        {"plancherel", 1e-4},   {"inversion", 1e-4},
          {"kn_identity", 1e-4},      {"kn_multiplication", 1e-10}, {"symbol_locality", 1e-6},
          {"kn_roundtrip", 1e-3},     {"character", 1e-3},     {"tail", 1e-4},         {"moments", 1e-8},
          {"euclidean_ft", 1e-8}};
}

double RunConfig::tolerance(const std::string& name) const {
  auto it = tol.find(name);
  if (it == tol.end()) fail(ErrorCode::ConfigError, "unknown tolerance '" + name + "'");
  return it->second;
}

namespace {

std::string rational_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return json(v.get<double>()).dump();
  fail(ErrorCode::ConfigError, "expected a rational number, got " + v.dump());
}

GridSpec grid_entry(const json& j) {
  auto L = j.at("L");
  auto N = j.at("N");
  if (L.is_array() != N.is_array()) {
    // broadcast the scalar one
    size_t d = L.is_array() ? L.size() : N.size();
    std::vector<double> l = L.is_array() ? L.get<std::vector<double>>() : std::vector<double>(d, L.get<double>());
    std::vector<int> n = N.is_array() ? N.get<std::vector<int>>() : std::vector<int>(d, N.get<int>());
    return GridSpec(l, n);
  }
  if (L.is_array()) return GridSpec(L.get<std::vector<double>>(), N.get<std::vector<int>>());
  return GridSpec({L.get<double>()}, {N.get<int>()});
}

GridSpec fit(const GridSpec& g, int dims, const char* what) {
  if (g.dims() == dims) return g;
  if (g.dims() == 1) return GridSpec(std::vector<double>(dims, g.L[0]), std::vector<int>(dims, g.N[0]));
  fail(ErrorCode::ConfigError, std::string(what) + " grid has the wrong number of axes");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t p; (p = s.find(sep, start)) != std::string::npos; start = p + 1) out.push_back(s.substr(start, p - start));
  out.push_back(s.substr(start));
  return out;
}

Polynomial polynomial_from(const json& j) {
  Polynomial p;
  for (const auto& m : j)
    p.terms.push_back(Monomial{m.at("c").get<double>(), m.value("x", std::vector<int>{}), m.value("t", std::vector<int>{})});
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  try {
    json j = json::parse(text);
    if (!j.is_object()) fail(ErrorCode::ConfigError, "config must be a JSON object");
    static const std::vector<std::string> keys = {"algebra", "functional", "realization", "grids", "lambda", "star",
                                                  "tolerances", "function", "operator", "out"};
    for (auto it = j.begin(); it != j.end(); ++it)
      if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
        fail(ErrorCode::ConfigError, "unknown config key '" + it.key() + "'");
    const json& a = j.at("algebra");
    if (a.is_string()) {
      fs::path p = fs::path(base_dir) / a.get<std::string>();
      if (!fs::exists(p)) fail(ErrorCode::ConfigError, "algebra file " + p.string() + " does not exist");
      c.algebra_text = read_text(p.string());
    } else {
      c.algebra_text = a.dump();
    }
    if (j.contains("functional"))
      for (const auto& v : j["functional"]) c.functional.push_back(rational_text(v));
    if (j.contains("realization")) c.realization_text = j["realization"].dump();
    if (j.contains("grids")) {
      const json& g = j["grids"];
      for (auto it = g.begin(); it != g.end(); ++it) {
        GridSpec s = grid_entry(it.value());
        if (it.key() == "rep") c.rep_grid = s;
        else if (it.key() == "group") c.group_grid = s;
        else if (it.key() == "zdual") c.zdual_grid = s;
        else if (it.key() == "omega") c.omega_grid = s;
        else if (it.key() == "symbol_x") c.symbol_x_grid = s;
        else fail(ErrorCode::ConfigError, "unknown grid '" + it.key() + "'");
      }
    }
    if (j.contains("lambda")) {
      c.lambda_Y = j["lambda"].value("Y", c.lambda_Y);
      c.lambda_nodes = j["lambda"].value("nodes_per_half_line", c.lambda_nodes);
      if (!(c.lambda_Y > 0) || c.lambda_nodes < 1) fail(ErrorCode::ConfigError, "lambda grid needs Y > 0 and nodes >= 1");
    }
    if (j.contains("star")) {
      c.star_r = j["star"].value("r", c.star_r);
      c.star_m = j["star"].value("m", c.star_m);
    }
    if (j.contains("tolerances"))
      for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
        apply_tolerance_override(c, it.key() + "=" + it.value().dump());
    if (j.contains("function")) {
      const json& f = j["function"];
      if (f.is_string()) c.function_expr = f.get<std::string>();
      else if (f.contains("file")) c.function_file = (fs::path(base_dir) / f["file"].get<std::string>()).string();
      else c.function_expr = f.at("expr").get<std::string>();
    }
    if (j.contains("operator")) {
      const json& o = j["operator"];
      if (o.is_string()) c.operator_spec = {o.get<std::string>()};
      else c.operator_spec = o.get<std::vector<std::string>>();
    }
    if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  if (!fs::exists(path)) fail(ErrorCode::ConfigError, "config " + path + " does not exist");
  RunConfig c = parse_config(read_text(path), fs::path(path).parent_path().string().empty() ? "." : fs::path(path).parent_path().string());
  c.source = path;
  return c;
}

void apply_tolerance_override(RunConfig& c, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) fail(ErrorCode::ConfigError, "tolerance override must read name=value");
  std::string name = assignment.substr(0, eq);
  if (!c.tol.count(name)) fail(ErrorCode::ConfigError, "unknown tolerance '" + name + "'");
  double v;
  try {
    v = std::stod(assignment.substr(eq + 1));
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigError, "tolerance '" + name + "' is not a number");
  }
  if (!(v > 0)) fail(ErrorCode::ConfigError, "tolerance '" + name + "' must be positive");
  c.tol[name] = v;
}

NilpotentLieAlgebra config_algebra(const RunConfig& c) { return load_algebra(c.algebra_text); }

VecQ config_functional(const RunConfig& c, const NilpotentLieAlgebra& g) {
  if (c.functional.empty()) return basis_vector(g, 0);
  check_dim(g, Eigen::Index(c.functional.size()), "functional");
  VecQ v(g.dim);
  for (int i = 0; i < g.dim; ++i) v[i] = parse_rational(c.functional[i]);
  return v;
}

GridSpec config_rep_grid(const RunConfig& c, int n) {
  return c.rep_grid ? fit(*c.rep_grid, n, "rep") : GridSpec::uniform(n, 8, n == 1 ? 128 : 32);
}

GridSpec config_group_grid(const RunConfig& c, int dim) {
  if (c.group_grid) return fit(*c.group_grid, dim, "group");
  std::vector<double> L(dim, 3.6);
  std::vector<int> N(dim, 160);
  L[0] = 12;
  N[0] = 128;
  return GridSpec(L, N);
}

GridSpec config_zdual_grid(const RunConfig& c, int dim) {
  return c.zdual_grid ? fit(*c.zdual_grid, dim - 1, "zdual") : GridSpec::uniform(dim - 1, 4, 96);
}

GridSpec config_omega_grid(const RunConfig& c, int dim) {
  return c.omega_grid ? fit(*c.omega_grid, dim - 1, "omega") : GridSpec::uniform(dim - 1, 6, 160);
}

GridSpec config_symbol_x_grid(const RunConfig& c, int dim) {
  return c.symbol_x_grid ? fit(*c.symbol_x_grid, dim, "symbol_x") : GridSpec::uniform(dim, 0.8, 2);
}

FlatRepSpec config_rep(const RunConfig& c, const NilpotentLieAlgebra& g) {
  FlatOrbitData orbit = flat_orbit_data(g, config_functional(c, g));
  const int n = int(orbit.jumps.size()) / 2;
  const double tol = c.tolerance("rep_homomorphism");
  if (c.realization_text.empty()) return heisenberg_rep(g, orbit, config_rep_grid(c, n));
  try {
    json r = json::parse(c.realization_text);
    const std::string type = r.value("type", "heisenberg");
    if (type == "heisenberg") return heisenberg_rep(g, orbit, config_rep_grid(c, n));
    if (type != "polynomial") fail(ErrorCode::ConfigError, "unknown realization type '" + type + "'");
    std::vector<Polynomial> action, cocycle;
    for (const auto& p : r.at("action")) action.push_back(polynomial_from(p));
    for (const auto& p : r.at("cocycle")) cocycle.push_back(polynomial_from(p));
    auto xi = r.at("xi").get<std::vector<double>>();
    Realization real = polynomial_realization(g, action, cocycle, Eigen::Map<Eigen::VectorXd>(xi.data(), Eigen::Index(xi.size())));
    return make_rep(g, orbit, real, config_rep_grid(c, real.n), tol);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("realization: ") + e.what());
  }
}

QuantSpec config_quant(const RunConfig& c, const NilpotentLieAlgebra& g) {
  QuantSpec q = make_quant_spec(config_rep(c, g), config_zdual_grid(c, g.dim), config_omega_grid(c, g.dim));
  q.tail_tol = c.tolerance("tail");
  return q;
}

std::vector<std::string> coordinate_names(const NilpotentLieAlgebra& g) {
  std::vector<std::string> names;
  for (int i = 0; i < g.dim; ++i) {
    std::string s = g.names[i];
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
    names.push_back(s);
  }
  for (int i = 0; i < g.dim; ++i) {
    std::string s = "x" + std::to_string(i + 1);
    // an explicit basis name wins over the positional alias
    if (std::find(names.begin(), names.begin() + g.dim, s) == names.begin() + g.dim) names.push_back(s);
    else names.push_back("_unused" + std::to_string(i));
  }
  return names;
}

SampledFunction config_function(const RunConfig& c, const NilpotentLieAlgebra& g, const std::string& override_file) {
  const std::string file = override_file.empty() ? c.function_file : override_file;
  if (!file.empty()) {
    SampledFunction f = load_function(file);
    if (f.grid.dims() != g.dim) fail(ErrorCode::GridMismatch, "input function grid does not match the group");
    return f;
  }
  if (c.function_expr.empty()) fail(ErrorCode::ConfigError, "no input function (config 'function' or --input)");
  auto names = coordinate_names(g);
  PointFunction f = compile_expression(c.function_expr, names);
  const int d = g.dim;
  return sample([f, d](const Eigen::VectorXd& x) {
    Eigen::VectorXd v(2 * d);
    v << x, x;
    return f(v);
  }, config_group_grid(c, g.dim));
}

Operator parse_operator(const std::vector<std::string>& spec, const NilpotentLieAlgebra& g) {
  if (spec.empty()) fail(ErrorCode::BadOperatorSpec, "empty operator spec");
  std::vector<Operator> ops;
  auto names = coordinate_names(g);
  const int d = g.dim;
  for (const auto& s : spec) {
    auto colon = s.find(':');
    std::string head = s.substr(0, colon), body = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "identity" && colon == std::string::npos) {
      ops.push_back(identity_operator());
    } else if (head == "multiplication") {
      PointFunction m;
      try {
        m = compile_expression(body, names);
      } catch (const Error& e) {
        fail(ErrorCode::BadOperatorSpec, e.what());
      }
      ops.push_back(multiplication_operator([m, d](const Eigen::VectorXd& x) {
        Eigen::VectorXd v(2 * d);
        v << x, x;
        return m(v);
      }, s));
    } else if (head == "left-invariant") {
      auto parts = split(body, ',');
      if (int(parts.size()) != d) fail(ErrorCode::BadOperatorSpec, "left-invariant direction needs " + std::to_string(d) + " components");
      Eigen::VectorXd v(d);
      for (int i = 0; i < d; ++i) {
        try {
          v[i] = to_double(parse_rational(parts[i]));
        } catch (const Error&) {
          fail(ErrorCode::BadOperatorSpec, "bad component '" + parts[i] + "'");
        }
      }
      Operator A = left_invariant_operator(g, v, 1e-2);
      A.name = s;
      ops.push_back(A);
    } else {
      fail(ErrorCode::BadOperatorSpec, "cannot parse operator '" + s + "'");
    }
  }
  return compose(ops);
}

}  // namespace nilharm
