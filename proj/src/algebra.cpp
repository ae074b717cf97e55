#include "nilharm/algebra.hpp"

#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "nilharm/exact.hpp"

namespace nilharm {

using json = nlohmann::json;

Rational NilpotentLieAlgebra::coef(int i, int j, int k) const {
  for (const auto& e : entries)
    if (e.i == i && e.j == j && e.k == k) return e.c;
  return 0;
}

Eigen::VectorXd NilpotentLieAlgebra::weights_d() const {
  Eigen::VectorXd w(dim);
  for (int j = 0; j < dim; ++j) w[j] = weights[j].get_d();
  return w;
}

MatQ NilpotentLieAlgebra::ad(const VecQ& u) const {
  MatQ a = MatQ::Zero(dim, dim);
  for (const auto& e : entries) a(e.k, e.j) += e.c * u[e.i];
  return a;
}

VecQ basis_vector(const NilpotentLieAlgebra& g, int i) {
  VecQ v = VecQ::Zero(g.dim);
  v[i] = 1;
  return v;
}

namespace {

std::string triple(int i, int j, int k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

// columns span g^{m+1} = [g, g^m]
MatQ next_lcs(const NilpotentLieAlgebra& g, const MatQ& span) {
  MatQ cols(g.dim, g.dim * span.cols());
  for (int i = 0; i < g.dim; ++i)
    for (Eigen::Index c = 0; c < span.cols(); ++c)
      cols.col(i * span.cols() + c) = bracket<Rational>(g, basis_vector(g, i), VecQ(span.col(c)));
  MatQ rows = row_basis(MatQ(cols.transpose()));
  return rows.transpose();
}

}  // namespace

NilpotentLieAlgebra make_algebra(int dim, std::vector<std::string> names, const std::vector<BracketSpec>& brackets,
                                 std::vector<Rational> weights, std::string label) {
  if (dim <= 0) fail(ErrorCode::ConfigError, "dim must be positive");
  if (names.empty())
    for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  if (int(names.size()) != dim) fail(ErrorCode::DimensionMismatch, "names length differs from dim");
  if (int(weights.size()) != dim) fail(ErrorCode::DimensionMismatch, "weights length differs from dim");

  NilpotentLieAlgebra g;
  g.dim = dim;
  g.names = std::move(names);
  g.weights = std::move(weights);
  g.label = std::move(label);

  std::map<std::tuple<int, int, int>, Rational> given;
  for (const auto& b : brackets) {
    int i = b.i - 1, j = b.j - 1, k = b.k - 1;
    if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
      fail(ErrorCode::ConfigError, "bracket index out of range " + triple(i, j, k));
    if (i == j && b.c != 0) fail(ErrorCode::AntisymmetryViolation, "c" + triple(i, j, k) + " != 0");
    auto key = std::make_tuple(i, j, k);
    auto it = given.find(key);
    if (it != given.end() && it->second != b.c)
      fail(ErrorCode::AntisymmetryViolation, "conflicting entries for c" + triple(i, j, k));
    given[key] = b.c;
  }
  std::map<std::tuple<int, int, int>, Rational> full = given;
  for (const auto& [key, c] : given) {
    auto [i, j, k] = key;
    auto mirror = std::make_tuple(j, i, k);
    auto it = given.find(mirror);
    if (it == given.end())
      full[mirror] = -c;
    else if (it->second != -c)
      fail(ErrorCode::AntisymmetryViolation,
           "c" + triple(i, j, k) + " = " + to_string(c) + " but c" + triple(j, i, k) + " = " + to_string(it->second));
  }
  for (const auto& [key, c] : full) {
    if (c == 0) continue;
    auto [i, j, k] = key;
    g.entries.push_back({i, j, k, c, c.get_d()});
  }

  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        VecQ a = basis_vector(g, i), b = basis_vector(g, j), c = basis_vector(g, k);
        VecQ jac = bracket<Rational>(g, a, bracket<Rational>(g, b, c)) +
                   bracket<Rational>(g, b, bracket<Rational>(g, c, a)) +
                   bracket<Rational>(g, c, bracket<Rational>(g, a, b));
        for (int m = 0; m < dim; ++m)
          if (jac[m] != 0) fail(ErrorCode::JacobiViolation, "Jacobi identity fails on basis triple " + triple(i, j, k));
      }

  MatQ span = MatQ::Identity(dim, dim);
  int step = 0;
  while (span.cols() > 0) {
    MatQ nxt = next_lcs(g, span);
    ++step;
    if (nxt.cols() == span.cols()) fail(ErrorCode::NotNilpotent, "lower central series does not terminate");
    span = nxt;
  }
  g.step = step;
  if (g.step > 5)
    fail(ErrorCode::StepTooLarge, "nilpotency step " + std::to_string(g.step) + " exceeds the tabulated BCH order 5");

  for (const auto& w : g.weights)
    if (w <= 0) fail(ErrorCode::DilationIncompatible, "dilation weights must be positive");
  for (const auto& e : g.entries)
    if (g.weights[e.i] + g.weights[e.j] != g.weights[e.k])
      fail(ErrorCode::DilationIncompatible, "weight of e_" + std::to_string(e.k + 1) + " is not the sum for bracket " +
                                                triple(e.i, e.j, e.k));
  // span{e_1..e_m} is an ideal for every m  <=>  c(i,j,k) != 0 implies k <= min(i,j)
  for (const auto& e : g.entries)
    if (e.k > std::min(e.i, e.j))
      fail(ErrorCode::BadOrder, "span{e_1..e_" + std::to_string(std::min(e.i, e.j) + 1) +
                                    "} is not an ideal: bracket " + triple(e.i, e.j, e.k));

  g.center_dim = int(compute_center(g).size());
  return g;
}

namespace {

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return parse_rational(os.str());
  }
  fail(ErrorCode::ConfigError, "expected a rational, got " + v.dump());
}

}  // namespace

NilpotentLieAlgebra load_algebra(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, std::string("algebra spec: ") + e.what());
  }
  if (!j.contains("dim") || !j.contains("weights")) fail(ErrorCode::ConfigError, "algebra spec needs dim and weights");
  int dim = j["dim"].get<int>();
  std::vector<std::string> names;
  if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
  std::vector<BracketSpec> br;
  if (j.contains("brackets"))
    for (const auto& b : j["brackets"]) {
      if (!b.is_array() || b.size() != 4) fail(ErrorCode::ConfigError, "bracket entries are [i, j, k, value]");
      br.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), json_rational(b[3])});
    }
  std::vector<Rational> w;
  for (const auto& x : j["weights"]) w.push_back(json_rational(x));
  return make_algebra(dim, names, br, w, j.value("label", ""));
}

NilpotentLieAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IOError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_algebra(ss.str());
}

std::string algebra_to_json(const NilpotentLieAlgebra& g) {
  json j;
  j["dim"] = g.dim;
  j["names"] = g.names;
  json br = json::array();
  for (const auto& e : g.entries)
    if (e.i < e.j) br.push_back({e.i + 1, e.j + 1, e.k + 1, to_string(e.c)});
  j["brackets"] = br;
  json w = json::array();
  for (const auto& x : g.weights) w.push_back(to_string(x));
  j["weights"] = w;
  if (!g.label.empty()) j["label"] = g.label;
  return j.dump(2);
}

NilpotentLieAlgebra heisenberg_algebra(int n) {
  std::vector<std::string> names{"Z"};
  for (int i = 1; i <= n; ++i) names.push_back(n == 1 ? "Y" : "Y" + std::to_string(i));
  for (int i = 1; i <= n; ++i) names.push_back(n == 1 ? "X" : "X" + std::to_string(i));
  std::vector<BracketSpec> br;
  for (int i = 0; i < n; ++i) br.push_back({2 + n + i, 2 + i, 1, 1});
  std::vector<Rational> w(2 * n + 1, 1);
  w[0] = 2;
  return make_algebra(2 * n + 1, names, br, w, "H" + std::to_string(n));
}

Rational homogeneous_dimension(const NilpotentLieAlgebra& g) {
  Rational q = 0;
  for (const auto& w : g.weights) q += w;
  return q;
}

std::vector<VecQ> compute_center(const NilpotentLieAlgebra& g) {
  // u in centre iff [u, e_j] = 0 for all j: rows indexed (j, k), column i carries c(i, j, k)
  MatQ a = MatQ::Zero(g.dim * g.dim, g.dim);
  for (const auto& e : g.entries) a(e.j * g.dim + e.k, e.i) += e.c;
  MatQ ns = nullspace(a);
  std::vector<VecQ> basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) basis.push_back(ns.col(c));
  return basis;
}

}  // namespace nilharm
