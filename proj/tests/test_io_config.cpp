#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <thread>

#include "fixtures.hpp"
#include "nilharm/config.hpp"
#include "nilharm/expr.hpp"
#include "nilharm/io.hpp"
#include "nilharm/parallel.hpp"

using namespace nilharm;
namespace fs = std::filesystem;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::NonFiniteValue;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("nilharm_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Eigen::VectorXd pt(std::initializer_list<double> v) {
  Eigen::VectorXd r(v.size());
  int i = 0;
  for (double x : v) r[i++] = x;
  return r;
}

RunConfig h1(const std::string& extra = "") {
  return parse_config(std::string(R"({"algebra":)") + fixtures::kHeisenberg + extra + "}");
}

}  // namespace

TEST(Expression, Evaluates) {
  auto f = compile_expression("1 + 2*x - y/4", {"x", "y"});
  EXPECT_NEAR(std::abs(f(pt({1.5, 2})) - cd(3.5)), 0, 1e-15);
  auto g = compile_expression("exp(i*pi) + x^2*(3 - 1)", {"x"});
  EXPECT_NEAR(std::abs(g(pt({3})) - cd(17)), 0, 1e-14);
  auto h = compile_expression("-x^2 + re(conj(2 + i)) + im(i*3) + abs(-2) + sqrt(4) + log(exp(1)) + sin(0) + cos(0)", {"x"});
  EXPECT_NEAR(std::abs(h(pt({2})) - cd(-4 + 2 + 3 + 2 + 2 + 1 + 0 + 1)), 0, 1e-14);
}

TEST(Expression, Rejects) {
  EXPECT_EQ(code_of([] { compile_expression("1 +", {"x"}); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { compile_expression("w * 2", {"x"}); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { compile_expression("tan(x)", {"x"}); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { compile_expression("(x", {"x"}); }), ErrorCode::ConfigError);
}

TEST(Serialization, FunctionRoundTrip) {
  auto dir = scratch("fn");
  auto f = sample([](const Eigen::VectorXd& x) { return cd(std::sin(x[0]) / 3, x[1] * x[0]); }, GridSpec({2, 3}, {4, 6}));
  for (bool csv : {false, true}) {
    auto path = (dir / (csv ? "f_csv.json" : "f_bin.json")).string();
    save_function(f, path, csv);
    auto g = load_function(path);
    EXPECT_EQ(g.grid, f.grid);
    EXPECT_EQ(g.tag, f.tag);
    EXPECT_EQ((g.values - f.values).cwiseAbs().maxCoeff(), 0.0) << csv;
  }
  EXPECT_EQ(code_of([&] { load_function((dir / "missing.json").string()); }), ErrorCode::IOError);
}

TEST(Serialization, LambdaGridAndMatrices) {
  LambdaGrid lg = make_lambda_grid(1.2, 6);
  LambdaGrid back = lambda_grid_from_json(lambda_grid_to_json(lg));
  EXPECT_EQ(back.nodes, lg.nodes);
  EXPECT_EQ(back.weights, lg.weights);
  auto dir = scratch("mat");
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(3, 5);
  write_matrix((dir / "a.bin").string(), A);
  EXPECT_EQ(read_matrix((dir / "a.bin").string(), 3, 5), A);
  EXPECT_EQ(code_of([&] { read_matrix((dir / "a.bin").string(), 4, 5); }), ErrorCode::IOError);
}

TEST(Serialization, FamilyAndSymbol) {
  RunConfig c = h1(R"(,"grids":{"rep":{"L":8,"N":16}})");
  auto g = config_algebra(c);
  QuantSpec q = config_quant(c, g);
  q.c_nu = 1;
  FourierFamily fam{make_lambda_grid(1.2, 2), {}};
  for (int m = 0; m < 4; ++m) fam.ops.push_back(Eigen::MatrixXcd::Random(16, 16));
  auto dir = scratch("fam");
  save_family(dir.string(), fam, q);
  GridSpec rg;
  FourierFamily back = load_family(dir.string(), &rg);
  EXPECT_EQ(rg, q.rep.rep_grid);
  EXPECT_EQ(back.lambda_grid.nodes, fam.lambda_grid.nodes);
  for (int m = 0; m < 4; ++m) EXPECT_EQ(back.ops[m], fam.ops[m]);

  SymbolField a = constant_symbol(q.rep, GridSpec::uniform(3, 0.8, 2), fam.lambda_grid, cd(2, -1));
  a.a[3][1](2, 5) = cd(0.25, 7);
  auto sdir = scratch("sym");
  save_symbol(sdir.string(), a, q.rep.rep_grid);
  SymbolField b = load_symbol(sdir.string(), &rg);
  EXPECT_EQ(b.x_grid, a.x_grid);
  for (size_t k = 0; k < a.a.size(); ++k)
    for (size_t m = 0; m < a.a[k].size(); ++m) EXPECT_EQ(b.a[k][m], a.a[k][m]);
  EXPECT_EQ(code_of([&] { load_symbol(dir.string()); }), ErrorCode::IOError);
}

TEST(Config, ParsesAndOverrides) {
  RunConfig c = h1(R"j(,"functional":["2","0","0"],"grids":{"rep":{"L":6,"N":64},"group":{"L":[10,3,3],"N":[32,24,24]}},
                     "lambda":{"Y":1.5,"nodes_per_half_line":8},"star":{"r":0.2,"m":3},"tolerances":{"plancherel":2e-4},
                     "function":"exp(-pi*(z^2+y^2+x^2))","operator":["left-invariant:0,1,0","multiplication:x1"])j");
  EXPECT_EQ(config_rep_grid(c, 1), GridSpec::uniform(1, 6, 64));
  EXPECT_EQ(config_group_grid(c, 3), GridSpec({10, 3, 3}, {32, 24, 24}));
  EXPECT_EQ(c.lambda_grid().size(), 16);
  EXPECT_EQ(c.star_m, 3);
  EXPECT_DOUBLE_EQ(c.tolerance("plancherel"), 2e-4);
  EXPECT_DOUBLE_EQ(c.tolerance("inversion"), 1e-4);
  apply_tolerance_override(c, "inversion=3e-3");
  EXPECT_DOUBLE_EQ(c.tolerance("inversion"), 3e-3);
  auto g = config_algebra(c);
  EXPECT_EQ(config_functional(c, g)[0], 2);
  auto phi = config_function(c, g);
  EXPECT_EQ(phi.grid, config_group_grid(c, 3));
  for (Eigen::Index k : {Eigen::Index(0), phi.grid.size() / 2 + 7})
    EXPECT_NEAR(std::abs(phi.values[k] - std::exp(-kPi * phi.grid.point(k).squaredNorm())), 0, 1e-15);
  Operator A = parse_operator(c.operator_spec, g);
  EXPECT_FALSE(A.left_invariant);
  check_linear(A, 3);
}

TEST(Config, Rejects) {
  EXPECT_EQ(code_of([] { h1(R"(,"colour":"red")"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { parse_config("{}"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { h1(R"(,"lambda":{"Y":1.2,"nodes_per_half_line":0})"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { h1(R"(,"tolerances":{"plancherel":-1})"); }), ErrorCode::ConfigError);
  RunConfig c = h1();
  EXPECT_EQ(code_of([&] { apply_tolerance_override(c, "nonsense=1"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([&] { apply_tolerance_override(c, "plancherel"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { load_config("/nonexistent/run.json"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config_algebra(parse_config(R"({"algebra":"missing.json"})")); }), ErrorCode::ConfigError);
}

TEST(Config, OperatorSpecs) {
  auto g = heisenberg_algebra(1);
  EXPECT_EQ(parse_operator({"identity"}, g).name, "identity");
  Operator m = parse_operator({"multiplication:1 + x*y"}, g);
  ASSERT_TRUE(m.multiplier);
  EXPECT_NEAR(std::abs((*m.multiplier)(pt({0, 2, 3})) - cd(7)), 0, 1e-14);
  EXPECT_TRUE(parse_operator({"left-invariant:1,0,0"}, g).left_invariant);
  EXPECT_EQ(code_of([&] { parse_operator({"left-invariant:1,0"}, g); }), ErrorCode::BadOperatorSpec);
  EXPECT_EQ(code_of([&] { parse_operator({"rotate:1"}, g); }), ErrorCode::BadOperatorSpec);
  EXPECT_EQ(code_of([&] { parse_operator({}, g); }), ErrorCode::BadOperatorSpec);
  EXPECT_EQ(code_of([&] { parse_operator({"multiplication:q"}, g); }), ErrorCode::BadOperatorSpec);
}

TEST(Parallel, ThreadCapAndOrder) {
  setenv("NILHARM_THREADS", "2", 1);
  EXPECT_EQ(thread_count(), std::min(2, int(std::max(1u, std::thread::hardware_concurrency()))));
  std::vector<int> out(100, -1);
  parallel_for(100, [&](int i) { out[i] = i * i; });
  for (int i = 0; i < 100; ++i) EXPECT_EQ(out[i], i * i);
  EXPECT_THROW(parallel_for(10, [](int i) {
                 if (i == 7) fail(ErrorCode::NonFiniteValue, "task 7");
               }),
               Error);
  unsetenv("NILHARM_THREADS");
  EXPECT_GE(thread_count(), 1);
}
