#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>

#include "nilharm/config.hpp"
#include "nilharm/io.hpp"
#include "nilharm/orbits.hpp"
#include "nilharm/star.hpp"
#include "nilharm/verify.hpp"

using namespace nilharm;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config, out, input, symbol;
  std::vector<std::string> tols, ops;
  bool no_project = false;
};

RunConfig prepare(const Options& o) {
  RunConfig c = load_config(o.config);
  for (const auto& t : o.tols) apply_tolerance_override(c, t);
  if (!o.out.empty()) c.out_dir = o.out;
  return c;
}

std::string out_dir(const RunConfig& c, const std::string& sub) {
  fs::path p = c.out_dir.empty() ? fs::path("nilharm_out") / sub : fs::path(c.out_dir);
  fs::create_directories(p);
  return p.string();
}

void emit(const json& j, const RunConfig* c = nullptr, const std::string& file = "") {
  std::cout << j.dump(2) << "\n";
  if (c && !c->out_dir.empty() && !file.empty()) {
    fs::create_directories(c->out_dir);
    write_text((fs::path(c->out_dir) / file).string(), j.dump(2) + "\n");
  }
}

json rational_list(const VecQ& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i].get_str());
  return a;
}

int cmd_analyze(const Options& o) {
  RunConfig c = prepare(o);
  NilpotentLieAlgebra g = config_algebra(c);
  VecQ ell = config_functional(c, g);
  json center = json::array();
  for (int i = 0; i < g.dim; ++i)
    if (g.ad(basis_vector(g, i)).isZero()) center.push_back(g.names[i]);
  json weights = json::array();
  for (const auto& w : g.weights) weights.push_back(w.get_str());
  json r = {{"algebra", g.label}, {"dim", g.dim}, {"step", g.step}, {"center", center}, {"center_dim", g.center_dim},
            {"weights", weights}, {"functional", rational_list(ell)}};
  FlatVerdict v = is_flat_si_z(g, ell);
  r["flat"] = v.flat;
  r["flat_reason"] = v.reason;
  if (v.data) {
    const auto& d = *v.data;
    r["J"] = d.jumps;
    r["pf_sq"] = d.pf_sq().get_str();
    r["pf_abs"] = d.pf_abs().get_str();
    r["kappa"] = d.kappa.get_str();
    r["Q"] = d.Q.get_str();
    r["density"] = density_formula(d);
  } else {
    r["J"] = jump_indices(g, ell);
  }
  emit(r, &c, "analyze.json");
  return 0;
}

SampledFunction input_function(const RunConfig& c, const NilpotentLieAlgebra& g, const Options& o) {
  SampledFunction phi = config_function(c, g, o.input);
  return o.no_project ? phi : project_star(phi, c.star_r, c.star_m);
}

int cmd_fourier(const Options& o) {
  RunConfig c = prepare(o);
  NilpotentLieAlgebra g = config_algebra(c);
  QuantSpec q = config_quant(c, g);
  q.tail_tol = c.tolerance("tail");
  Calibration cal = calibrate_nu(q, c.tolerance("calibration"));
  SampledFunction phi = input_function(c, g, o);
  FourierFamily fam = fourier_pi(phi, q, c.lambda_grid());
  const std::string dir = out_dir(c, "fourier");
  save_family(dir, fam, q);
  const double n2 = phi.l2_squared(), ps = plancherel_sum(fam, q.rep);
  const double res = n2 > 0 ? std::abs(ps - n2) / n2 : ps;
  json r = {{"output", dir}, {"c_nu", cal.c_nu}, {"calibration_residual", cal.residual}, {"projected", !o.no_project},
            {"l2_squared", n2}, {"plancherel_sum", ps}, {"plancherel_residual", res},
            {"plancherel_tolerance", c.tolerance("plancherel")}, {"pass", res <= c.tolerance("plancherel")}};
  emit(r);
  write_text((fs::path(dir) / "report.json").string(), r.dump(2) + "\n");
  return r["pass"] ? 0 : 1;
}

int cmd_quantize(const Options& o) {
  if (o.symbol.empty()) fail(ErrorCode::ConfigError, "quantize needs --symbol <dir>");
  RunConfig c = prepare(o);
  NilpotentLieAlgebra g = config_algebra(c);
  QuantSpec q = config_quant(c, g);
  q.tail_tol = c.tolerance("tail");
  GridSpec rep_grid;
  SymbolField a = load_symbol(o.symbol, &rep_grid);
  if (rep_grid != q.rep.rep_grid)
    fail(ErrorCode::GridMismatch, "symbol rep grid " + rep_grid.describe() + " differs from config " + q.rep.rep_grid.describe());
  LambdaGrid lg = c.lambda_grid();
  if (a.lambda_grid.nodes.size() != lg.nodes.size() || (a.lambda_grid.nodes - lg.nodes).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::GridMismatch, "symbol lambda grid " + a.lambda_grid.describe() + " differs from config " + lg.describe());
  calibrate_nu(q, c.tolerance("calibration"));
  SampledFunction phi = input_function(c, g, o);
  SampledFunction out = kn_quantize(a, phi, q);
  const std::string dir = out_dir(c, "quantize");
  const std::string file = (fs::path(dir) / "output.json").string();
  save_function(out, file);
  double diff = 0;
  for (Eigen::Index k = 0; k < out.grid.size(); ++k)
    diff = std::max(diff, std::abs(out.values[k] - interpolate(phi, out.grid.point(k))));
  json r = {{"output", file}, {"points", out.grid.size()}, {"sup_output", out.sup()}, {"sup_input", phi.sup()},
            {"sup_difference_from_input", diff}};
  emit(r);
  write_text((fs::path(dir) / "report.json").string(), r.dump(2) + "\n");
  return 0;
}

int cmd_symbol(const Options& o) {
  RunConfig c = prepare(o);
  if (!o.ops.empty()) c.operator_spec = o.ops;
  if (c.operator_spec.empty()) fail(ErrorCode::BadOperatorSpec, "no operator given (--op or config 'operator')");
  NilpotentLieAlgebra g = config_algebra(c);
  FlatRepSpec spec = config_rep(c, g);
  Operator A = parse_operator(c.operator_spec, g);
  check_linear(A, g.dim);
  SymbolField a = kn_symbol(A, spec, config_symbol_x_grid(c, g.dim), c.lambda_grid());
  const std::string dir = out_dir(c, "symbol");
  save_symbol(dir, a, spec.rep_grid);
  json r = {{"output", dir}, {"operator", A.name}, {"x_points", a.x_grid.size()}, {"lambda_nodes", a.lambda_grid.size()}};
  if (A.multiplier) {
    double dev = 0;
    for (Eigen::Index k = 0; k < a.x_grid.size(); ++k) {
      const cd m = (*A.multiplier)(a.x_grid.point(k));
      for (const auto& s : a.a[k])
        dev = std::max(dev, (s - m * Eigen::MatrixXcd::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff());
    }
    r["multiplication_deviation"] = dev;
    r["pass"] = dev <= c.tolerance("kn_multiplication");
  }
  if (A.left_invariant) {
    const double dep = symbol_x_dependence(a, spec.n() == 1 ? hermite_subspace(spec.rep_grid, 8)
                                                             : hermite_subspace(spec.rep_grid, 3, 1.5));
    r["x_dependence"] = dep;
    r["pass"] = dep <= c.tolerance("symbol_locality");
  }
  emit(r);
  write_text((fs::path(dir) / "report.json").string(), r.dump(2) + "\n");
  return r.value("pass", true) ? 0 : 1;
}

int cmd_verify(const Options& o) {
  RunConfig c = prepare(o);
  VerifyReport rep = run_verify(c);
  std::cout << rep.to_json() << "\n";
  for (const auto& ck : rep.checks)
    std::cerr << (ck.pass ? "pass " : "FAIL ") << ck.name << "  " << ck.runtime << " s\n";
  if (!c.out_dir.empty()) {
    fs::create_directories(c.out_dir);
    write_text((fs::path(c.out_dir) / "report.json").string(), rep.to_json() + "\n");
    write_text((fs::path(c.out_dir) / "timing.json").string(), rep.timing_json() + "\n");
  }
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"harmonic analysis and quantization on flat-orbit nilpotent groups"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--config", o.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--out", o.out, "output directory");
    s->add_option("--tol", o.tols, "tolerance override name=value")->take_all();
    s->add_flag("--no-project", o.no_project, "skip the projection onto the central star space");
    return s;
  };
  auto analyze = common(app.add_subcommand("analyze", "orbit analysis of the configured algebra and functional"));
  auto fourier = common(app.add_subcommand("fourier", "group Fourier transform of a function"));
  fourier->add_option("--input", o.input, "function sidecar JSON (default: config function)");
  auto quantize = common(app.add_subcommand("quantize", "apply a symbol to a function"));
  quantize->add_option("--symbol", o.symbol, "symbol directory");
  quantize->add_option("--input", o.input, "function sidecar JSON (default: config function)");
  auto symbol = common(app.add_subcommand("symbol", "symbol of an operator"));
  symbol->add_option("--op", o.ops, "operator spec; repeat to compose (first applied last)")->take_all();
  auto verify = common(app.add_subcommand("verify", "run every invariant check"));
  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(o);
    if (*fourier) return cmd_fourier(o);
    if (*quantize) return cmd_quantize(o);
    if (*symbol) return cmd_symbol(o);
    if (*verify) return cmd_verify(o);
  } catch (const Error& e) {
    std::cout << json({{"error", e.name()}, {"message", e.what()}}).dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << json({{"error", "InternalError"}, {"message", e.what()}}).dump(2) << "\n";
    return 3;
  }
  return 0;
}
