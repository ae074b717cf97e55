#pragma once

#include <map>
#include <optional>

#include "nilharm/quantization.hpp"

namespace nilharm {

std::map<std::string, double> default_tolerances();

struct RunConfig {
  std::string source;  // config path, for messages
  std::string base_dir;
  std::string algebra_text;
  std::vector<std::string> functional;  // rational strings; empty means the first dual basis vector
  std::string realization_text;         // JSON object, default built-in Heisenberg
  std::optional<GridSpec> rep_grid, group_grid, zdual_grid, omega_grid, symbol_x_grid;
  double lambda_Y = 1.2;
  int lambda_nodes = 32;
  double star_r = 0.33;
  int star_m = 4;
  std::map<std::string, double> tol = default_tolerances();
  std::string function_expr, function_file;
  std::vector<std::string> operator_spec;
  std::string out_dir;

  double tolerance(const std::string& name) const;
  LambdaGrid lambda_grid() const { return make_lambda_grid(lambda_Y, lambda_nodes); }
};

RunConfig parse_config(const std::string& text, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);
// "name=value"; unknown names and non-positive values are ConfigError
void apply_tolerance_override(RunConfig& c, const std::string& assignment);

// resolved objects; grids fall back to the desk-scale defaults for the algebra dimension
NilpotentLieAlgebra config_algebra(const RunConfig& c);
VecQ config_functional(const RunConfig& c, const NilpotentLieAlgebra& g);
GridSpec config_rep_grid(const RunConfig& c, int n);
GridSpec config_group_grid(const RunConfig& c, int dim);
GridSpec config_zdual_grid(const RunConfig& c, int dim);
GridSpec config_omega_grid(const RunConfig& c, int dim);
GridSpec config_symbol_x_grid(const RunConfig& c, int dim);
FlatRepSpec config_rep(const RunConfig& c, const NilpotentLieAlgebra& g);
QuantSpec config_quant(const RunConfig& c, const NilpotentLieAlgebra& g);

// lower-case basis names plus x1..xd
std::vector<std::string> coordinate_names(const NilpotentLieAlgebra& g);
// function from the config expression on the group grid, or from a sidecar file
SampledFunction config_function(const RunConfig& c, const NilpotentLieAlgebra& g, const std::string& override_file = "");

// "identity" | "multiplication:<expr>" | "left-invariant:v1,...,vd"; a list composes, first applied last
Operator parse_operator(const std::vector<std::string>& spec, const NilpotentLieAlgebra& g);

}  // namespace nilharm
