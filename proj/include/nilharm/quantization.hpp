#pragma once

#include <optional>

#include "nilharm/lambda.hpp"
#include "nilharm/representation.hpp"
#include "nilharm/transform.hpp"

namespace nilharm {

// representation plus the grids on the dual of the centre complement and on omega
struct QuantSpec {
  FlatRepSpec rep;
  GridSpec zdual;  // symbol grid, coordinates xi_2..xi_d
  GridSpec omega;  // quadrature grid, coordinates x_2..x_d
  double theta_scale = 1;
  double tail_tol = 1e-4;
  std::optional<double> c_nu;

  int dims() const { return rep.algebra.dim; }
};

QuantSpec make_quant_spec(FlatRepSpec rep, const GridSpec& zdual, const GridSpec& omega);

// c_nu-free quantization: sum_v pi^(sign)(0, v) [int e^{-2 pi i xi(v)} phi(xi) d theta] dv
Eigen::MatrixXcd pedersen_raw(const QuantSpec& q, int sign, const SampledFunction& phi);
Eigen::MatrixXcd pedersen_op(const QuantSpec& q, int sign, const SampledFunction& phi);

struct Calibration {
  double c_nu = 0;
  double residual = 0;
};
// least-squares fit of c_nu on a 3x3 Gaussian panel; stores c_nu in q
Calibration calibrate_nu(QuantSpec& q, double tol = 1e-5);
// the Gaussian symbols used by calibrate_nu and held-out symbols for the trace identity
std::vector<SampledFunction> calibration_panel(const GridSpec& zdual);
std::vector<SampledFunction> held_out_panel(const GridSpec& zdual);
// int a conj(b) d theta
cd theta_inner(const QuantSpec& q, const SampledFunction& a, const SampledFunction& b);

// Weyl-type kernel K(t, s) = int phi((t+s)/2, xi) e^{2 pi i xi (t - s)} d xi times the rep-grid spacing (H_1 only)
Eigen::MatrixXcd weyl_oracle(const GridSpec& rep_grid, const PointFunction& phi, double xi_L = 6, int xi_N = 256);

// F(delta_lambda(ell + xi)) on the zdual grid
SampledFunction pullback_pl(const FrequencyFunction& F, const QuantSpec& q, double lambda);

struct FourierFamily {
  LambdaGrid lambda_grid;
  std::vector<Eigen::MatrixXcd> ops;
};

FourierFamily fourier_pi(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg);
Eigen::MatrixXcd fourier_pi_at(const SampledFunction& phi, const QuantSpec& q, double lambda);
// literal quadrature sum_k phi(x_k) pi_lambda(x_k)^* h^d, central axis summed first
Eigen::MatrixXcd group_ft_direct(const SampledFunction& phi, const FlatRepSpec& spec, double lambda);

// Tr[pi_lambda(x) A] without forming pi_lambda(x)
cd trace_rep_product(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x, const Eigen::MatrixXcd& A);
Eigen::VectorXcd inverse_fourier_pi(const FourierFamily& fam, const FlatRepSpec& spec, const Eigen::MatrixXd& x_points);
double plancherel_sum(const FourierFamily& fam, const FlatRepSpec& spec);

// matrix-valued function on G; scalar functions are 1x1
using MatrixField = std::function<Eigen::MatrixXcd(const Eigen::VectorXd&)>;

// operator acting in the x variable, evaluated at a point
struct Operator {
  std::string name;
  std::function<Eigen::MatrixXcd(const MatrixField&, const Eigen::VectorXd&)> apply;
  bool left_invariant = false;
  std::optional<PointFunction> multiplier;
};

Operator identity_operator();
Operator multiplication_operator(PointFunction m, std::string name = "multiplication");
// (F(x . hv) - F(x . (-hv))) / 2h, Richardson-extrapolated
Operator left_invariant_operator(const NilpotentLieAlgebra& g, const Eigen::VectorXd& v, double h = 1e-3);
// first applied last: compose({A, B}) = A o B
Operator compose(std::vector<Operator> ops);

MatrixField scalar_field(const SampledFunction& phi);
MatrixField scalar_field(PointFunction f);
// throws NonLinearOperatorDetected when additivity or homogeneity fails at a probe point
void check_linear(const Operator& A, int dim, double tol = 1e-9);

struct SymbolField {
  GridSpec x_grid;
  LambdaGrid lambda_grid;
  std::vector<std::vector<Eigen::MatrixXcd>> a;  // a[x][lambda]
};

SymbolField kn_symbol(const Operator& A, const FlatRepSpec& spec, const GridSpec& x_grid, const LambdaGrid& lg);
SymbolField constant_symbol(const FlatRepSpec& spec, const GridSpec& x_grid, const LambdaGrid& lg, cd value);
SampledFunction kn_quantize(const SymbolField& a, const FourierFamily& fam, const FlatRepSpec& spec);
SampledFunction kn_quantize(const SymbolField& a, const SampledFunction& phi, const QuantSpec& q);
// max over x pairs of ||Q*(a[x] - a[x'])Q|| / ||Q* a[x] Q|| per lambda
double symbol_x_dependence(const SymbolField& a, const Eigen::MatrixXcd& Q);

// taper 1 - S_m((|xi| - R)/R): 1 on |xi| <= R, 0 beyond 2R
double flat_taper(double r_xi, double R, int m = 4);
// ||Q*(op(psi_R chi_x) - pi_lambda(x))Q|| / sqrt(K)
double character_consistency(const QuantSpec& q, double lambda, const Eigen::VectorXd& x, double R,
                             const Eigen::MatrixXcd& Q);

}  // namespace nilharm
