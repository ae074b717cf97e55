#pragma once

#include "nilharm/grid.hpp"

namespace nilharm {

// chart on each half-line: sigma(lambda) = |lambda| - 1/|lambda|
double chart_sigma(double lambda);
// inverse on the half-line of the given sign
double chart_sigma_inv(double y, int sign = +1);

struct GaussLegendre {
  Eigen::VectorXd nodes, weights;
};
GaussLegendre gauss_legendre(int n);

// mirror-symmetric nonzero nodes, ascending; weights integrate against d lambda
struct LambdaGrid {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  Eigen::Index size() const { return nodes.size(); }
  void validate() const;
  std::string describe() const;
};

// Gauss-Legendre on [-Y, Y] in the chart coordinate, mapped to each half-line
LambdaGrid make_lambda_grid(double Y, int per_half_line);

// f_m given at the nodes of the grid; returns sup_m |A^k B^j f| with A = eta d/dlambda, B = sigma
double lambda_schwartz_seminorm(const LambdaGrid& grid, const Eigen::VectorXcd& f, int k, int j);

}  // namespace nilharm
