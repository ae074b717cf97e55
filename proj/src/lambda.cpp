#include "nilharm/lambda.hpp"

#include <sstream>

namespace nilharm {

double chart_sigma(double lambda) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "chart is undefined at lambda = 0");
  const double a = std::abs(lambda);
  return a - 1 / a;
}

double chart_sigma_inv(double y, int sign) {
  if (sign == 0) fail(ErrorCode::ZeroLambda, "half-line sign must be nonzero");
  // (y + sqrt(y^2+4))/2 loses digits for large negative y; use 2/(sqrt(y^2+4) - y) there
  const double r = std::sqrt(y * y + 4);
  const double a = y >= 0 ? (y + r) / 2 : 2 / (r - y);
  return sign > 0 ? a : -a;
}

GaussLegendre gauss_legendre(int n) {
  GaussLegendre gl{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    gl.nodes[n - 1 - i] = x;
    gl.weights[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
  }
  return gl;
}

void LambdaGrid::validate() const {
  const Eigen::Index n = nodes.size();
  if (weights.size() != n || n == 0 || n % 2) fail(ErrorCode::ConfigError, "lambda grid needs an even, matching node/weight count");
  for (Eigen::Index m = 0; m < n; ++m) {
    if (nodes[m] == 0) fail(ErrorCode::ZeroLambda, "lambda grid contains 0");
    if (!(weights[m] > 0)) fail(ErrorCode::ConfigError, "lambda grid weights must be positive");
    if (std::abs(nodes[m] + nodes[n - 1 - m]) > 1e-12 * std::abs(nodes[m]) ||
        std::abs(weights[m] - weights[n - 1 - m]) > 1e-12 * weights[m])
      fail(ErrorCode::ConfigError, "lambda grid is not mirror-symmetric");
  }
}

std::string LambdaGrid::describe() const {
  std::ostringstream os;
  os << nodes.size() << " nodes in [" << nodes.minCoeff() << ", " << nodes.maxCoeff() << "]";
  return os.str();
}

LambdaGrid make_lambda_grid(double Y, int per_half_line) {
  if (!(Y > 0) || per_half_line < 1) fail(ErrorCode::ConfigError, "lambda grid needs Y > 0 and at least one node");
  GaussLegendre gl = gauss_legendre(per_half_line);
  const int n = per_half_line;
  LambdaGrid g{Eigen::VectorXd(2 * n), Eigen::VectorXd(2 * n)};
  for (int i = 0; i < n; ++i) {
    const double lam = chart_sigma_inv(Y * gl.nodes[i]);
    const double w = Y * gl.weights[i] * lam * lam / (lam * lam + 1);
    g.nodes[n + i] = lam;
    g.weights[n + i] = w;
    g.nodes[n - 1 - i] = -lam;
    g.weights[n - 1 - i] = w;
  }
  return g;
}

namespace {

// three-point derivative on nonuniform nodes
Eigen::VectorXcd diff(const Eigen::VectorXd& y, const Eigen::VectorXcd& f) {
  const Eigen::Index n = y.size();
  Eigen::VectorXcd d(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index c = std::clamp<Eigen::Index>(i, 1, n - 2);
    const double x0 = y[c - 1], x1 = y[c], x2 = y[c + 1], x = y[i];
    const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    d[i] = l0 * f[c - 1] + l1 * f[c] + l2 * f[c + 1];
  }
  return d;
}

}  // namespace

double lambda_schwartz_seminorm(const LambdaGrid& grid, const Eigen::VectorXcd& f, int k, int j) {
  if (f.size() != grid.size()) fail(ErrorCode::GridMismatch, "values do not match the lambda grid");
  const Eigen::Index half = grid.size() / 2;
  if (k > 0 && half < 2 * k + 3) {
    std::ostringstream os;
    os << half << " nodes per half-line cannot resolve " << k << " derivatives";
    fail(ErrorCode::GridTooCoarse, os.str());
  }
  double sup = 0;
  for (int side = 0; side < 2; ++side) {
    Eigen::VectorXd y(half);
    Eigen::VectorXcd v(half);
    for (Eigen::Index i = 0; i < half; ++i) {
      const Eigen::Index m = side ? half + i : half - 1 - i;
      y[i] = chart_sigma(grid.nodes[m]);
      v[i] = f[m] * std::pow(y[i], j);
    }
    // A is d/dy in the chart coordinate on each half-line
    for (int a = 0; a < k; ++a) v = diff(y, v);
    sup = std::max(sup, v.cwiseAbs().maxCoeff());
  }
  return sup;
}

}  // namespace nilharm
