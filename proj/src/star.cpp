#include "nilharm/star.hpp"

#include <unsupported/Eigen/FFT>
#include <sstream>

namespace nilharm {

namespace {

double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double smoothstep(double u, int m) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  double s = 0;
  for (int k = 0; k <= m; ++k) s += binom(m + k, k) * binom(2 * m + 1, m - k) * std::pow(-u, k);
  return std::pow(u, m + 1) * s;
}

SampledFunction project_star(const SampledFunction& phi, double r, int m) {
  const GridSpec& g = phi.grid;
  const int n = g.N[0];
  const double nyquist = 0.5 / g.h(0);
  if (!(r > 0) || 2 * r > nyquist) {
    std::ostringstream os;
    os << "cutoff band [" << r << ", " << 2 * r << "] does not fit below the central Nyquist frequency " << nyquist;
    fail(ErrorCode::RadiusTooLargeForGrid, os.str());
  }
  Eigen::VectorXd f = g.frequencies(0);
  Eigen::VectorXd b(n);
  for (int k = 0; k < n; ++k) b[k] = star_bump(f[k], r, m);

  const Eigen::Index stride = g.size() / n;
  Eigen::VectorXcd out(g.size());
  Eigen::FFT<double> fft;
  std::vector<cd> fiber(n), spec(n);
  for (Eigen::Index s = 0; s < stride; ++s) {
    for (int j = 0; j < n; ++j) fiber[j] = phi.values[j * stride + s];
    fft.fwd(spec, fiber);
    for (int k = 0; k < n; ++k) spec[k] *= b[k];
    fft.inv(fiber, spec);
    for (int j = 0; j < n; ++j) out[j * stride + s] = fiber[j];
  }
  return SampledFunction(g, std::move(out), phi.tag);
}

Eigen::VectorXd moment_vanish_defect(const SampledFunction& phi, int D) {
  if (phi.grid.dims() != 1) fail(ErrorCode::DimensionMismatch, "moment defects need a 1-dim function");
  Eigen::VectorXd t = phi.grid.axis(0);
  Eigen::VectorXd out(D + 1);
  Eigen::VectorXd p = Eigen::VectorXd::Ones(t.size());
  for (int k = 0; k <= D; ++k) {
    out[k] = std::abs((phi.values.array() * p.array()).sum()) * phi.grid.h(0);
    p.array() *= t.array();
  }
  return out;
}

Eigen::VectorXd central_moment_defects(const SampledFunction& phi, int D) {
  const GridSpec& g = phi.grid;
  const int n = g.N[0];
  const Eigen::Index stride = g.size() / n;
  GridSpec line({g.L[0]}, {n});
  Eigen::VectorXd worst = Eigen::VectorXd::Zero(D + 1);
  const double s = phi.sup();
  if (s == 0) return worst;
  for (Eigen::Index q = 0; q < stride; ++q) {
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) v[j] = phi.values[j * stride + q];
    worst = worst.cwiseMax(moment_vanish_defect(SampledFunction(line, v, SpaceTag::Group), D));
  }
  return worst / s;
}

}  // namespace nilharm
