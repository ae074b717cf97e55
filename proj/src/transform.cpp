#include "nilharm/transform.hpp"

#include <sstream>

namespace nilharm {

double boundary_ratio(const SampledFunction& phi) {
  const double s = phi.sup();
  if (s == 0) return 0;
  double b = 0;
  const GridSpec& g = phi.grid;
  std::vector<int> idx(g.dims(), 0);
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    bool shell = false;
    for (int a = 0; a < g.dims(); ++a) shell |= idx[a] == 0 || idx[a] == g.N[a] - 1;
    if (shell) b = std::max(b, std::abs(phi.values[k]));
    for (int a = g.dims() - 1; a >= 0 && ++idx[a] == g.N[a]; --a) idx[a] = 0;
  }
  return b / s;
}

void check_boundary(const SampledFunction& phi, double tail_tol) {
  if (std::isinf(tail_tol)) return;
  double r = boundary_ratio(phi);
  if (r > tail_tol) {
    std::ostringstream os;
    os << "boundary shell carries " << r << " of the peak magnitude (tolerance " << tail_tol << ")";
    fail(ErrorCode::BoundaryMassExceeded, os.str());
  }
}

Eigen::MatrixXcd fourier_kernel(const Eigen::VectorXd& freqs, const Eigen::VectorXd& xs, int sign, double weight) {
  Eigen::MatrixXcd e(freqs.size(), xs.size());
  for (Eigen::Index p = 0; p < freqs.size(); ++p)
    for (Eigen::Index j = 0; j < xs.size(); ++j) e(p, j) = std::polar(weight, sign * kTwoPi * freqs[p] * xs[j]);
  return e;
}

Eigen::VectorXcd euclidean_ft_tensor(const SampledFunction& phi, const std::vector<Eigen::VectorXd>& freqs, int sign,
                                     double tail_tol) {
  const GridSpec& g = phi.grid;
  if (int(freqs.size()) != g.dims()) fail(ErrorCode::DimensionMismatch, "frequency axes do not match grid dimension");
  check_boundary(phi, tail_tol);
  std::vector<int> shape = g.N;
  Eigen::VectorXcd v = phi.values;
  // contract the largest axis first to shrink the working set early
  std::vector<int> order(g.dims());
  for (int a = 0; a < g.dims(); ++a) order[a] = a;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return double(freqs[a].size()) / g.N[a] < double(freqs[b].size()) / g.N[b];
  });
  for (int a : order) v = apply_axis(v, shape, a, fourier_kernel(freqs[a], g.axis(a), sign, g.h(a)));
  return v;
}

Eigen::VectorXcd euclidean_ft_at(const SampledFunction& phi, const Eigen::MatrixXd& points, int sign, double tail_tol) {
  const GridSpec& g = phi.grid;
  if (points.cols() != g.dims()) fail(ErrorCode::DimensionMismatch, "frequency points have wrong dimension");
  check_boundary(phi, tail_tol);
  Eigen::VectorXcd out(points.rows());
  for (Eigen::Index p = 0; p < points.rows(); ++p) {
    std::vector<int> shape = g.N;
    Eigen::VectorXcd v = phi.values;
    for (int a = g.dims() - 1; a >= 0; --a) {
      Eigen::VectorXd f(1);
      f[0] = points(p, a);
      v = apply_axis(v, shape, a, fourier_kernel(f, g.axis(a), sign, g.h(a)));
    }
    out[p] = v[0];
  }
  return out;
}

Eigen::VectorXcd FrequencyFunction::on_tensor(const std::vector<Eigen::VectorXd>& freqs) const {
  Eigen::Index total = 1;
  for (const auto& f : freqs) total *= f.size();
  Eigen::MatrixXd pts(total, freqs.size());
  for (Eigen::Index k = 0; k < total; ++k) {
    Eigen::Index r = k;
    for (int a = int(freqs.size()) - 1; a >= 0; --a) {
      pts(k, a) = freqs[a][r % freqs[a].size()];
      r /= freqs[a].size();
    }
  }
  return at(pts);
}

SampledTransform::SampledTransform(const SampledFunction& phi, int sign, double tail_tol) : phi_(phi), sign_(sign) {
  check_boundary(phi_, tail_tol);
}

Eigen::VectorXcd SampledTransform::at(const Eigen::MatrixXd& points) const {
  return euclidean_ft_at(phi_, points, sign_, std::numeric_limits<double>::infinity());
}

Eigen::VectorXcd SampledTransform::on_tensor(const std::vector<Eigen::VectorXd>& freqs) const {
  return euclidean_ft_tensor(phi_, freqs, sign_, std::numeric_limits<double>::infinity());
}

Eigen::VectorXcd AnalyticFrequency::at(const Eigen::MatrixXd& points) const {
  Eigen::VectorXcd v(points.rows());
  for (Eigen::Index p = 0; p < points.rows(); ++p) v[p] = f_(points.row(p).transpose());
  return v;
}

}  // namespace nilharm
