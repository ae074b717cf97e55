#include "nilharm/grid.hpp"

#include <cmath>
#include <sstream>

namespace nilharm {

const char* space_name(SpaceTag t) {
  switch (t) {
    case SpaceTag::Group: return "group";
    case SpaceTag::Dual: return "dual";
    case SpaceTag::CentralDual: return "central_dual";
    case SpaceTag::LambdaLine: return "lambda_line";
  }
  return "group";
}

SpaceTag parse_space(const std::string& s) {
  if (s == "group") return SpaceTag::Group;
  if (s == "dual") return SpaceTag::Dual;
  if (s == "central_dual") return SpaceTag::CentralDual;
  if (s == "lambda_line") return SpaceTag::LambdaLine;
  fail(ErrorCode::ConfigError, "unknown space tag '" + s + "'");
}

GridSpec::GridSpec(std::vector<double> L_, std::vector<int> N_) : L(std::move(L_)), N(std::move(N_)) {
  if (L.size() != N.size() || L.empty()) fail(ErrorCode::ConfigError, "grid: L and N must have equal nonzero length");
  for (size_t a = 0; a < L.size(); ++a) {
    if (!(L[a] > 0)) fail(ErrorCode::ConfigError, "grid: half-width must be positive");
    if (N[a] < 2 || N[a] % 2) fail(ErrorCode::ConfigError, "grid: points per axis must be even and >= 2");
  }
}

Eigen::Index GridSpec::size() const {
  Eigen::Index n = 1;
  for (int x : N) n *= x;
  return n;
}

double GridSpec::cell_volume() const {
  double v = 1;
  for (int a = 0; a < dims(); ++a) v *= h(a);
  return v;
}

Eigen::VectorXd GridSpec::axis(int a) const {
  Eigen::VectorXd x(N[a]);
  for (int j = 0; j < N[a]; ++j) x[j] = coord(a, j);
  return x;
}

std::vector<int> GridSpec::index(Eigen::Index flat) const {
  std::vector<int> idx(dims());
  for (int a = dims() - 1; a >= 0; --a) {
    idx[a] = int(flat % N[a]);
    flat /= N[a];
  }
  return idx;
}

Eigen::Index GridSpec::flat(const std::vector<int>& idx) const {
  Eigen::Index f = 0;
  for (int a = 0; a < dims(); ++a) f = f * N[a] + idx[a];
  return f;
}

Eigen::VectorXd GridSpec::point(Eigen::Index f) const {
  auto idx = index(f);
  Eigen::VectorXd p(dims());
  for (int a = 0; a < dims(); ++a) p[a] = coord(a, idx[a]);
  return p;
}

Eigen::VectorXd GridSpec::frequencies(int a) const {
  const int n = N[a];
  Eigen::VectorXd f(n);
  for (int k = 0; k < n; ++k) f[k] = (k < n / 2 ? k : k - n) / (n * h(a));
  return f;
}

std::string GridSpec::describe() const {
  std::ostringstream os;
  for (int a = 0; a < dims(); ++a) os << (a ? " x " : "") << N[a] << " on [" << -L[a] << "," << L[a] << "]";
  return os.str();
}

SampledFunction::SampledFunction(GridSpec g, Eigen::VectorXcd v, SpaceTag t)
    : grid(std::move(g)), values(std::move(v)), tag(t) {
  if (values.size() != grid.size()) fail(ErrorCode::DimensionMismatch, "sample count does not match grid");
}

SampledFunction sample(const PointFunction& f, const GridSpec& grid, SpaceTag tag) {
  Eigen::VectorXcd v(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    Eigen::VectorXd p = grid.point(k);
    cd y = f(p);
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) {
      std::ostringstream os;
      os << "non-finite value at (" << p.transpose() << ")";
      fail(ErrorCode::NonFiniteValue, os.str());
    }
    v[k] = y;
  }
  return SampledFunction(grid, std::move(v), tag);
}

namespace {

// weights of the periodic trigonometric interpolant (even N, Nyquist split evenly)
Eigen::VectorXd dirichlet_weights(const GridSpec& g, int a, double p) {
  const int n = g.N[a];
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) {
    double u = (p - g.coord(a, j)) / g.h(a);
    double s = std::sin(kPi * u / n);
    w[j] = std::abs(s) < 1e-14 ? std::cos(kPi * u) : std::sin(kPi * u) * std::cos(kPi * u / n) / (n * s);
  }
  return w;
}

}  // namespace

cd interpolate(const SampledFunction& f, const Eigen::VectorXd& p) {
  const GridSpec& g = f.grid;
  if (p.size() != g.dims()) fail(ErrorCode::DimensionMismatch, "interpolation point has wrong dimension");
  std::vector<int> shape = g.N;
  Eigen::VectorXcd v = f.values;
  for (int a = g.dims() - 1; a >= 0; --a) {
    Eigen::MatrixXcd e = dirichlet_weights(g, a, p[a]).transpose().cast<cd>();
    v = apply_axis(v, shape, a, e);
  }
  return v[0];
}

Eigen::VectorXcd apply_axis(const Eigen::VectorXcd& values, std::vector<int>& shape, int axis, const Eigen::MatrixXcd& e) {
  if (e.cols() != shape[axis]) fail(ErrorCode::DimensionMismatch, "apply_axis: contraction length mismatch");
  Eigen::Index outer = 1, inner = 1;
  for (int a = 0; a < axis; ++a) outer *= shape[a];
  for (size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  const Eigen::Index n = shape[axis], p = e.rows();
  Eigen::VectorXcd out(outer * p * inner);
  for (Eigen::Index o = 0; o < outer; ++o) {
    Eigen::Map<const Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> in(values.data() + o * n * inner, n,
                                                                                            inner);
    Eigen::Map<Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> res(out.data() + o * p * inner, p, inner);
    res.noalias() = e * in;
  }
  shape[axis] = int(p);
  return out;
}

}  // namespace nilharm
