#include "nilharm/quantization.hpp"

#include <sstream>

#include "nilharm/parallel.hpp"
#include "nilharm/star.hpp"

namespace nilharm {

namespace {

int sgn(double v) { return v > 0 ? 1 : -1; }

Eigen::MatrixXd omega_points(const QuantSpec& q) {
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(q.omega.size(), q.dims());
  for (Eigen::Index k = 0; k < q.omega.size(); ++k) pts.row(k).tail(q.dims() - 1) = q.omega.point(k).transpose();
  return pts;
}

std::vector<Eigen::VectorXd> omega_axes(const QuantSpec& q) {
  std::vector<Eigen::VectorXd> ax;
  for (int a = 0; a < q.omega.dims(); ++a) ax.push_back(q.omega.axis(a));
  return ax;
}

cd hs_inner(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) { return (A.array() * B.array().conjugate()).sum(); }

double density(const FlatRepSpec& spec, double lambda) { return plancherel_density(spec.orbit, lambda); }

}  // namespace

QuantSpec make_quant_spec(FlatRepSpec rep, const GridSpec& zdual, const GridSpec& omega) {
  const int d = rep.algebra.dim;
  if (zdual.dims() != d - 1 || omega.dims() != d - 1)
    fail(ErrorCode::DimensionMismatch, "symbol and omega grids need dim - 1 axes");
  QuantSpec q{std::move(rep), zdual, omega, 1, 1e-4, std::nullopt};
  return q;
}

Eigen::MatrixXcd pedersen_raw(const QuantSpec& q, int sign, const SampledFunction& phi) {
  if (phi.grid != q.zdual)
    fail(ErrorCode::GridMismatch, "symbol grid " + phi.grid.describe() + " differs from " + q.zdual.describe());
  Eigen::VectorXcd inner = euclidean_ft_tensor(phi, omega_axes(q), -1, q.tail_tol);
  inner *= q.theta_scale * q.omega.cell_volume();
  return rep_sum(q.rep, sign > 0 ? 1.0 : -1.0, omega_points(q), inner);
}

Eigen::MatrixXcd pedersen_op(const QuantSpec& q, int sign, const SampledFunction& phi) {
  if (!q.c_nu) fail(ErrorCode::NotCalibrated, "run calibrate_nu before quantizing");
  return *q.c_nu * pedersen_raw(q, sign, phi);
}

std::vector<SampledFunction> calibration_panel(const GridSpec& zdual) {
  const int n = zdual.dims();
  std::vector<PointFunction> fs = {
      [](const Eigen::VectorXd& x) { return cd(std::exp(-kPi * x.squaredNorm())); },
      [n](const Eigen::VectorXd& x) {
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
        mu[0] = 0.5;
        mu[n - 1] -= 0.3;
        return cd(std::exp(-kPi * (x - mu).squaredNorm() / 0.64));
      },
      [n](const Eigen::VectorXd& x) {
        double e = x[0] * x[0] / 1.44;
        for (int j = 1; j < n; ++j) e += x[j] * x[j] / 0.81;
        return std::exp(-kPi * e) * std::polar(1.0, kTwoPi * 0.4 * x[0]);
      }};
  std::vector<SampledFunction> out;
  for (const auto& f : fs) out.push_back(sample(f, zdual, SpaceTag::CentralDual));
  return out;
}

std::vector<SampledFunction> held_out_panel(const GridSpec& zdual) {
  const int n = zdual.dims();
  auto g = [](const Eigen::VectorXd& x, double s) { return std::exp(-kPi * x.squaredNorm() / (s * s)); };
  std::vector<PointFunction> fs = {
      [g](const Eigen::VectorXd& x) { return cd(x[0] * g(x, 1)); },
      [g, n](const Eigen::VectorXd& x) { return cd((x[n - 1] * x[n - 1] - 0.2) * g(x, 1.1)); },
      [g, n](const Eigen::VectorXd& x) {
        Eigen::VectorXd mu = Eigen::VectorXd::Zero(n);
        mu[0] = -0.4;
        mu[n - 1] += 0.6;
        return cd(g(x - mu, 1.1));
      },
      [g, n](const Eigen::VectorXd& x) { return cd(x[0] * x[n - 1] * g(x, 1.2)); },
      [g, n](const Eigen::VectorXd& x) { return g(x, 1) * std::polar(1.0, kTwoPi * (0.3 * x[0] - 0.5 * x[n - 1])); }};
  std::vector<SampledFunction> out;
  for (const auto& f : fs) out.push_back(sample(f, zdual, SpaceTag::CentralDual));
  return out;
}

cd theta_inner(const QuantSpec& q, const SampledFunction& a, const SampledFunction& b) {
  return (a.values.array() * b.values.array().conjugate()).sum() * a.grid.cell_volume() * q.theta_scale;
}

Calibration calibrate_nu(QuantSpec& q, double tol) {
  auto panel = calibration_panel(q.zdual);
  std::vector<Eigen::MatrixXcd> ops;
  for (const auto& a : panel) ops.push_back(pedersen_raw(q, +1, a));
  double num = 0, den = 0;
  Eigen::MatrixXcd T(3, 3), I(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T(i, j) = hs_inner(ops[i], ops[j]);
      I(i, j) = theta_inner(q, panel[i], panel[j]);
      num += std::real(std::conj(T(i, j)) * I(i, j));
      den += std::norm(T(i, j));
    }
  Calibration c;
  const double c2 = den > 0 ? num / den : 0;
  c.c_nu = c2 > 0 ? std::sqrt(c2) : 0;
  c.residual = c2 > 0 ? (c2 * T - I).norm() / I.norm() : 1;
  if (!(c.residual <= tol)) {
    std::ostringstream os;
    os << "calibration residual " << c.residual << " exceeds " << tol << " (grids too coarse?)";
    fail(ErrorCode::CalibrationResidualTooLarge, os.str());
  }
  q.c_nu = c.c_nu;
  return c;
}

Eigen::MatrixXcd weyl_oracle(const GridSpec& rep_grid, const PointFunction& phi, double xi_L, int xi_N) {
  if (rep_grid.dims() != 1) fail(ErrorCode::DimensionMismatch, "Weyl oracle is one-dimensional");
  const int M = rep_grid.N[0];
  GridSpec xg({xi_L}, {xi_N});
  Eigen::VectorXd t = rep_grid.axis(0), xi = xg.axis(0);
  Eigen::MatrixXcd K(M, M);
  Eigen::VectorXd p(2);
  for (int j = 0; j < M; ++j)
    for (int l = 0; l < M; ++l) {
      cd s = 0;
      p[0] = (t[j] + t[l]) / 2;
      for (int m = 0; m < xi_N; ++m) {
        p[1] = xi[m];
        s += phi(p) * std::polar(1.0, kTwoPi * xi[m] * (t[j] - t[l]));
      }
      K(j, l) = s * xg.h(0) * rep_grid.h(0);
    }
  return K;
}

SampledFunction pullback_pl(const FrequencyFunction& F, const QuantSpec& q, double lambda) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "pullback at lambda = 0");
  const auto& g = q.rep.algebra;
  const double a = std::abs(lambda);
  std::vector<Eigen::VectorXd> freqs(g.dim);
  freqs[0] = Eigen::VectorXd::Constant(1, sgn(lambda) * std::pow(a, g.weights[0].get_d()) * q.rep.orbit.ell1());
  for (int j = 1; j < g.dim; ++j) freqs[j] = std::pow(a, g.weights[j].get_d()) * q.zdual.axis(j - 1);
  return SampledFunction(q.zdual, F.on_tensor(freqs), SpaceTag::CentralDual);
}

Eigen::MatrixXcd fourier_pi_at(const SampledFunction& phi, const QuantSpec& q, double lambda) {
  SampledTransform T(phi, -1, q.tail_tol);
  return pedersen_op(q, sgn(lambda), pullback_pl(T, q, lambda));
}

FourierFamily fourier_pi(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg) {
  if (phi.grid.dims() != q.dims()) fail(ErrorCode::DimensionMismatch, "function grid does not match the group");
  if (!q.c_nu) fail(ErrorCode::NotCalibrated, "run calibrate_nu before fourier_pi");
  SampledTransform T(phi, -1, q.tail_tol);
  FourierFamily fam{lg, std::vector<Eigen::MatrixXcd>(lg.size())};
  parallel_for(int(lg.size()), [&](int m) {
    fam.ops[m] = pedersen_op(q, sgn(lg.nodes[m]), pullback_pl(T, q, lg.nodes[m]));
  });
  return fam;
}

Eigen::MatrixXcd group_ft_direct(const SampledFunction& phi, const FlatRepSpec& spec, double lambda) {
  const auto& G = phi.grid;
  if (G.dims() != spec.algebra.dim) fail(ErrorCode::DimensionMismatch, "function grid does not match the group");
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "group Fourier transform at lambda = 0");
  const int nz = G.N[0];
  const Eigen::Index rest = G.size() / nz;
  Eigen::VectorXcd chi(nz);
  for (int j = 0; j < nz; ++j) chi[j] = central_character(spec, lambda, G.coord(0, j));
  // sum_k conj(phi_k) pi_lambda(x_k) with pi_lambda(z, r) = chi_lambda(z) pi_lambda(0, r)
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(rest);
  for (int j = 0; j < nz; ++j) c += chi[j] * phi.values.segment(j * rest, rest).conjugate();
  c *= G.cell_volume();
  Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(rest, G.dims());
  for (Eigen::Index r = 0; r < rest; ++r) pts.row(r).tail(G.dims() - 1) = G.point(r).tail(G.dims() - 1).transpose();
  return rep_sum(spec, lambda, pts, c).adjoint();
}

cd trace_rep_product(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x, const Eigen::MatrixXcd& A) {
  return (rep_matrix(spec, lambda, x).transpose().array() * A.array()).sum();
}

Eigen::VectorXcd inverse_fourier_pi(const FourierFamily& fam, const FlatRepSpec& spec, const Eigen::MatrixXd& x_points) {
  Eigen::VectorXcd out(x_points.rows());
  parallel_for(int(x_points.rows()), [&](int p) {
    cd s = 0;
    for (Eigen::Index m = 0; m < fam.lambda_grid.size(); ++m) {
      const double l = fam.lambda_grid.nodes[m];
      s += fam.lambda_grid.weights[m] * density(spec, l) * trace_rep_product(spec, l, x_points.row(p).transpose(), fam.ops[m]);
    }
    out[p] = s;
  });
  return out;
}

double plancherel_sum(const FourierFamily& fam, const FlatRepSpec& spec) {
  double s = 0;
  for (Eigen::Index m = 0; m < fam.lambda_grid.size(); ++m)
    s += fam.lambda_grid.weights[m] * density(spec, fam.lambda_grid.nodes[m]) * fam.ops[m].squaredNorm();
  return s;
}

Operator identity_operator() {
  Operator A;
  A.name = "identity";
  A.apply = [](const MatrixField& F, const Eigen::VectorXd& x) { return F(x); };
  A.left_invariant = true;
  A.multiplier = [](const Eigen::VectorXd&) { return cd(1); };
  return A;
}

Operator multiplication_operator(PointFunction m, std::string name) {
  Operator A;
  A.name = std::move(name);
  A.apply = [m](const MatrixField& F, const Eigen::VectorXd& x) -> Eigen::MatrixXcd { return m(x) * F(x); };
  A.multiplier = m;
  return A;
}

Operator left_invariant_operator(const NilpotentLieAlgebra& g, const Eigen::VectorXd& v, double h) {
  check_dim(g, v.size(), "left-invariant direction");
  Operator A;
  std::ostringstream os;
  os << "left-invariant:" << v.transpose();
  A.name = os.str();
  A.left_invariant = true;
  A.apply = [g, v, h](const MatrixField& F, const Eigen::VectorXd& x) -> Eigen::MatrixXcd {
    auto D = [&](double s) -> Eigen::MatrixXcd {
      Eigen::VectorXd sv = s * v;
      Eigen::VectorXd msv = -s * v;
      return (F(bch_multiply<double>(g, x, sv)) - F(bch_multiply<double>(g, x, msv))) / (2 * s);
    };
    return (4 * D(h / 2) - D(h)) / 3;
  };
  return A;
}

Operator compose(std::vector<Operator> ops) {
  if (ops.empty()) return identity_operator();
  if (ops.size() == 1) return ops[0];
  Operator A;
  A.left_invariant = true;
  for (const auto& o : ops) {
    A.name += (A.name.empty() ? "" : " o ") + o.name;
    A.left_invariant = A.left_invariant && o.left_invariant;
  }
  A.apply = [ops](const MatrixField& F, const Eigen::VectorXd& x) -> Eigen::MatrixXcd {
    MatrixField cur = F;
    for (size_t i = ops.size() - 1; i > 0; --i) {
      const Operator& o = ops[i];
      cur = [o, cur](const Eigen::VectorXd& y) { return o.apply(cur, y); };
    }
    return ops[0].apply(cur, x);
  };
  return A;
}

MatrixField scalar_field(const SampledFunction& phi) {
  return [&phi](const Eigen::VectorXd& x) { return Eigen::MatrixXcd::Constant(1, 1, interpolate(phi, x)); };
}

MatrixField scalar_field(PointFunction f) {
  return [f](const Eigen::VectorXd& x) { return Eigen::MatrixXcd::Constant(1, 1, f(x)); };
}

void check_linear(const Operator& A, int dim, double tol) {
  Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(dim, 0.2, -0.15);
  PointFunction f1 = [](const Eigen::VectorXd& x) { return cd(std::exp(-x.squaredNorm()) * (1 + x[0])); };
  PointFunction f2 = [](const Eigen::VectorXd& x) {
    return std::polar(1.0, 0.3 * x.sum() + 0.5 * x[x.size() - 1]) / (1 + x.squaredNorm());
  };
  const cd a(1.7, -0.3), b(-0.6, 2);
  PointFunction mix = [&](const Eigen::VectorXd& x) { return a * f1(x) + b * f2(x); };
  const cd lhs = A.apply(scalar_field(mix), p)(0, 0);
  const cd rhs = a * A.apply(scalar_field(f1), p)(0, 0) + b * A.apply(scalar_field(f2), p)(0, 0);
  if (!(std::abs(lhs - rhs) <= tol * std::max(1.0, std::abs(rhs))))
    fail(ErrorCode::NonLinearOperatorDetected, "operator '" + A.name + "' fails the linearity spot check");
}

SymbolField kn_symbol(const Operator& A, const FlatRepSpec& spec, const GridSpec& x_grid, const LambdaGrid& lg) {
  if (x_grid.dims() != spec.algebra.dim) fail(ErrorCode::GridMismatch, "symbol x-grid does not match the group");
  check_linear(A, spec.algebra.dim);
  SymbolField s{x_grid, lg, std::vector<std::vector<Eigen::MatrixXcd>>(x_grid.size(), std::vector<Eigen::MatrixXcd>(lg.size()))};
  parallel_for(int(lg.size()), [&](int m) {
    const double l = lg.nodes[m];
    MatrixField rho = [&spec, l](const Eigen::VectorXd& y) { return rep_matrix(spec, l, y); };
    for (Eigen::Index k = 0; k < x_grid.size(); ++k) {
      Eigen::VectorXd x = x_grid.point(k);
      s.a[k][m] = rep_matrix(spec, l, x).adjoint() * A.apply(rho, x);
    }
  });
  return s;
}

SymbolField constant_symbol(const FlatRepSpec& spec, const GridSpec& x_grid, const LambdaGrid& lg, cd value) {
  Eigen::MatrixXcd I = value * Eigen::MatrixXcd::Identity(spec.M(), spec.M());
  return SymbolField{x_grid, lg, std::vector<std::vector<Eigen::MatrixXcd>>(x_grid.size(), std::vector<Eigen::MatrixXcd>(lg.size(), I))};
}

SampledFunction kn_quantize(const SymbolField& a, const FourierFamily& fam, const FlatRepSpec& spec) {
  if (a.lambda_grid.nodes != fam.lambda_grid.nodes || a.lambda_grid.weights != fam.lambda_grid.weights)
    fail(ErrorCode::GridMismatch, "symbol and Fourier family use different lambda grids");
  if (a.x_grid.dims() != spec.algebra.dim) fail(ErrorCode::GridMismatch, "symbol x-grid does not match the group");
  Eigen::VectorXcd out(a.x_grid.size());
  parallel_for(int(a.x_grid.size()), [&](int k) {
    Eigen::VectorXd x = a.x_grid.point(k);
    cd s = 0;
    for (Eigen::Index m = 0; m < fam.lambda_grid.size(); ++m) {
      const double l = fam.lambda_grid.nodes[m];
      if (a.a[k][m].rows() != fam.ops[m].rows()) fail(ErrorCode::GridMismatch, "symbol and family matrix sizes differ");
      s += fam.lambda_grid.weights[m] * density(spec, l) * trace_rep_product(spec, l, x, a.a[k][m] * fam.ops[m]);
    }
    out[k] = s;
  });
  return SampledFunction(a.x_grid, out, SpaceTag::Group);
}

SampledFunction kn_quantize(const SymbolField& a, const SampledFunction& phi, const QuantSpec& q) {
  return kn_quantize(a, fourier_pi(phi, q, a.lambda_grid), q.rep);
}

double symbol_x_dependence(const SymbolField& a, const Eigen::MatrixXcd& Q) {
  double worst = 0;
  for (Eigen::Index m = 0; m < a.lambda_grid.size(); ++m) {
    std::vector<Eigen::MatrixXcd> c;
    double nrm = 0;
    for (const auto& ax : a.a) {
      c.push_back(Q.adjoint() * ax[m] * Q);
      nrm = std::max(nrm, c.back().norm());
    }
    if (nrm == 0) continue;
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = i + 1; j < c.size(); ++j) worst = std::max(worst, (c[i] - c[j]).norm() / nrm);
  }
  return worst;
}

double flat_taper(double r_xi, double R, int m) { return 1 - smoothstep((r_xi - R) / R, m); }

double character_consistency(const QuantSpec& q, double lambda, const Eigen::VectorXd& x, double R,
                             const Eigen::MatrixXcd& Q) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "character consistency at lambda = 0");
  const auto& g = q.rep.algebra;
  check_dim(g, x.size(), "group element");
  Eigen::VectorXd xd = dilation_apply<double>(g, std::abs(lambda), x);
  const double central = sgn(lambda) * q.rep.orbit.ell1() * xd[0];
  PointFunction chi = [&](const Eigen::VectorXd& xi) {
    return std::polar(flat_taper(xi.norm(), R), kTwoPi * (central + xi.dot(xd.tail(g.dim - 1))));
  };
  SampledFunction s = sample(chi, q.zdual, SpaceTag::CentralDual);
  return subspace_residual(Q, pedersen_op(q, sgn(lambda), s), rep_matrix(q.rep, lambda, x));
}

}  // namespace nilharm
