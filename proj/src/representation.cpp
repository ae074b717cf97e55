#include "nilharm/representation.hpp"

#include <map>
#include <random>
#include <sstream>

namespace nilharm {

namespace {

double ipow(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int exponent(const std::vector<int>& p, int i) { return i < int(p.size()) ? p[i] : 0; }

double monomial_x(const Monomial& m, const Eigen::VectorXd& x) {
  double v = m.c;
  for (size_t i = 0; i < m.px.size(); ++i)
    if (m.px[i]) v *= ipow(x[i], m.px[i]);
  return v;
}

bool is_unit(const std::vector<int>& p, int i) {
  for (int j = 0; j < int(p.size()); ++j)
    if (p[j] != (j == i ? 1 : 0)) return false;
  return exponent(p, i) == 1;
}

bool is_zero(const std::vector<int>& p) {
  for (int e : p)
    if (e) return false;
  return true;
}

// phase = sum_alpha q_alpha(x) t^alpha, grouped by the t-exponent
struct PhaseSplit {
  std::vector<std::vector<int>> alphas;
  std::vector<std::vector<const Monomial*>> terms;
  std::vector<Eigen::VectorXd> tpow;

  PhaseSplit(const Polynomial& p, const GridSpec& grid) {
    for (const auto& m : p.terms) {
      std::vector<int> a(grid.dims());
      for (int j = 0; j < grid.dims(); ++j) a[j] = exponent(m.pt, j);
      auto it = std::find(alphas.begin(), alphas.end(), a);
      if (it == alphas.end()) {
        alphas.push_back(a);
        terms.emplace_back();
        it = alphas.end() - 1;
      }
      terms[it - alphas.begin()].push_back(&m);
    }
    for (const auto& a : alphas) {
      Eigen::VectorXd v(grid.size());
      for (Eigen::Index q = 0; q < grid.size(); ++q) {
        auto idx = grid.index(q);
        double s = 1;
        for (int j = 0; j < grid.dims(); ++j) s *= ipow(grid.coord(j, idx[j]), a[j]);
        v[q] = s;
      }
      tpow.push_back(v);
    }
  }

  Eigen::VectorXd arg(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(tpow.empty() ? 0 : tpow[0].size());
    for (size_t a = 0; a < alphas.size(); ++a) {
      double q = 0;
      for (const Monomial* m : terms[a]) q += monomial_x(*m, x);
      if (q != 0) r += q * tpow[a];
    }
    return r;
  }
};

Eigen::VectorXcd phase_vector(const Eigen::VectorXd& arg, Eigen::Index M) {
  Eigen::VectorXcd v(M);
  for (Eigen::Index q = 0; q < M; ++q) v[q] = arg.size() ? std::polar(1.0, kTwoPi * arg[q]) : cd(1);
  return v;
}

Eigen::MatrixXcd translation_1d(int N, double h, double a) {
  // T(j, l) = g(a + (j - l) h), g(u) = (1/N) sum_k e^{2 pi i kappa_k u}
  Eigen::VectorXcd g(2 * N - 1);
  for (int d = -(N - 1); d <= N - 1; ++d) {
    const double th = kTwoPi * (a + d * h) / (N * h);
    const cd q = std::polar(1.0, th);
    cd s = 0;
    if (std::abs(1.0 - q) < 1e-6) {
      for (int k = -N / 2; k < N / 2; ++k) s += std::polar(1.0, th * k);
    } else {
      // geometric sum over k = -N/2 .. N/2-1
      s = std::polar(1.0, -th * (N / 2)) * (1.0 - std::polar(1.0, th * N)) / (1.0 - q);
    }
    g[d + N - 1] = s / double(N);
  }
  Eigen::MatrixXcd T(N, N);
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l) T(j, l) = g[j - l + N - 1];
  return T;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

void check_translation(const GridSpec& grid, const Eigen::VectorXd& s) {
  for (int a = 0; a < grid.dims(); ++a)
    if (std::abs(s[a]) > 0.75 * grid.L[a]) {
      std::ostringstream os;
      os << "translation by " << s[a] << " exceeds 0.75 of the rep-grid half-width " << grid.L[a];
      fail(ErrorCode::GridTooSmallForTranslation, os.str());
    }
}

Eigen::VectorXd dilate(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "representation parameter lambda = 0");
  check_dim(spec.algebra, x.size(), "group element");
  return dilation_apply<double>(spec.algebra, std::abs(lambda), x);
}

}  // namespace

double Polynomial::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const {
  double s = 0;
  for (const auto& m : terms) {
    double v = monomial_x(m, x);
    for (size_t j = 0; j < m.pt.size(); ++j)
      if (m.pt[j]) v *= ipow(t[j], m.pt[j]);
    s += v;
  }
  return s;
}

bool Polynomial::depends_on_t() const {
  for (const auto& m : terms)
    if (m.c != 0 && !is_zero(m.pt)) return true;
  return false;
}

bool Polynomial::depends_on_x(int i) const {
  for (const auto& m : terms)
    if (m.c != 0 && exponent(m.px, i)) return true;
  return false;
}

Eigen::VectorXd Realization::shift_at(const Eigen::VectorXd& x) const {
  Eigen::VectorXd s(n);
  Eigen::VectorXd t0 = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) s[i] = shift[i](x, t0);
  return s;
}

Realization heisenberg_realization(int n, double ell1) {
  const int d = 2 * n + 1;
  Realization r;
  r.n = n;
  r.kind = "heisenberg";
  auto unit = [](int size, int i) {
    std::vector<int> p(size, 0);
    p[i] = 1;
    return p;
  };
  r.phase.terms.push_back({ell1, unit(d, 0), std::vector<int>(n, 0)});
  for (int i = 0; i < n; ++i) {
    r.shift.push_back(Polynomial{{{1.0, unit(d, 1 + n + i), std::vector<int>(n, 0)}}});
    r.phase.terms.push_back({ell1, unit(d, 1 + i), unit(n, i)});
    std::vector<int> xy(d, 0);
    xy[1 + i] = xy[1 + n + i] = 1;
    r.phase.terms.push_back({ell1 / 2, xy, std::vector<int>(n, 0)});
  }
  return r;
}

Realization polynomial_realization(const NilpotentLieAlgebra& g, std::vector<Polynomial> action,
                                   std::vector<Polynomial> cocycle, const Eigen::VectorXd& xi) {
  Realization r;
  r.n = int(action.size());
  r.kind = "polynomial";
  if (xi.size() != Eigen::Index(cocycle.size()))
    fail(ErrorCode::BadRealization, "functional length does not match the cocycle components");
  for (int i = 0; i < r.n; ++i) {
    Polynomial s;
    int unit = 0;
    for (const auto& m : action[i].terms) {
      if (int(m.px.size()) > g.dim || int(m.pt.size()) > r.n)
        fail(ErrorCode::BadRealization, "monomial exponent list too long");
      if (is_zero(m.pt)) {
        s.terms.push_back(m);
      } else if (is_unit(m.pt, i) && is_zero(m.px) && m.c == 1) {
        ++unit;
      } else {
        fail(ErrorCode::BadRealization, "action must have the form t + s(x)");
      }
    }
    if (unit != 1) fail(ErrorCode::BadRealization, "action must have the form t + s(x)");
    r.shift.push_back(s);
  }
  for (size_t j = 0; j < cocycle.size(); ++j)
    for (auto m : cocycle[j].terms) {
      m.c *= xi[j];
      if (m.c != 0) r.phase.terms.push_back(m);
    }
  return r;
}

double realization_defect(const NilpotentLieAlgebra& g, const Realization& r, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  auto rnd = [&](int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = u(rng);
    return v;
  };
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x = rnd(g.dim), y = rnd(g.dim), t = rnd(r.n);
    Eigen::VectorXd xy = bch_multiply<double>(g, x, y);
    Eigen::VectorXd sx = r.shift_at(x);
    worst = std::max(worst, (sx + r.shift_at(y) - r.shift_at(xy)).cwiseAbs().maxCoeff());
    const double d = r.phase(x, t) + r.phase(y, t + sx) - r.phase(xy, t);
    worst = std::max(worst, std::abs(std::polar(1.0, kTwoPi * d) - 1.0));
  }
  return worst;
}

FlatRepSpec make_rep(const NilpotentLieAlgebra& g, const FlatOrbitData& orbit, Realization r, const GridSpec& rep_grid,
                     double tol_rep) {
  if (2 * r.n != int(orbit.jumps.size()))
    fail(ErrorCode::BadRealization, "model dimension must be half the number of jump indices");
  if (rep_grid.dims() != r.n) fail(ErrorCode::DimensionMismatch, "rep grid dimension does not match the realization");
  if (int(r.shift.size()) != r.n) fail(ErrorCode::BadRealization, "one shift polynomial per model variable");
  // the centre acts by the scalar character e^{2 pi i ell(z)}
  for (const auto& s : r.shift)
    if (s.depends_on_x(0) || s.depends_on_t()) fail(ErrorCode::BadRealization, "translations must not involve the centre");
  double c0 = 0;
  for (const auto& m : r.phase.terms) {
    if (!exponent(m.px, 0)) continue;
    if (!is_unit(m.px, 0) || !is_zero(m.pt)) fail(ErrorCode::BadRealization, "central phase must be linear in z");
    c0 += m.c;
  }
  if (std::abs(c0 - orbit.ell1()) > 1e-12 * std::max(1.0, std::abs(c0)))
    fail(ErrorCode::BadRealization, "central character does not match the functional");
  const double d = realization_defect(g, r);
  if (d > tol_rep) {
    std::ostringstream os;
    os << "realization violates the group law (defect " << d << ")";
    fail(ErrorCode::BadRealization, os.str());
  }
  return FlatRepSpec{g, orbit, std::move(r), rep_grid, tol_rep};
}

FlatRepSpec heisenberg_rep(const NilpotentLieAlgebra& g, const FlatOrbitData& orbit, const GridSpec& rep_grid) {
  if (g.dim % 2 == 0) fail(ErrorCode::BadRealization, "Heisenberg realization needs an odd-dimensional algebra");
  const int n = (g.dim - 1) / 2;
  auto key = [](const NilpotentLieAlgebra& a) {
    std::vector<std::tuple<int, int, int, std::string>> v;
    for (const auto& e : a.entries) v.emplace_back(e.i, e.j, e.k, e.c.get_str());
    std::sort(v.begin(), v.end());
    return v;
  };
  if (key(g) != key(heisenberg_algebra(n)))
    fail(ErrorCode::BadRealization, "built-in Heisenberg realization needs the algebra H_n in the order Z, Y, X");
  for (int i = 1; i < g.dim; ++i)
    if (orbit.ell[i] != 0) fail(ErrorCode::BadRealization, "built-in realization expects a functional on the centre");
  return make_rep(g, orbit, heisenberg_realization(n, orbit.ell1()), rep_grid);
}

Eigen::MatrixXcd translation_matrix(const GridSpec& grid, const Eigen::VectorXd& a) {
  Eigen::MatrixXcd T = translation_1d(grid.N[0], grid.h(0), a[0]);
  for (int ax = 1; ax < grid.dims(); ++ax) T = kron(T, translation_1d(grid.N[ax], grid.h(ax), a[ax]));
  return T;
}

Eigen::MatrixXcd rep_matrix(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x) {
  Eigen::VectorXd xd = dilate(spec, lambda, x);
  const Eigen::Index M = spec.M();
  if (xd.isZero(0)) return Eigen::MatrixXcd::Identity(M, M);
  Eigen::VectorXd s = spec.realization.shift_at(xd);
  check_translation(spec.rep_grid, s);
  PhaseSplit ps(spec.realization.phase, spec.rep_grid);
  Eigen::VectorXcd ph = phase_vector(ps.arg(xd), M);
  Eigen::MatrixXcd U = s.isZero(0) ? Eigen::MatrixXcd(ph.asDiagonal()) : Eigen::MatrixXcd(ph.asDiagonal() * translation_matrix(spec.rep_grid, s));
  if (lambda < 0) U = U.conjugate();
  return U;
}

Eigen::MatrixXcd conjugate_rep(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x) {
  return rep_matrix(spec, std::abs(lambda), x).conjugate();
}

Eigen::MatrixXcd rep_derived(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& v, double h) {
  auto central = [&](double s) -> Eigen::MatrixXcd {
    return (rep_matrix(spec, lambda, s * v) - rep_matrix(spec, lambda, -s * v)) / (2 * s);
  };
  return (4 * central(h / 2) - central(h)) / 3;
}

Eigen::MatrixXcd rep_sum(const FlatRepSpec& spec, double lambda, const Eigen::MatrixXd& points, const Eigen::VectorXcd& c) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "representation parameter lambda = 0");
  if (lambda < 0) return rep_sum(spec, -lambda, points, c.conjugate()).conjugate();
  const Eigen::Index M = spec.M();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(M, M);
  if (c.size() == 0) return acc;
  const double cmax = c.cwiseAbs().maxCoeff();
  if (cmax == 0) return acc;
  PhaseSplit ps(spec.realization.phase, spec.rep_grid);
  std::map<std::vector<double>, Eigen::VectorXcd> groups;
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    if (c[k] == cd(0)) continue;
    Eigen::VectorXd xd = dilate(spec, lambda, points.row(k).transpose());
    Eigen::VectorXd s = spec.realization.shift_at(xd);
    // negligible coefficients may sit at unreachable translations
    if (std::abs(c[k]) <= 1e-10 * cmax) continue;
    check_translation(spec.rep_grid, s);
    std::vector<double> key(s.data(), s.data() + s.size());
    auto it = groups.find(key);
    if (it == groups.end()) it = groups.emplace(key, Eigen::VectorXcd::Zero(M)).first;
    Eigen::VectorXd arg = ps.arg(xd);
    for (Eigen::Index q = 0; q < M; ++q) it->second[q] += c[k] * std::polar(1.0, kTwoPi * arg[q]);
  }
  for (const auto& [key, v] : groups) {
    Eigen::VectorXd s = Eigen::Map<const Eigen::VectorXd>(key.data(), Eigen::Index(key.size()));
    if (s.isZero(0))
      acc.diagonal() += v;
    else
      acc.noalias() += v.asDiagonal() * translation_matrix(spec.rep_grid, s);
  }
  return acc;
}

Eigen::MatrixXcd hermite_subspace(const GridSpec& grid, int k, double s) {
  std::vector<Eigen::MatrixXd> axes;
  for (int a = 0; a < grid.dims(); ++a) {
    Eigen::VectorXd u = grid.axis(a) * (std::sqrt(kTwoPi) / s);
    Eigen::MatrixXd H(u.size(), k);
    H.col(0) = (-0.5 * u.array().square()).exp().matrix();
    if (k > 1) H.col(1) = std::sqrt(2.0) * u.cwiseProduct(H.col(0));
    for (int j = 2; j < k; ++j)
      H.col(j) = std::sqrt(2.0 / j) * u.cwiseProduct(H.col(j - 1)) - std::sqrt((j - 1.0) / j) * H.col(j - 2);
    axes.push_back(H);
  }
  Eigen::MatrixXcd B = axes[0].cast<cd>();
  for (size_t a = 1; a < axes.size(); ++a) B = kron(B, axes[a].cast<cd>());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(B);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(B.rows(), B.cols());
}

double subspace_residual(const Eigen::MatrixXcd& Q, const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  return (Q.adjoint() * (A - B) * Q).norm() / std::sqrt(double(Q.cols()));
}

cd central_character(const FlatRepSpec& spec, double lambda, double z) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "representation parameter lambda = 0");
  const double a = std::pow(std::abs(lambda), spec.algebra.weights[0].get_d());
  return std::polar(1.0, (lambda > 0 ? 1 : -1) * kTwoPi * spec.orbit.ell1() * a * z);
}

}  // namespace nilharm
