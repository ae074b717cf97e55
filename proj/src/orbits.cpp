#include "nilharm/orbits.hpp"

#include <cmath>

#include "nilharm/exact.hpp"

namespace nilharm {

MatQ adjoint_matrix(const NilpotentLieAlgebra& g, const VecQ& x) {
  check_dim(g, x.size(), "adjoint_matrix");
  MatQ ad = g.ad(x);
  MatQ term = MatQ::Identity(g.dim, g.dim), sum = term;
  for (int m = 1; m <= g.dim; ++m) {
    term = MatQ(term * ad);
    for (Eigen::Index i = 0; i < term.size(); ++i) term.data()[i] /= m;
    sum += term;
  }
  return sum;
}

VecQ coadjoint_apply(const NilpotentLieAlgebra& g, const VecQ& x, const VecQ& xi) {
  check_dim(g, xi.size(), "coadjoint_apply");
  MatQ a = adjoint_matrix(g, VecQ(-x));
  return a.transpose() * xi;
}

MatQ orbit_tangent_basis(const NilpotentLieAlgebra& g, const VecQ& xi) {
  check_dim(g, xi.size(), "orbit_tangent_basis");
  // row i: xi o ad_{e_i}, entry j = xi([e_i, e_j])
  MatQ t = MatQ::Zero(g.dim, g.dim);
  for (const auto& e : g.entries) t(e.i, e.j) += xi[e.k] * e.c;
  return row_basis(t);
}

std::vector<int> jump_indices(const NilpotentLieAlgebra& g, const VecQ& xi) {
  MatQ t = orbit_tangent_basis(g, xi);
  std::vector<int> J;
  int prev = 0;
  for (int j = 1; j <= g.dim; ++j) {
    int r = t.rows() ? rank(MatQ(t.leftCols(j))) : 0;
    if (r > prev) J.push_back(j);
    prev = r;
  }
  return J;
}

MatQ pfaffian_matrix(const NilpotentLieAlgebra& g, const VecQ& xi, const std::vector<int>& J) {
  const int m = int(J.size());
  MatQ b(m, m);
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      VecQ br = bracket<Rational>(g, basis_vector(g, J[r] - 1), basis_vector(g, J[c] - 1));
      b(r, c) = xi.dot(br);
    }
  return b;
}

Rational pfaffian_abs(const NilpotentLieAlgebra& g, const VecQ& xi, const std::vector<int>& J) {
  check_dim(g, xi.size(), "pfaffian_abs");
  if (J.size() % 2) fail(ErrorCode::OddJumpSet, "jump set of odd size " + std::to_string(J.size()));
  return abs(pfaffian(pfaffian_matrix(g, xi, J)));
}

FlatVerdict is_flat_si_z(const NilpotentLieAlgebra& g, const VecQ& xi) {
  check_dim(g, xi.size(), "is_flat_si_z");
  if (g.center_dim != 1)
    fail(ErrorCode::CenterNotOneDim, "centre has dimension " + std::to_string(g.center_dim) + ", expected 1");
  FlatVerdict v;
  // the centre is span{e_1} in Jordan-Holder order once it is one-dimensional
  if (xi[0] == 0) {
    v.reason = "functional vanishes on the centre";
    return v;
  }
  MatQ t = orbit_tangent_basis(g, xi);
  // tangent vectors always vanish on the centre; flatness is a dimension count
  if (t.rows() != g.dim - 1) {
    v.reason = "orbit dimension " + std::to_string(t.rows()) + " < " + std::to_string(g.dim - 1);
    return v;
  }
  FlatOrbitData d;
  d.dim = g.dim;
  d.ell = VecQ::Zero(g.dim);
  d.ell[0] = xi[0];
  d.jumps = jump_indices(g, d.ell);
  d.pf = pfaffian(pfaffian_matrix(g, d.ell, d.jumps));
  if (d.pf == 0) {
    v.reason = "degenerate Pfaffian";
    return v;
  }
  d.kappa = g.weights[0];
  d.Q = homogeneous_dimension(g);
  v.flat = true;
  v.data = d;
  return v;
}

FlatOrbitData flat_orbit_data(const NilpotentLieAlgebra& g, const VecQ& xi) {
  FlatVerdict v = is_flat_si_z(g, xi);
  if (v.flat) return *v.data;
  if (xi[0] == 0) fail(ErrorCode::ZeroFunctionalOnCenter, "functional vanishes on the centre");
  fail(ErrorCode::ConfigError, "orbit is not flat: " + v.reason);
}

double plancherel_density(const FlatOrbitData& d, double lambda) {
  if (lambda == 0) fail(ErrorCode::ZeroLambda, "density at lambda = 0");
  return d.kappa.get_d() * std::pow(std::abs(lambda), d.Q.get_d() - 1) * d.pf_abs().get_d();
}

std::string density_formula(const FlatOrbitData& d) {
  Rational c = d.kappa * d.pf_abs();
  return to_string(c) + "*|lambda|^" + to_string(Rational(d.Q - 1));
}

}  // namespace nilharm
