#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilharm/algebra.hpp"

namespace nilharm {

// Linear functionals are coordinate vectors in the dual basis e^1..e^n.

struct FlatOrbitData {
  VecQ ell;                // supported on the dual of the centre, nonzero
  std::vector<int> jumps;  // 1-based, {2, ..., dim}
  Rational pf;             // Pfaffian of B_ell, sign as computed
  Rational kappa;          // weight of the central direction
  Rational Q;
  int dim = 0;

  Rational pf_abs() const { return abs(pf); }
  Rational pf_sq() const { return pf * pf; }
  double ell1() const { return ell[0].get_d(); }
};

MatQ adjoint_matrix(const NilpotentLieAlgebra& g, const VecQ& x);
// xi o Ad_{x^{-1}}
VecQ coadjoint_apply(const NilpotentLieAlgebra& g, const VecQ& x, const VecQ& xi);
// rows span {xi o ad_u}
MatQ orbit_tangent_basis(const NilpotentLieAlgebra& g, const VecQ& xi);
std::vector<int> jump_indices(const NilpotentLieAlgebra& g, const VecQ& xi);
// B_xi = (xi([e_j, e_i]))_{j,i in J}
MatQ pfaffian_matrix(const NilpotentLieAlgebra& g, const VecQ& xi, const std::vector<int>& J);
Rational pfaffian_abs(const NilpotentLieAlgebra& g, const VecQ& xi, const std::vector<int>& J);

struct FlatVerdict {
  bool flat = false;
  std::string reason;
  std::optional<FlatOrbitData> data;
};

// CenterNotOneDim is thrown; a functional vanishing on the centre gives a negative verdict
FlatVerdict is_flat_si_z(const NilpotentLieAlgebra& g, const VecQ& xi);
// as above but throws (ZeroFunctionalOnCenter, ConfigError) instead of returning a verdict
FlatOrbitData flat_orbit_data(const NilpotentLieAlgebra& g, const VecQ& xi);

double plancherel_density(const FlatOrbitData& d, double lambda);
std::string density_formula(const FlatOrbitData& d);

template <typename Scalar>
Vec<Scalar> dual_dilation(const NilpotentLieAlgebra& g, const Scalar& lambda, const Vec<Scalar>& xi) {
  return dilation_apply<Scalar>(g, lambda, xi);
}

}  // namespace nilharm
