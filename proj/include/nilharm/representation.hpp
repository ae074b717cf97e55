#pragma once

#include <memory>

#include "nilharm/grid.hpp"
#include "nilharm/orbits.hpp"

namespace nilharm {

// real polynomial in group coordinates x (dim d) and model variables t (dim n)
struct Monomial {
  double c = 0;
  std::vector<int> px, pt;
};

struct Polynomial {
  std::vector<Monomial> terms;

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& t) const;
  bool depends_on_t() const;
  bool depends_on_x(int i) const;
};

// pi(x) f(t) = e^{2 pi i phase(x, t)} f(t + shift(x))
struct Realization {
  int n = 0;
  std::vector<Polynomial> shift;  // n polynomials in x only
  Polynomial phase;
  std::string kind;

  Eigen::VectorXd shift_at(const Eigen::VectorXd& x) const;
};

Realization heisenberg_realization(int n, double ell1);
// action x^{-1}.t = t + s(x) and cocycle a(x, t) paired with xi; validated against the group law
Realization polynomial_realization(const NilpotentLieAlgebra& g, std::vector<Polynomial> action,
                                   std::vector<Polynomial> cocycle, const Eigen::VectorXd& xi);

// max over random triples of |e^{2 pi i (p(x,t) + p(y,t+s(x)) - p(xy,t))} - 1| and |s(x)+s(y)-s(xy)|
double realization_defect(const NilpotentLieAlgebra& g, const Realization& r, int samples = 64, unsigned seed = 7);

struct FlatRepSpec {
  NilpotentLieAlgebra algebra;
  FlatOrbitData orbit;
  Realization realization;
  GridSpec rep_grid;
  double tol_rep = 1e-6;

  int n() const { return realization.n; }
  Eigen::Index M() const { return rep_grid.size(); }
};

FlatRepSpec heisenberg_rep(const NilpotentLieAlgebra& g, const FlatOrbitData& orbit, const GridSpec& rep_grid);
FlatRepSpec make_rep(const NilpotentLieAlgebra& g, const FlatOrbitData& orbit, Realization r, const GridSpec& rep_grid,
                     double tol_rep = 1e-6);

// f -> f(. + a) on the periodic grid, spectral
Eigen::MatrixXcd translation_matrix(const GridSpec& grid, const Eigen::VectorXd& a);

// pi_lambda(x) = pi(delta_lambda x), conjugated for lambda < 0
Eigen::MatrixXcd rep_matrix(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x);
Eigen::MatrixXcd conjugate_rep(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& x);
// central difference in exponential coordinates, Richardson-extrapolated over steps h and h/2
Eigen::MatrixXcd rep_derived(const FlatRepSpec& spec, double lambda, const Eigen::VectorXd& v, double h = 1e-3);

// sum_k c_k pi_lambda(x_k), grouped by translation amount; rows of points are group elements
Eigen::MatrixXcd rep_sum(const FlatRepSpec& spec, double lambda, const Eigen::MatrixXd& points,
                         const Eigen::VectorXcd& c);

// orthonormal tensor Hermite functions of width s, k per axis, as columns
Eigen::MatrixXcd hermite_subspace(const GridSpec& grid, int k, double s = 1);
// ||Q*(A - B)Q||_F / sqrt(cols)
double subspace_residual(const Eigen::MatrixXcd& Q, const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

// central character of pi_lambda at central coordinate z
cd central_character(const FlatRepSpec& spec, double lambda, double z);

}  // namespace nilharm
