#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nilharm/error.hpp"
#include "nilharm/rational.hpp"

namespace nilharm {

// Basis e_1..e_n in Jordan-Holder order, [e_i, e_j] = sum_k c(i,j,k) e_k.
// Indices are 0-based in code, 1-based in config files.
struct NilpotentLieAlgebra {
  struct Entry {
    int i, j, k;
    Rational c;
    double cd;
  };

  int dim = 0;
  std::vector<std::string> names;
  std::vector<Entry> entries;  // all nonzero c(i,j,k), both orders
  std::vector<Rational> weights;
  int step = 0;
  int center_dim = 0;
  std::string label;

  Rational coef(int i, int j, int k) const;
  Eigen::VectorXd weights_d() const;
  MatQ ad(const VecQ& u) const;  // matrix of v -> [u, v]
};

struct BracketSpec {
  int i, j, k;  // 1-based
  Rational c;
};

// validates every structural invariant and computes the nilpotency step
NilpotentLieAlgebra make_algebra(int dim, std::vector<std::string> names, const std::vector<BracketSpec>& brackets,
                                 std::vector<Rational> weights, std::string label = "");
NilpotentLieAlgebra load_algebra(const std::string& json_text);
NilpotentLieAlgebra load_algebra_file(const std::string& path);
std::string algebra_to_json(const NilpotentLieAlgebra& g);

// H_n in the order Z, Y_1..Y_n, X_1..X_n with [X_i, Y_i] = Z
NilpotentLieAlgebra heisenberg_algebra(int n);

inline void check_dim(const NilpotentLieAlgebra& g, Eigen::Index n, const char* what) {
  if (n != g.dim)
    fail(ErrorCode::DimensionMismatch,
         std::string(what) + ": length " + std::to_string(n) + " but dim " + std::to_string(g.dim));
}

template <typename Scalar>
Vec<Scalar> bracket(const NilpotentLieAlgebra& g, const Vec<Scalar>& u, const Vec<Scalar>& v) {
  check_dim(g, u.size(), "bracket");
  check_dim(g, v.size(), "bracket");
  Vec<Scalar> r = Vec<Scalar>::Zero(g.dim);
  for (const auto& e : g.entries) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      r[e.k] += e.c * u[e.i] * v[e.j];
    else
      r[e.k] += Scalar(e.cd) * u[e.i] * v[e.j];
  }
  return r;
}

// log(exp x exp y), series truncated at the nilpotency step (terms through degree 5)
template <typename Scalar>
Vec<Scalar> bch_multiply(const NilpotentLieAlgebra& g, const Vec<Scalar>& x, const Vec<Scalar>& y) {
  check_dim(g, x.size(), "bch_multiply");
  check_dim(g, y.size(), "bch_multiply");
  Vec<Scalar> z = x + y;
  if (g.step < 2) return z;
  auto br = [&](const Vec<Scalar>& a, const Vec<Scalar>& b) { return bracket<Scalar>(g, a, b); };
  auto q = [](long p, long d) { return from_rational<Scalar>(Rational(p, d)); };
  Vec<Scalar> xy = br(x, y);
  z += q(1, 2) * xy;
  if (g.step < 3) return z;
  Vec<Scalar> xxy = br(x, xy), yxy = br(y, xy);
  z += q(1, 12) * (xxy - yxy);
  if (g.step < 4) return z;
  Vec<Scalar> yxxy = br(y, xxy);
  z -= q(1, 24) * yxxy;
  if (g.step < 5) return z;
  Vec<Scalar> yx = -xy;
  Vec<Scalar> yyx = br(y, yx), yyyx = br(y, yyx), xxxy = br(x, xxy);
  z -= q(1, 720) * (br(y, yyyx) + br(x, xxxy));
  z += q(1, 360) * (br(x, yyyx) + br(y, xxxy));
  z += q(1, 120) * (br(y, br(x, yxy)) + br(x, br(y, br(x, yx))));
  return z;
}

template <typename Scalar>
Vec<Scalar> group_inverse(const Vec<Scalar>& x) {
  return -x;
}

namespace detail {
inline Rational exact_power(const Rational& a, const Rational& w) {
  if (w.get_den() != 1) fail(ErrorCode::DilationIncompatible, "exact dilation needs integer weights");
  return pow(a, w.get_num().get_si());
}
}  // namespace detail

// delta_lambda; for lambda < 0 the centre (e_1 when dim z = 1) also flips sign
template <typename Scalar>
Vec<Scalar> dilation_apply(const NilpotentLieAlgebra& g, const Scalar& lambda, const Vec<Scalar>& x) {
  check_dim(g, x.size(), "dilation_apply");
  if (lambda == Scalar(0)) fail(ErrorCode::ZeroLambda, "dilation by zero");
  const bool neg = lambda < Scalar(0);
  if (neg && g.center_dim != 1)
    fail(ErrorCode::NegativeLambdaNeedsOneDimCenter, "negative dilation needs a one-dimensional centre");
  Scalar a = neg ? Scalar(-lambda) : lambda;
  Vec<Scalar> r(g.dim);
  for (int j = 0; j < g.dim; ++j) {
    if constexpr (std::is_same_v<Scalar, Rational>)
      r[j] = detail::exact_power(a, g.weights[j]) * x[j];
    else
      r[j] = std::pow(a, g.weights[j].get_d()) * x[j];
  }
  if (neg) r[0] = -r[0];
  return r;
}

Rational homogeneous_dimension(const NilpotentLieAlgebra& g);
std::vector<VecQ> compute_center(const NilpotentLieAlgebra& g);
VecQ basis_vector(const NilpotentLieAlgebra& g, int i);

}  // namespace nilharm
