#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <string>

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace nilharm {

using Rational = mpq_class;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VecQ = Vec<Rational>;
using MatQ = Mat<Rational>;

// accepts "p/q", "p", or a finite decimal like "0.25"
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);
inline double to_double(const Rational& q) { return q.get_d(); }

template <typename Scalar>
Scalar from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }

inline Eigen::VectorXd to_double(const VecQ& v) {
  Eigen::VectorXd r(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = v[i].get_d();
  return r;
}

// exact rational power with integer exponent
Rational pow(const Rational& base, long e);

}  // namespace nilharm
