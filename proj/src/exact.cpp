#include "nilharm/exact.hpp"

#include <cstdlib>

#include "nilharm/error.hpp"

namespace nilharm {

Rational parse_rational(const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (ch != ' ') s += ch;
  if (s.empty()) fail(ErrorCode::ConfigError, "empty rational");
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
        fail(ErrorCode::ConfigError, "bad rational '" + s0 + "'");
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      Rational q(mpz_class(digits.empty() || digits == "-" || digits == "+" ? "0" : digits, 10),
                 mpz_class("1" + std::string(s.size() - dot - 1, '0'), 10));
      q.canonicalize();
      return q;
    }
    if (!s.empty() && s[0] == '+') s = s.substr(1);
    Rational q(s, 10);
    if (q.get_den() == 0) fail(ErrorCode::ConfigError, "zero denominator in '" + s0 + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ConfigError, "bad rational '" + s0 + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow(const Rational& base, long e) {
  Rational r = 1, b = base;
  bool inv = e < 0;
  unsigned long n = std::labs(e);
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  if (inv) {
    if (r == 0) fail(ErrorCode::ZeroLambda, "zero to a negative power");
    r = 1 / r;
  }
  return r;
}

std::vector<int> rref(MatQ& a) {
  std::vector<int> piv;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.row(p).swap(a.row(r));
    Rational inv = 1 / a(r, c);
    for (Eigen::Index j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (Eigen::Index j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(int(c));
    ++r;
  }
  return piv;
}

int rank(MatQ a) { return int(rref(a).size()); }

MatQ nullspace(const MatQ& a0) {
  MatQ a = a0;
  auto piv = rref(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (int p : piv) is_piv[p] = true;
  MatQ ns(a.cols(), a.cols() - Eigen::Index(piv.size()));
  Eigen::Index col = 0;
  for (Eigen::Index f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    for (Eigen::Index i = 0; i < a.cols(); ++i) ns(i, col) = 0;
    ns(f, col) = 1;
    for (size_t r = 0; r < piv.size(); ++r) ns(piv[r], col) = -a(Eigen::Index(r), f);
    ++col;
  }
  return ns;
}

MatQ row_basis(const MatQ& a0) {
  MatQ a = a0;
  auto piv = rref(a);
  return a.topRows(Eigen::Index(piv.size()));
}

Rational determinant(MatQ a) {
  if (a.rows() != a.cols()) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  Rational det = 1;
  const Eigen::Index n = a.rows();
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (Eigen::Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Rational pfaffian(const MatQ& a) {
  const Eigen::Index n = a.rows();
  if (n != a.cols()) fail(ErrorCode::NonAntisymmetric, "pfaffian of non-square matrix");
  if (n % 2) fail(ErrorCode::OddJumpSet, "pfaffian of odd-size matrix");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(i, j) != -a(j, i)) fail(ErrorCode::NonAntisymmetric, "pfaffian of non-antisymmetric matrix");
  if (n == 0) return 1;
  Rational pf = 0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (a(0, j) == 0) continue;
    std::vector<Eigen::Index> keep;
    for (Eigen::Index k = 1; k < n; ++k)
      if (k != j) keep.push_back(k);
    MatQ minor(n - 2, n - 2);
    for (size_t r = 0; r < keep.size(); ++r)
      for (size_t c = 0; c < keep.size(); ++c) minor(Eigen::Index(r), Eigen::Index(c)) = a(keep[r], keep[c]);
    Rational term = a(0, j) * pfaffian(minor);
    if (j % 2 == 0) term = -term;
    pf += term;
  }
  return pf;
}

}  // namespace nilharm
