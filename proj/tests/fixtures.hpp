#pragma once

#include <random>
#include <string>

#include "nilharm/algebra.hpp"

namespace fixtures {

inline const char* kHeisenberg = R"({"dim":3,"names":["Z","Y","X"],"brackets":[[3,2,1,"1"]],"weights":["2","1","1"]})";
inline const char* kHeisenberg2 =
    R"({"dim":5,"names":["Z","Y1","Y2","X1","X2"],"brackets":[[4,2,1,"1"],[5,3,1,"1"]],"weights":[2,1,1,1,1]})";
inline const char* kFiliform =
    R"({"dim":4,"names":["Z","W","Y","X"],"brackets":[[4,3,2,"1"],[4,2,1,"1"]],"weights":[3,2,1,1]})";
inline const char* kAbelian = R"({"dim":3,"brackets":[],"weights":[1,1,1]})";

// strictly upper triangular n x n matrices, basis E_ij ordered by decreasing height j - i
struct UpperTriangular {
  int n;
  std::vector<std::pair<int, int>> basis;
  nilharm::NilpotentLieAlgebra g;

  explicit UpperTriangular(int n_) : n(n_) {
    for (int h = n - 1; h >= 1; --h)
      for (int i = 0; i + h < n; ++i) basis.push_back({i, i + h});
    auto index = [&](int i, int j) {
      for (size_t a = 0; a < basis.size(); ++a)
        if (basis[a] == std::make_pair(i, j)) return int(a);
      return -1;
    };
    std::vector<nilharm::BracketSpec> br;
    std::vector<nilharm::Rational> w;
    for (size_t a = 0; a < basis.size(); ++a) {
      w.push_back(basis[a].second - basis[a].first);
      for (size_t b = a + 1; b < basis.size(); ++b) {
        auto [i, j] = basis[a];
        auto [k, l] = basis[b];
        // [E_ij, E_kl] = d_jk E_il - d_li E_kj
        if (j == k) br.push_back({int(a) + 1, int(b) + 1, index(i, l) + 1, 1});
        if (l == i) br.push_back({int(a) + 1, int(b) + 1, index(k, j) + 1, -1});
      }
    }
    g = nilharm::make_algebra(int(basis.size()), {}, br, w, "n" + std::to_string(n));
  }

  nilharm::MatQ matrix(const nilharm::VecQ& v) const {
    nilharm::MatQ m = nilharm::MatQ::Zero(n, n);
    for (size_t a = 0; a < basis.size(); ++a) m(basis[a].first, basis[a].second) = v[a];
    return m;
  }
  nilharm::VecQ coords(const nilharm::MatQ& m) const {
    nilharm::VecQ v(basis.size());
    for (size_t a = 0; a < basis.size(); ++a) v[a] = m(basis[a].first, basis[a].second);
    return v;
  }
};

inline nilharm::MatQ mat_exp(const nilharm::MatQ& x) {
  nilharm::MatQ term = nilharm::MatQ::Identity(x.rows(), x.cols()), sum = term;
  for (int m = 1; m < x.rows(); ++m) {
    term = nilharm::MatQ(term * x);
    for (Eigen::Index i = 0; i < term.size(); ++i) term.data()[i] /= m;
    sum += term;
  }
  return sum;
}

inline nilharm::MatQ mat_log_unipotent(const nilharm::MatQ& p) {
  nilharm::MatQ n = p - nilharm::MatQ::Identity(p.rows(), p.cols());
  nilharm::MatQ power = n, sum = nilharm::MatQ::Zero(p.rows(), p.cols());
  for (int m = 1; m < p.rows(); ++m) {
    nilharm::MatQ t = power;
    for (Eigen::Index i = 0; i < t.size(); ++i) t.data()[i] /= (m % 2 ? m : -m);
    sum += t;
    power = nilharm::MatQ(power * n);
  }
  return sum;
}

inline nilharm::VecQ random_rational(std::mt19937& rng, int dim, int range = 9) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 6);
  nilharm::VecQ v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = nilharm::Rational(num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

}  // namespace fixtures
