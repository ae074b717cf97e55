#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nilharm/algebra.hpp"
#include "nilharm/exact.hpp"

using namespace nilharm;

namespace {

VecQ v3(long a, long b, long c) {
  VecQ v(3);
  v << Rational(a), Rational(b), Rational(c);
  return v;
}

ErrorCode code_of(const std::string& text) {
  try {
    load_algebra(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IOError;
}

}  // namespace

TEST(Algebra, LoadHeisenberg) {
  auto g = load_algebra(fixtures::kHeisenberg);
  EXPECT_EQ(g.dim, 3);
  EXPECT_EQ(g.step, 2);
  EXPECT_EQ(g.center_dim, 1);
  EXPECT_EQ(homogeneous_dimension(g), 4);
}

TEST(Algebra, LoadAbelianAndH2) {
  auto a = load_algebra(fixtures::kAbelian);
  EXPECT_EQ(a.step, 1);
  EXPECT_EQ(homogeneous_dimension(a), 3);
  auto h2 = load_algebra(fixtures::kHeisenberg2);
  EXPECT_EQ(h2.dim, 5);
  EXPECT_EQ(homogeneous_dimension(h2), 6);
}

TEST(Algebra, Rejections) {
  EXPECT_EQ(code_of(R"({"dim":3,"brackets":[[1,2,3,"1"],[2,1,3,"0"]],"weights":[1,1,2]})"),
            ErrorCode::AntisymmetryViolation);
  // ad e3 acts as a rotation on span{e1, e2}
  EXPECT_EQ(code_of(R"({"dim":3,"brackets":[[3,2,1,"1"],[3,1,2,"-1"]],"weights":[1,1,1]})"),
            ErrorCode::NotNilpotent);
  // Jacobi on (e3,e4,e5) leaves [e4,e2] = e1
  EXPECT_EQ(code_of(R"({"dim":5,"brackets":[[5,4,3,"1"],[5,3,2,"1"],[4,3,1,"1"],[4,2,1,"1"]],"weights":[1,1,1,1,1]})"),
            ErrorCode::JacobiViolation);
  EXPECT_EQ(code_of(R"({"dim":3,"brackets":[[3,2,1,"1"]],"weights":[1,1,1]})"), ErrorCode::DilationIncompatible);
  EXPECT_EQ(code_of(R"({"dim":3,"brackets":[[1,2,3,"1"]],"weights":[1,1,2]})"), ErrorCode::BadOrder);
  EXPECT_EQ(code_of("{not json"), ErrorCode::ConfigError);
}

TEST(Algebra, StepAboveFiveRejected) {
  EXPECT_THROW(fixtures::UpperTriangular(7), Error);
  try {
    fixtures::UpperTriangular u(7);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StepTooLarge);
  }
}

TEST(Algebra, BracketExamples) {
  auto g = load_algebra(fixtures::kHeisenberg);
  VecQ X = v3(0, 0, 1), Y = v3(0, 1, 0), Z = v3(1, 0, 0);
  EXPECT_EQ(bracket<Rational>(g, X, Y), Z);
  VecQ u = v3(3, -2, 5);
  EXPECT_EQ(bracket<Rational>(g, u, u), VecQ(VecQ::Zero(3)));
  auto a = load_algebra(fixtures::kAbelian);
  EXPECT_EQ(bracket<Rational>(a, u, X), VecQ(VecQ::Zero(3)));
  EXPECT_THROW(bracket<Rational>(g, u, VecQ(VecQ::Zero(2))), Error);
}

TEST(Algebra, HeisenbergProductClosedForm) {
  auto g = load_algebra(fixtures::kHeisenberg);
  std::mt19937 rng(11);
  for (int t = 0; t < 20; ++t) {
    VecQ p = fixtures::random_rational(rng, 3), q = fixtures::random_rational(rng, 3);
    // coordinates (z, y, x)
    VecQ expect(3);
    expect << p[0] + q[0] + Rational(1, 2) * (p[2] * q[1] - p[1] * q[2]), p[1] + q[1], p[2] + q[2];
    EXPECT_EQ(bch_multiply<Rational>(g, p, q), expect);
  }
}

TEST(Algebra, FiliformDegreeThree) {
  auto g = load_algebra(fixtures::kFiliform);
  EXPECT_EQ(g.step, 3);
  VecQ X = VecQ::Zero(4), Y = VecQ::Zero(4), expect(4);
  X[3] = 1;
  Y[2] = 1;
  expect << Rational(1, 12), Rational(1, 2), Rational(1), Rational(1);
  EXPECT_EQ(bch_multiply<Rational>(g, X, Y), expect);
}

TEST(Algebra, AbelianProductIsSum) {
  auto g = load_algebra(fixtures::kAbelian);
  VecQ a = v3(1, 2, 3), b = v3(-4, 5, 7);
  EXPECT_EQ(bch_multiply<Rational>(g, a, b), VecQ(a + b));
}

// exp(X) exp(Y) = exp(bch(X, Y)) for unipotent matrices, exactly, through step 5
TEST(Algebra, BchAgainstMatrixExponential) {
  for (int n = 3; n <= 6; ++n) {
    fixtures::UpperTriangular u(n);
    EXPECT_EQ(u.g.step, n - 1);
    std::mt19937 rng(100 + n);
    for (int t = 0; t < 6; ++t) {
      VecQ x = fixtures::random_rational(rng, u.g.dim, 4), y = fixtures::random_rational(rng, u.g.dim, 4);
      MatQ lhs = fixtures::mat_log_unipotent(MatQ(fixtures::mat_exp(u.matrix(x)) * fixtures::mat_exp(u.matrix(y))));
      EXPECT_EQ(u.coords(lhs), bch_multiply<Rational>(u.g, x, y)) << "n=" << n;
    }
  }
}

TEST(Algebra, GroupAxiomsAndAssociativity) {
  for (const char* spec : {fixtures::kHeisenberg, fixtures::kFiliform, fixtures::kHeisenberg2}) {
    auto g = load_algebra(spec);
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
      VecQ x = fixtures::random_rational(rng, g.dim), y = fixtures::random_rational(rng, g.dim),
           w = fixtures::random_rational(rng, g.dim);
      EXPECT_EQ(bch_multiply<Rational>(g, bch_multiply<Rational>(g, x, y), w),
                bch_multiply<Rational>(g, x, bch_multiply<Rational>(g, y, w)));
      EXPECT_EQ(bch_multiply<Rational>(g, x, VecQ(VecQ::Zero(g.dim))), x);
      EXPECT_EQ(bch_multiply<Rational>(g, x, group_inverse<Rational>(x)), VecQ(VecQ::Zero(g.dim)));
    }
  }
  fixtures::UpperTriangular u(6);
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    VecQ x = fixtures::random_rational(rng, u.g.dim, 3), y = fixtures::random_rational(rng, u.g.dim, 3),
         w = fixtures::random_rational(rng, u.g.dim, 3);
    EXPECT_EQ(bch_multiply<Rational>(u.g, bch_multiply<Rational>(u.g, x, y), w),
              bch_multiply<Rational>(u.g, x, bch_multiply<Rational>(u.g, y, w)));
  }
}

TEST(Algebra, DoubleProductMatchesRational) {
  auto g = load_algebra(fixtures::kFiliform);
  std::mt19937 rng(5);
  VecQ x = fixtures::random_rational(rng, 4), y = fixtures::random_rational(rng, 4);
  Eigen::VectorXd d = bch_multiply<double>(g, to_double(x), to_double(y));
  EXPECT_LT((d - to_double(bch_multiply<Rational>(g, x, y))).norm(), 1e-13);
}

TEST(Algebra, Dilations) {
  auto g = load_algebra(fixtures::kHeisenberg);
  EXPECT_EQ(dilation_apply<Rational>(g, 2, v3(1, 1, 1)), v3(4, 2, 2));
  EXPECT_EQ(dilation_apply<Rational>(g, -2, v3(1, 0, 0)), v3(-4, 0, 0));
  VecQ u = v3(3, -1, 2);
  EXPECT_EQ(dilation_apply<Rational>(g, 1, u), u);
  EXPECT_THROW(dilation_apply<Rational>(g, 0, u), Error);
  try {
    dilation_apply<Rational>(g, 0, u);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroLambda);
  }
  auto a = load_algebra(fixtures::kAbelian);
  try {
    dilation_apply<Rational>(a, -1, u);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeLambdaNeedsOneDimCenter);
  }
  std::mt19937 rng(9);
  for (const char* spec : {fixtures::kHeisenberg, fixtures::kFiliform}) {
    auto h = load_algebra(spec);
    for (Rational lam : {Rational(2), Rational(3, 2), Rational(5), Rational(1, 3)}) {
      for (int t = 0; t < 10; ++t) {
        VecQ x = fixtures::random_rational(rng, h.dim), y = fixtures::random_rational(rng, h.dim);
        EXPECT_EQ(dilation_apply<Rational>(h, lam, bch_multiply<Rational>(h, x, y)),
                  bch_multiply<Rational>(h, dilation_apply<Rational>(h, lam, x), dilation_apply<Rational>(h, lam, y)));
      }
    }
  }
}

TEST(Algebra, Center) {
  auto g = load_algebra(fixtures::kHeisenberg);
  auto c = compute_center(g);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], v3(1, 0, 0));
  EXPECT_EQ(compute_center(load_algebra(fixtures::kAbelian)).size(), 3u);
  auto f = load_algebra(fixtures::kFiliform);
  auto cf = compute_center(f);
  ASSERT_EQ(cf.size(), 1u);
  EXPECT_EQ(cf[0], basis_vector(f, 0));
  for (const char* spec : {fixtures::kHeisenberg, fixtures::kFiliform, fixtures::kHeisenberg2, fixtures::kAbelian}) {
    auto h = load_algebra(spec);
    for (const auto& z : compute_center(h))
      for (int j = 0; j < h.dim; ++j) EXPECT_EQ(bracket<Rational>(h, z, basis_vector(h, j)), VecQ(VecQ::Zero(h.dim)));
  }
}

TEST(Algebra, JordanHolderIdeals) {
  for (const char* spec : {fixtures::kHeisenberg, fixtures::kFiliform, fixtures::kHeisenberg2}) {
    auto h = load_algebra(spec);
    for (int k = 1; k <= h.dim; ++k)
      for (int j = 0; j < h.dim; ++j)
        for (int m = 0; m < k; ++m) {
          VecQ b = bracket<Rational>(h, basis_vector(h, j), basis_vector(h, m));
          for (int r = k; r < h.dim; ++r) EXPECT_EQ(b[r], 0);
        }
  }
}

TEST(Algebra, JsonRoundTrip) {
  auto g = load_algebra(fixtures::kFiliform);
  auto h = load_algebra(algebra_to_json(g));
  EXPECT_EQ(h.dim, g.dim);
  EXPECT_EQ(h.entries.size(), g.entries.size());
  for (const auto& e : g.entries) EXPECT_EQ(h.coef(e.i, e.j, e.k), e.c);
  auto hb = heisenberg_algebra(2);
  auto h2 = load_algebra(fixtures::kHeisenberg2);
  for (const auto& e : h2.entries) EXPECT_EQ(hb.coef(e.i, e.j, e.k), e.c);
}

TEST(Exact, PfaffianSquaredIsDeterminant) {
  std::mt19937 rng(21);
  for (int n : {2, 4, 6}) {
    for (int t = 0; t < 5; ++t) {
      MatQ a = MatQ::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          a(i, j) = fixtures::random_rational(rng, 1)[0];
          a(j, i) = -a(i, j);
        }
      Rational pf = pfaffian(a);
      EXPECT_EQ(pf * pf, determinant(a));
    }
  }
  EXPECT_EQ(pfaffian(MatQ(0, 0)), 1);
}

TEST(Exact, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), Rational(-1, 4));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
}
