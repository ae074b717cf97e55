#include <gtest/gtest.h>

#include <cmath>

#include "nilharm/lambda.hpp"
#include "nilharm/star.hpp"
#include "nilharm/transform.hpp"

using namespace nilharm;

namespace {

cd gauss(const Eigen::VectorXd& x) { return std::exp(-kPi * x.squaredNorm()); }

// H1 panel-type function: wider in z than in the other coordinates
cd panel(const Eigen::VectorXd& x) {
  return std::exp(-kPi * x[0] * x[0] / 2.56 - kPi * (x[1] * x[1] + x[2] * x[2]) / 1.44);
}

}  // namespace

TEST(Sample, Basics) {
  auto g = GridSpec::uniform(1, 6, 64);
  auto f = sample(gauss, g);
  EXPECT_NEAR(f.sup(), std::exp(-kPi * g.coord(0, 32) * g.coord(0, 32)), 1e-15);
  auto g3 = GridSpec::uniform(3, 6, 16);
  auto z = sample([](const Eigen::VectorXd&) { return cd(0); }, g3);
  EXPECT_EQ(z.values.cwiseAbs().maxCoeff(), 0);
  auto odd = sample([](const Eigen::VectorXd& x) { return gauss(x) * x[0]; }, GridSpec::uniform(2, 6, 64));
  EXPECT_LT(std::abs(odd.values.sum()) * odd.grid.cell_volume(), 1e-12);
}

TEST(Sample, Errors) {
  auto g = GridSpec::uniform(1, 1, 4);
  try {
    sample([](const Eigen::VectorXd& x) { return cd(1 / x[0] - 1 / x[0]) / 0.0; }, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFiniteValue);
  }
  EXPECT_THROW(GridSpec({1.0}, {3}), Error);
  EXPECT_THROW(GridSpec({-1.0}, {4}), Error);
}

TEST(Sample, Interpolation) {
  auto g = GridSpec::uniform(2, 6, 64);
  auto f = sample(gauss, g);
  Eigen::Vector2d p(0.123, -0.4);
  EXPECT_NEAR(std::abs(interpolate(f, p) - gauss(p)), 0, 1e-10);
  EXPECT_NEAR(std::abs(interpolate(f, g.point(77)) - f.values[77]), 0, 1e-13);
}

TEST(EuclideanFT, Gaussian) {
  auto f = sample(gauss, GridSpec::uniform(3, 6, 64));
  Eigen::MatrixXd pts(4, 3);
  pts << 0, 0, 0, 0.3, -0.2, 0.5, 1, 1, 0, -0.7, 0.1, 1.2;
  Eigen::VectorXcd v = euclidean_ft_at(f, pts);
  for (int p = 0; p < 4; ++p) EXPECT_NEAR(std::abs(v[p] - gauss(pts.row(p).transpose())), 0, 1e-8);
  EXPECT_LT(v.imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EuclideanFT, ShiftModulation) {
  Eigen::Vector2d a(0.4, -0.25);
  auto f = sample([&](const Eigen::VectorXd& x) { return gauss(x - a); }, GridSpec::uniform(2, 6, 64));
  Eigen::MatrixXd pts(3, 2);
  pts << 0.1, 0.2, -1, 0.5, 0.8, -0.3;
  Eigen::VectorXcd v = euclidean_ft_at(f, pts);
  for (int p = 0; p < 3; ++p) {
    Eigen::Vector2d xi = pts.row(p);
    EXPECT_NEAR(std::abs(v[p] - std::polar(1.0, kTwoPi * xi.dot(a)) * gauss(xi)), 0, 1e-8);
  }
}

TEST(EuclideanFT, ConjugateSymmetryAndLinearity) {
  auto g = GridSpec::uniform(2, 6, 32);
  auto f = sample([](const Eigen::VectorXd& x) { return gauss(x) * (1 + x[0] + x[1] * x[1]); }, g);
  auto k = sample([](const Eigen::VectorXd& x) { return gauss(2 * x) * cd(0, x[1]); }, g);
  Eigen::MatrixXd pts(2, 2);
  pts << 0.3, 0.7, -0.3, -0.7;
  Eigen::VectorXcd v = euclidean_ft_at(f, pts);
  EXPECT_LT(std::abs(v[1] - std::conj(v[0])), 1e-15);
  SampledFunction s(g, f.values + cd(2, 1) * k.values, SpaceTag::Group);
  Eigen::VectorXcd lin = euclidean_ft_at(f, pts) + cd(2, 1) * euclidean_ft_at(k, pts);
  EXPECT_LT((euclidean_ft_at(s, pts) - lin).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(EuclideanFT, TensorMatchesPointwise) {
  auto f = sample(panel, GridSpec({8.0, 6.0, 6.0}, {32, 24, 24}));
  std::vector<Eigen::VectorXd> fr = {Eigen::VectorXd::LinSpaced(3, -0.5, 0.5), Eigen::VectorXd::LinSpaced(2, 0, 1),
                                     Eigen::VectorXd::LinSpaced(4, -1, 0.2)};
  SampledTransform t(f, -1);
  Eigen::VectorXcd a = t.on_tensor(fr);
  Eigen::VectorXcd b = t.FrequencyFunction::on_tensor(fr);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(EuclideanFT, Plancherel) {
  auto f = sample([](const Eigen::VectorXd& x) { return gauss(x) * cd(1 + x[0], x[1]); }, GridSpec::uniform(2, 6, 64));
  // stays inside the period of the sampled transform
  auto dual = GridSpec::uniform(2, 2.5, 64);
  Eigen::VectorXcd F = euclidean_ft_tensor(f, {dual.axis(0), dual.axis(1)});
  const double lhs = f.l2_squared(), rhs = F.squaredNorm() * dual.cell_volume();
  EXPECT_LT(std::abs(lhs - rhs) / lhs, 1e-6);
}

TEST(EuclideanFT, BoundaryMass) {
  auto f = sample([](const Eigen::VectorXd& x) { return cd(std::cos(x[0])); }, GridSpec::uniform(1, 6, 32));
  try {
    euclidean_ft_at(f, Eigen::MatrixXd::Zero(1, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryMassExceeded);
  }
}

TEST(Moments, Examples) {
  auto g = GridSpec::uniform(1, 6, 64);
  EXPECT_NEAR(moment_vanish_defect(sample(gauss, g), 0)[0], 1, 1e-8);
  auto d = sample([](const Eigen::VectorXd& t) { return -kTwoPi * t[0] * gauss(t); }, g);
  EXPECT_LT(moment_vanish_defect(d, 0)[0], 1e-10);
}

TEST(Moments, StarProjectionLongLine) {
  auto g = GridSpec::uniform(1, 400, 32768);
  auto p = project_star(sample(gauss, g), 0.25, 4);
  Eigen::VectorXd d = moment_vanish_defect(p, 3);
  EXPECT_LT(d.maxCoeff(), 1e-8) << d.transpose();
}

TEST(Star, CentralSpectrumVanishes) {
  auto g = GridSpec({12.0, 3.6, 3.6}, {128, 16, 16});
  auto p = project_star(sample(panel, g), 0.25);
  Eigen::VectorXd fz = g.frequencies(0);
  std::vector<Eigen::VectorXd> fr = {Eigen::VectorXd(1), g.axis(1) / 4, g.axis(2) / 4};
  for (int k = 0; k < 128; ++k) {
    if (std::abs(fz[k]) > 0.25) continue;
    fr[0][0] = fz[k];
    EXPECT_LT(euclidean_ft_tensor(p, fr, +1, 1).cwiseAbs().maxCoeff(), 1e-12) << fz[k];
  }
  Eigen::VectorXd d = central_moment_defects(p, 1);
  EXPECT_LT(d.maxCoeff(), 1e-8);
}

TEST(Star, Properties) {
  auto g = GridSpec({12.0, 2.0}, {128, 8});
  auto f = sample([](const Eigen::VectorXd& x) {
    return std::exp(-kPi * x[0] * x[0] / 16) * gauss(x.tail(1)) * std::polar(1.0, kTwoPi * 0.9 * x[0]);
  }, g);
  // central spectrum already outside [-2r, 2r]
  auto p = project_star(f, 0.1);
  EXPECT_LT((p.values - f.values).cwiseAbs().maxCoeff(), 1e-10);
  auto q = project_star(p, 0.1);
  EXPECT_LT((q.values - p.values).cwiseAbs().maxCoeff(), 1e-10);
  auto z = project_star(SampledFunction(g, Eigen::VectorXcd::Zero(g.size()), SpaceTag::Group), 0.2);
  EXPECT_EQ(z.values.cwiseAbs().maxCoeff(), 0);
  auto k = sample(gauss, g);
  SampledFunction s(g, f.values + cd(0, 3) * k.values, SpaceTag::Group);
  EXPECT_LT((project_star(s, 0.1).values - p.values - cd(0, 3) * project_star(k, 0.1).values).cwiseAbs().maxCoeff(),
            1e-14);
  try {
    project_star(k, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RadiusTooLargeForGrid);
  }
}

TEST(Star, Smoothstep) {
  EXPECT_EQ(smoothstep(-0.1, 4), 0);
  EXPECT_EQ(smoothstep(1.3, 4), 1);
  EXPECT_NEAR(smoothstep(0.5, 4), 0.5, 1e-15);
  for (int m : {1, 2, 4, 6}) EXPECT_NEAR(smoothstep(0.3, m) + smoothstep(0.7, m), 1, 1e-12);
  EXPECT_NEAR(smoothstep(0.5, 1), 0.5, 1e-15);
  EXPECT_NEAR(smoothstep(0.25, 1), 3 * 0.0625 - 2 * 0.015625, 1e-15);
}

TEST(Chart, Examples) {
  EXPECT_EQ(chart_sigma(1), 0);
  EXPECT_EQ(chart_sigma(-1), 0);
  EXPECT_EQ(chart_sigma_inv(0), 1);
  EXPECT_EQ(chart_sigma_inv(0, -1), -1);
  for (double y : {-10.0, 3.7, 10.0}) {
    EXPECT_NEAR(chart_sigma(chart_sigma_inv(y)), y, 1e-12);
    EXPECT_NEAR(chart_sigma(chart_sigma_inv(y, -1)), y, 1e-12);
  }
  for (double l : {0.01, 0.5, 2.0, 300.0}) EXPECT_NEAR(chart_sigma_inv(chart_sigma(l)), l, 1e-14 * std::max(1.0, l));
  EXPECT_THROW(chart_sigma(0), Error);
}

TEST(LambdaGrid, Construction) {
  auto g = make_lambda_grid(1.2, 32);
  g.validate();
  EXPECT_EQ(g.size(), 64);
  for (int m = 0; m < 64; ++m) EXPECT_NE(g.nodes[m], 0);
  // the weights integrate d lambda over the mapped interval
  const double len = chart_sigma_inv(1.2) - chart_sigma_inv(-1.2);
  EXPECT_NEAR(g.weights.tail(32).sum(), len, 1e-13);
  LambdaGrid bad = g;
  bad.nodes[0] *= 1.01;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(LambdaGrid, RefinementConsistency) {
  auto integrate = [](int n) {
    auto g = make_lambda_grid(4, n);
    double s = 0;
    for (int m = 0; m < g.size(); ++m) {
      const double y = chart_sigma(g.nodes[m]);
      s += g.weights[m] * std::exp(-y * y) * 2 * std::pow(std::abs(g.nodes[m]), 3);
    }
    return s;
  };
  const double a = integrate(32), b = integrate(64);
  EXPECT_LT(std::abs(a - b) / b, 1e-6);
}

TEST(LambdaGrid, Seminorms) {
  auto g = make_lambda_grid(4, 201);
  Eigen::VectorXcd f(g.size());
  for (int m = 0; m < g.size(); ++m) f[m] = std::exp(-std::pow(chart_sigma(g.nodes[m]), 2));
  EXPECT_NEAR(lambda_schwartz_seminorm(g, f, 0, 0), 1, 1e-12);
  EXPECT_NEAR(lambda_schwartz_seminorm(g, f, 0, 1), 1 / std::sqrt(2 * std::exp(1.0)), 0.02 / std::sqrt(2 * std::exp(1.0)));
  // d/dy e^{-y^2} peaks at sqrt(2/e)
  EXPECT_NEAR(lambda_schwartz_seminorm(g, f, 1, 0), std::sqrt(2 / std::exp(1.0)), 1e-2);
  EXPECT_EQ(lambda_schwartz_seminorm(g, Eigen::VectorXcd::Zero(g.size()), 2, 3), 0);
  auto coarse = make_lambda_grid(4, 4);
  try {
    lambda_schwartz_seminorm(coarse, Eigen::VectorXcd::Zero(8), 2, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridTooCoarse);
  }
}
