#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nilharm/config.hpp"
#include "nilharm/star.hpp"
#include "nilharm/verify.hpp"

using namespace nilharm;

namespace {

RunConfig h1_config(const std::string& extra = "") {
  return parse_config(std::string(R"({"algebra":)") + fixtures::kHeisenberg + extra + "}");
}

QuantSpec calibrated(const RunConfig& c) {
  QuantSpec q = config_quant(c, config_algebra(c));
  calibrate_nu(q);
  return q;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IOError;
}

SampledFunction gaussian_symbol(const GridSpec& zdual) {
  return sample([](const Eigen::VectorXd& x) { return cd(std::exp(-kPi * x.squaredNorm())); }, zdual, SpaceTag::CentralDual);
}

// small grids for tests that only need structural properties
RunConfig small_config() {
  return h1_config(R"(,"grids":{"group":{"L":[12,3,3],"N":[64,24,24]}})");
}

}  // namespace

TEST(Pedersen, GaussianTraceAndZero) {
  QuantSpec q = calibrated(h1_config());
  auto a = gaussian_symbol(q.zdual);
  Eigen::MatrixXcd A = pedersen_op(q, 1, a);
  EXPECT_NEAR((A * A.adjoint()).trace().real(), 0.5, 1e-5);
  auto zero = sample([](const Eigen::VectorXd&) { return cd(0); }, q.zdual, SpaceTag::CentralDual);
  EXPECT_EQ(pedersen_op(q, 1, zero).norm(), 0.0);
}

TEST(Pedersen, MatchesWeylKernel) {
  QuantSpec q = calibrated(h1_config());
  PointFunction phi = [](const Eigen::VectorXd& x) { return std::exp(-kPi * x.squaredNorm()) * cd(1 + x[0], x[1] * x[0]); };
  Eigen::MatrixXcd W = weyl_oracle(q.rep.rep_grid, phi);
  EXPECT_LT((pedersen_op(q, 1, sample(phi, q.zdual, SpaceTag::CentralDual)) - W).norm() / W.norm(), 1e-5);
}

TEST(Pedersen, NeedsCalibrationAndMatchingGrid) {
  RunConfig c = h1_config();
  QuantSpec q = config_quant(c, config_algebra(c));
  auto a = gaussian_symbol(q.zdual);
  EXPECT_EQ(code_of([&] { pedersen_op(q, 1, a); }), ErrorCode::NotCalibrated);
  q.c_nu = 1;
  EXPECT_EQ(code_of([&] { pedersen_op(q, 1, gaussian_symbol(GridSpec::uniform(2, 4, 32))); }), ErrorCode::GridMismatch);
}

TEST(Calibration, UnitConstantOnStandardGrids) {
  RunConfig c = h1_config();
  QuantSpec q = config_quant(c, config_algebra(c));
  Calibration cal = calibrate_nu(q);
  EXPECT_NEAR(cal.c_nu, 1.0, 1e-4);
  EXPECT_LT(cal.residual, 1e-5);
  ASSERT_TRUE(q.c_nu);
}

TEST(Calibration, ThetaScaleLeavesTraceIdentityInvariant) {
  RunConfig c = h1_config();
  QuantSpec q1 = config_quant(c, config_algebra(c)), q2 = q1;
  q2.theta_scale = 2;
  const double c1 = calibrate_nu(q1).c_nu, c2 = calibrate_nu(q2).c_nu;
  // the operator is linear in c_nu * theta while the target is linear in theta
  EXPECT_NEAR(c2, c1 / std::sqrt(2.0), 1e-4);
  EXPECT_NEAR(c2 * c2 * 2, c1 * c1, 1e-4);
}

TEST(Calibration, DegenerateGridFails) {
  RunConfig c = h1_config(R"(,"grids":{"omega":{"L":6,"N":2}})");
  QuantSpec q = config_quant(c, config_algebra(c));
  EXPECT_EQ(code_of([&] { calibrate_nu(q); }), ErrorCode::CalibrationResidualTooLarge);
}

TEST(Pullback, IdentityDilationAndClosedForm) {
  QuantSpec q = calibrated(h1_config());
  AnalyticFrequency F(3, [](const Eigen::VectorXd& p) { return cd(std::exp(-kPi * p.squaredNorm() / 9), p[1]); });
  for (double lam : {1.0, 2.0, -0.7}) {
    auto pb = pullback_pl(F, q, lam);
    double w = 0;
    for (Eigen::Index k = 0; k < pb.grid.size(); ++k) {
      Eigen::VectorXd xi = pb.grid.point(k), p(3);
      p << (lam < 0 ? -1 : 1) * lam * lam, std::abs(lam) * xi[0], std::abs(lam) * xi[1];
      Eigen::MatrixXd pm = p.transpose();
      w = std::max(w, std::abs(pb.values[k] - F.at(pm)[0]));
    }
    EXPECT_LT(w, 1e-12) << lam;
  }
  AnalyticFrequency G(3, [](const Eigen::VectorXd& p) { return cd(std::exp(-kPi * p.squaredNorm())); });
  const int mid = q.zdual.N[0] / 2;
  auto pb = pullback_pl(G, q, 2.0);
  // nearest node to xi = 0 is half a cell off
  Eigen::VectorXd xi = pb.grid.point(pb.grid.flat({mid, mid}));
  EXPECT_NEAR(std::abs(pb.values[pb.grid.flat({mid, mid})]), std::exp(-kPi * (16 + 4 * xi.squaredNorm())), 1e-8);
}

TEST(Pullback, NegativeLambdaReflects) {
  RunConfig c = small_config();
  QuantSpec q = calibrated(c);
  auto phi = sample([](const Eigen::VectorXd& x) { return cd(std::exp(-kPi * (x[0] * x[0] / 4 + x[1] * x[1] + x[2] * x[2])) * (1 + x[2])); },
                    config_group_grid(c, 3));
  SampledTransform F(phi, -1);
  auto plus = pullback_pl(F, q, 0.8), minus = pullback_pl(F, q, -0.8);
  const int N0 = q.zdual.N[0], N1 = q.zdual.N[1];
  double w = 0;
  for (int i = 0; i < N0; ++i)
    for (int j = 0; j < N1; ++j)
      w = std::max(w, std::abs(minus.values[q.zdual.flat({i, j})] - std::conj(plus.values[q.zdual.flat({N0 - 1 - i, N1 - 1 - j})])));
  EXPECT_LT(w, 1e-12);
}

TEST(GroupTransform, ZeroAndSelfAdjoint) {
  RunConfig c = small_config();
  QuantSpec q = calibrated(c);
  GridSpec G = config_group_grid(c, 3);
  auto zero = sample([](const Eigen::VectorXd&) { return cd(0); }, G);
  EXPECT_EQ(group_ft_direct(zero, q.rep, 1.0).norm(), 0.0);
  FourierFamily fz = fourier_pi(zero, q, make_lambda_grid(1.2, 4));
  for (const auto& A : fz.ops) EXPECT_EQ(A.norm(), 0.0);
  // phi(x) = conj(phi(-x)) makes the transform Hermitian; the periodic grid only honours that on localized vectors
  Eigen::MatrixXcd Q = hermite_subspace(q.rep.rep_grid, 8);
  auto phi = sample([](const Eigen::VectorXd& x) {
    return std::exp(-kPi * (x[0] * x[0] / 4 + x[1] * x[1] + x[2] * x[2])) * cd(1 + 0.3 * x[0] * x[2], x[1] - 0.5 * x[0] * x[1] * x[2]);
  }, G);
  for (double lam : {0.6, -0.5}) {
    Eigen::MatrixXcd A = Q.adjoint() * group_ft_direct(phi, q.rep, lam) * Q;
    EXPECT_LT((A - A.adjoint()).norm(), 1e-10 * A.norm()) << lam;
  }
}

TEST(GroupTransform, CentralModulationMovesMass) {
  RunConfig c = small_config();
  QuantSpec q = calibrated(c);
  GridSpec G = config_group_grid(c, 3);
  auto peak = [&](double mod) {
    auto phi = sample([mod](const Eigen::VectorXd& x) {
      return std::exp(-kPi * (x[0] * x[0] / 16 + x[1] * x[1] + x[2] * x[2])) * std::polar(1.0, kTwoPi * mod * x[0]);
    }, G);
    double best = 0, arg = 0;
    // |lambda|^2 stays below the central Nyquist frequency of the coarse box
    for (double lam = -1.1; lam <= 1.1; lam += 0.025) {
      if (std::abs(lam) < 1e-9) continue;
      const double n = group_ft_direct(phi, q.rep, lam).norm();
      if (n > best) best = n, arg = lam;
    }
    return arg;
  };
  const double a = peak(0.5), b = peak(1.0), m = peak(-1.0);
  EXPECT_GT(a, 0);
  EXPECT_GT(b, a);
  EXPECT_LT(m, 0);
  EXPECT_NEAR(m, -b, 1e-9);
}

class DefaultPipeline : public testing::Test {
 protected:
  static void SetUpTestSuite() {
    c_ = new RunConfig(h1_config());
    q_ = new QuantSpec(calibrated(*c_));
    phi_ = new SampledFunction(project_star(sample(panel_function(3, "gauss"), config_group_grid(*c_, 3)), 0.33));
    fam_ = new FourierFamily(fourier_pi(*phi_, *q_, c_->lambda_grid()));
  }
  static void TearDownTestSuite() {
    delete fam_;
    delete phi_;
    delete q_;
    delete c_;
  }
  static RunConfig* c_;
  static QuantSpec* q_;
  static SampledFunction* phi_;
  static FourierFamily* fam_;
};

RunConfig* DefaultPipeline::c_ = nullptr;
QuantSpec* DefaultPipeline::q_ = nullptr;
SampledFunction* DefaultPipeline::phi_ = nullptr;
FourierFamily* DefaultPipeline::fam_ = nullptr;

TEST_F(DefaultPipeline, OracleAndPlancherel) {
  const auto& lg = fam_->lambda_grid;
  double mx = 0;
  std::vector<Eigen::MatrixXcd> direct;
  for (Eigen::Index m = 0; m < lg.size(); m += 5) {
    direct.push_back(group_ft_direct(*phi_, q_->rep, lg.nodes[m]));
    mx = std::max(mx, direct.back().norm());
  }
  for (Eigen::Index m = 0, k = 0; m < lg.size(); m += 5, ++k)
    EXPECT_LT((fam_->ops[m] - direct[k]).norm() / std::max(direct[k].norm(), 1e-6 * mx), 1e-5) << lg.nodes[m];
  const double n2 = phi_->l2_squared();
  EXPECT_LT(std::abs(plancherel_sum(*fam_, q_->rep) - n2) / n2, 1e-4);
}

TEST_F(DefaultPipeline, InversionAndLinearity) {
  Eigen::MatrixXd pts(4, 3);
  pts << 0, 0, 0, 0.3, -0.2, 0.4, -1.0, 0.5, 0.1, 0.6, 0.3, -0.5;
  Eigen::VectorXcd v = inverse_fourier_pi(*fam_, q_->rep, pts);
  for (int p = 0; p < 4; ++p) EXPECT_LT(std::abs(v[p] - interpolate(*phi_, pts.row(p).transpose())), 1e-4 * phi_->sup());
  FourierFamily twice = *fam_, zero = *fam_;
  for (size_t m = 0; m < twice.ops.size(); ++m) {
    twice.ops[m] = fam_->ops[m] + Eigen::MatrixXcd::Identity(fam_->ops[m].rows(), fam_->ops[m].cols()) * 1e-3;
    zero.ops[m].setZero();
  }
  FourierFamily id = *fam_;
  for (auto& A : id.ops) A = Eigen::MatrixXcd::Identity(A.rows(), A.cols()) * 1e-3;
  Eigen::VectorXcd lhs = inverse_fourier_pi(twice, q_->rep, pts), rhs = v + inverse_fourier_pi(id, q_->rep, pts);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-14 * std::max(1.0, lhs.cwiseAbs().maxCoeff()));
  EXPECT_EQ(inverse_fourier_pi(zero, q_->rep, pts).norm(), 0.0);
}

TEST_F(DefaultPipeline, KohnNirenbergExamples) {
  const auto& spec = q_->rep;
  GridSpec xg = config_symbol_x_grid(*c_, 3);
  const auto& lg = fam_->lambda_grid;
  SymbolField id = kn_symbol(identity_operator(), spec, xg, lg);
  for (const auto& row : id.a)
    for (const auto& a : row) EXPECT_LT((a - Eigen::MatrixXcd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff(), 1e-8);
  auto field = scalar_field(*phi_);
  auto out = kn_quantize(constant_symbol(spec, xg, lg, 1), *fam_, spec);
  for (Eigen::Index k = 0; k < xg.size(); ++k)
    EXPECT_LT(std::abs(out.values[k] - field(xg.point(k))(0, 0)), 1e-4 * phi_->sup());

  PointFunction m = [](const Eigen::VectorXd& x) { return cd(1 + x[2] * x[2], x[1]); };
  SymbolField am = kn_symbol(multiplication_operator(m), spec, xg, lg);
  auto mout = kn_quantize(am, *fam_, spec);
  for (Eigen::Index k = 0; k < xg.size(); ++k) {
    for (const auto& a : am.a[k])
      EXPECT_LT((a - m(xg.point(k)) * Eigen::MatrixXcd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT(std::abs(mout.values[k] - m(xg.point(k)) * field(xg.point(k))(0, 0)), 1e-4 * phi_->sup());
  }

  // a left-invariant symbol built from the derived representation acts as the derivative
  Eigen::VectorXd v(3);
  v << 0, 0, 1;
  Operator D = left_invariant_operator(spec.algebra, v, 1e-2);
  SymbolField ad = constant_symbol(spec, xg, lg, 0);
  for (auto& row : ad.a)
    for (Eigen::Index j = 0; j < lg.size(); ++j) row[j] = rep_derived(spec, lg.nodes[j], v);
  auto dout = kn_quantize(ad, *fam_, spec);
  for (Eigen::Index k = 0; k < xg.size(); ++k)
    EXPECT_LT(std::abs(dout.values[k] - D.apply(field, xg.point(k))(0, 0)), 1e-3 * phi_->sup());
}

TEST_F(DefaultPipeline, RoundTripPanel) {
  KnResiduals r = kn_residuals(*phi_, *q_, c_->lambda_grid(), config_symbol_x_grid(*c_, 3));
  EXPECT_LT(r.identity, 1e-4);
  EXPECT_LT(r.multiplication, 1e-10);
  EXPECT_LT(r.locality, 1e-6);
  EXPECT_LT(r.roundtrip, 1e-3);
}

TEST_F(DefaultPipeline, LambdaGridMismatch) {
  GridSpec xg = config_symbol_x_grid(*c_, 3);
  auto a = constant_symbol(q_->rep, xg, make_lambda_grid(1.2, 8), 1);
  EXPECT_EQ(code_of([&] { kn_quantize(a, *fam_, q_->rep); }), ErrorCode::GridMismatch);
}

TEST(Operators, LinearityContract) {
  auto g = heisenberg_algebra(1);
  Operator sq{"square", [](const MatrixField& F, const Eigen::VectorXd& x) {
                Eigen::MatrixXcd v = F(x);
                return Eigen::MatrixXcd(v.cwiseProduct(v));
              }};
  EXPECT_EQ(code_of([&] { check_linear(sq, 3); }), ErrorCode::NonLinearOperatorDetected);
  Eigen::VectorXd v(3);
  v << 0, 1, 0;
  EXPECT_NO_THROW(check_linear(compose({left_invariant_operator(g, v, 1e-2), multiplication_operator(
                                            [](const Eigen::VectorXd& x) { return cd(x[0]); })}),
                               3));
}

TEST(Character, ConsistencyDecreasesWithTaper) {
  QuantSpec q = calibrated(h1_config());
  Eigen::MatrixXcd Q = hermite_subspace(q.rep.rep_grid, 8);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(3), central = zero;
  central[0] = 0.3;
  for (const auto& x : {zero, central}) {
    const double r1 = character_consistency(q, 1.0, x, 1.0, Q), r2 = character_consistency(q, 1.0, x, 1.5, Q),
                 r3 = character_consistency(q, 1.0, x, 2.0, Q);
    EXPECT_GT(r1, r2);
    EXPECT_GT(r2, r3);
    EXPECT_LT(r3, 1e-3);
  }
}
