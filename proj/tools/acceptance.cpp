#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#include "nilharm/config.hpp"
#include "nilharm/orbits.hpp"
#include "nilharm/star.hpp"
#include "nilharm/verify.hpp"

using namespace nilharm;

namespace {

const char* kH1 = R"({"dim":3,"names":["Z","Y","X"],"brackets":[[3,2,1,"1"]],"weights":["2","1","1"]})";
const char* kH2 = R"({"dim":5,"names":["Z","Y1","Y2","X1","X2"],"brackets":[[4,2,1,"1"],[5,3,1,"1"]],"weights":[2,1,1,1,1]})";
const char* kFil = R"({"dim":4,"names":["Z","W","Y","X"],"brackets":[[4,3,2,"1"],[4,2,1,"1"]],"weights":[3,2,1,1]})";
const char* kAb = R"({"dim":3,"brackets":[],"weights":[1,1,1]})";
const char* kBadJacobi =
    R"({"dim":5,"brackets":[[5,4,3,"1"],[5,3,2,"1"],[4,3,1,"1"],[4,2,1,"1"]],"weights":[1,1,1,1,1]})";

int failures = 0;

void line(int k, const char* title, bool pass, const std::string& detail) {
  std::printf("criterion %d %-28s %s  %s\n", k, title, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

VecQ rq(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<long> n(-6, 6), m(1, 5);
  VecQ v(d);
  for (int i = 0; i < d; ++i) {
    v[i] = Rational(n(rng), m(rng));
    v[i].canonicalize();
  }
  return v;
}

VecQ unit(int d, int i, Rational s = 1) {
  VecQ v = VecQ::Zero(d);
  v[i] = s;
  return v;
}

// every bracket of e_i, e_j lands strictly below both indices: the basis spans a central series
int series_failures(const NilpotentLieAlgebra& g) {
  int bad = 0;
  for (const auto& e : g.entries)
    if (e.k >= std::min(e.i, e.j)) ++bad;
  return bad;
}

int center_failures(const NilpotentLieAlgebra& g) {
  int central = 0;
  for (int i = 0; i < g.dim; ++i) central += g.ad(basis_vector(g, i)).isZero();
  return central == g.center_dim ? 0 : 1;
}

int heisenberg_closed_form_failures(const NilpotentLieAlgebra& g, int samples) {
  std::mt19937_64 rng(17);
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    VecQ a = rq(rng, 3), b = rq(rng, 3);
    VecQ c = bch_multiply<Rational>(g, a, b);
    Rational z = a[0] + b[0] + Rational(1, 2) * (a[2] * b[1] - a[1] * b[2]);
    if (c[0] != z || c[1] != a[1] + b[1] || c[2] != a[2] + b[2]) ++bad;
  }
  return bad;
}

// step 3: log(e^x e^y) - x - y - [x,y]/2 = ([x,[x,y]] + [y,[y,x]])/12
int filiform_degree3_failures(const NilpotentLieAlgebra& g, int samples) {
  std::mt19937_64 rng(23);
  int bad = 0;
  auto br = [&](const VecQ& u, const VecQ& v) { return VecQ(bracket<Rational>(g, u, v)); };
  for (int s = 0; s < samples; ++s) {
    VecQ x = rq(rng, g.dim), y = rq(rng, g.dim);
    VecQ r = VecQ(bch_multiply<Rational>(g, x, y)) - x - y - Rational(1, 2) * br(x, y);
    VecQ e = Rational(1, 12) * VecQ(br(x, br(x, y)) + br(y, br(y, x)));
    if (r != e) ++bad;
  }
  VecQ X = unit(g.dim, 3), Y = unit(g.dim, 2);
  if (VecQ(bch_multiply<Rational>(g, X, Y))[0] != Rational(1, 12)) ++bad;
  return bad;
}

void criterion1() {
  int bad = 0;
  for (const char* s : {kH1, kH2, kFil}) {
    auto g = load_algebra(s);
    bad += jacobi_failures(g) + antisymmetry_failures(g) + associativity_failures(g, 50) + dilation_failures(g, 20) +
           series_failures(g) + center_failures(g);
  }
  const int hb = heisenberg_closed_form_failures(load_algebra(kH1), 50);
  const int fb = filiform_degree3_failures(load_algebra(kFil), 50);
  line(1, "exact algebra layer", bad + hb + fb == 0,
       "structural failures " + std::to_string(bad) + ", H1 closed form " + std::to_string(hb) + ", filiform 1/12 " +
           std::to_string(fb));
}

void criterion2() {
  bool ok = true;
  std::string why;
  auto g = load_algebra(kH1);
  auto d = flat_orbit_data(g, unit(3, 0));
  ok &= d.jumps == std::vector<int>{2, 3} && d.pf_abs() == 1 && d.Q == 4 && d.kappa == 2;
  ok &= flat_orbit_data(g, unit(3, 0, 3)).pf_abs() == 3;
  if (!ok) why += " H1 data;";
  for (const char* s : {kH1, kH2}) {
    auto h = load_algebra(s);
    if (pfaffian_scaling_defect(h, flat_orbit_data(h, unit(h.dim, 0, Rational(7, 3)))) != 0) {
      ok = false;
      why += " scaling;";
    }
  }
  auto fil = load_algebra(kFil);
  const bool fil_flat = is_flat_si_z(fil, unit(4, 0)).flat;
  auto h2 = is_flat_si_z(load_algebra(kH2), unit(5, 0));
  const bool verdicts = is_flat_si_z(g, unit(3, 0)).flat && !fil_flat && h2.flat &&
                        h2.data->jumps == std::vector<int>{2, 3, 4, 5};
  ok &= verdicts;
  if (!verdicts) why += " verdicts;";
  line(2, "orbit layer", ok, "J={2,3} |Pf|=1,3 Q=4 kappa=2; scaling l in {2,3/2,5}; flat H1/filiform/H2 = " +
                                 std::string(verdicts ? "true/false/true" : "mismatch") + why);
}

void criterion3() {
  auto g = load_algebra(kH1);
  auto d = flat_orbit_data(g, unit(3, 0));
  double w = 0;
  for (double l : {-3.0, -1.3, -0.2, 0.05, 0.7, 1.0, 2.5}) {
    // |mu| dmu with mu = sgn(l) l^2, dmu/dl = 2|l|
    const double mu = (l < 0 ? -1 : 1) * l * l, classical = std::abs(mu) * 2 * std::abs(l);
    w = std::max(w, std::abs(plancherel_density(d, l) - classical) / classical);
  }
  line(3, "Plancherel density", w <= 1e-12, fmt("max relative deviation %.2e (tol 1e-12)", w) + ", formula " + density_formula(d));
}

RunConfig h1_config() {
  RunConfig c = parse_config(std::string(R"({"algebra":)") + kH1 + "}");
  return c;
}

// G-box and lambda grid halved; the Pedersen grids stay fixed so the calibration is unchanged
RunConfig half_config() {
  RunConfig c = h1_config();
  c.group_grid = GridSpec({12, 3.6, 3.6}, {64, 80, 80});
  c.lambda_nodes = 16;
  return c;
}

void criterion4(const RunConfig& c) {
  auto g = config_algebra(c);
  RepResiduals r = rep_residuals(config_rep(c, g), 64);
  const bool pass = r.homomorphism <= 1e-6 && r.unitarity <= 1e-8 && r.conjugation_exact;
  line(4, "representation layer", pass,
       fmt("homomorphism %.2e (tol 1e-6)", r.homomorphism) + fmt(", unitarity %.2e (tol 1e-8)", r.unitarity) +
           ", conjugation " + (r.conjugation_exact ? "exact" : "NOT exact"));
}

std::optional<QuantSpec> criterion5(const RunConfig& c) {
  auto g = config_algebra(c);
  QuantSpec q = config_quant(c, g);
  Calibration cal = calibrate_nu(q, std::numeric_limits<double>::infinity());
  auto h = held_out_panel(q.zdual);
  double tr = 0;
  for (int i = 0; i < 5; ++i) {
    const auto &a = h[i], &b = h[(i + 2) % 5];
    cd t = (pedersen_op(q, 1, a).array() * pedersen_op(q, 1, b).array().conjugate()).sum();
    tr = std::max(tr, std::abs(t - theta_inner(q, a, b)) /
                          std::sqrt(std::real(theta_inner(q, a, a)) * std::real(theta_inner(q, b, b))));
  }
  PointFunction phi = [](const Eigen::VectorXd& x) { return std::exp(-kPi * x.squaredNorm()) * cd(1 + x[0] * x[1], 0.5 * x[1]); };
  Eigen::MatrixXcd W = weyl_oracle(q.rep.rep_grid, phi);
  const double wo = (pedersen_op(q, 1, sample(phi, q.zdual, SpaceTag::CentralDual)) - W).norm() / W.norm();
  const bool pass = cal.residual <= 1e-5 && tr <= 1e-5 && wo <= 1e-5;
  line(5, "Pedersen layer", pass,
       fmt("calibration %.2e", cal.residual) + fmt(" (c_nu %.6f)", cal.c_nu) + fmt(", held-out trace %.2e", tr) +
           fmt(", Weyl oracle %.2e (tol 1e-5 each)", wo));
  if (cal.residual > 1e-5) return std::nullopt;
  return q;
}

std::vector<FourierResiduals> fourier_panel(const RunConfig& c) {
  auto g = config_algebra(c);
  QuantSpec q = config_quant(c, g);
  calibrate_nu(q, c.tolerance("calibration"));
  std::vector<FourierResiduals> out;
  for (const char* kind : {"gauss", "mod", "herm"}) {
    auto phi = project_star(sample(panel_function(3, kind), config_group_grid(c, 3)), c.star_r, c.star_m);
    out.push_back(fourier_residuals(phi, q, c.lambda_grid()));
  }
  return out;
}

void criterion6(const RunConfig& c) {
  auto full = fourier_panel(c);
  auto half = fourier_panel(half_config());
  double o = 0, p = 0, v = 0, shrink = std::numeric_limits<double>::infinity();
  std::string ratios;
  const char* names[] = {"gauss", "mod", "herm"};
  for (int k = 0; k < 3; ++k) {
    o = std::max(o, full[k].oracle);
    p = std::max(p, full[k].plancherel);
    v = std::max(v, full[k].inversion);
    const double ro = half[k].oracle / full[k].oracle, rp = half[k].plancherel / full[k].plancherel,
                 ri = half[k].inversion / full[k].inversion;
    shrink = std::min({shrink, ro, rp, ri});
    char b[160];
    std::snprintf(b, sizeof b, " %s %.1f/%.1f/%.1f", names[k], ro, rp, ri);
    ratios += b;
  }
  const bool pass = o <= 1e-5 && p <= 1e-4 && v <= 1e-4 && shrink >= 2;
  line(6, "Fourier layer", pass,
       fmt("oracle %.2e (tol 1e-5)", o) + fmt(", Plancherel %.2e (tol 1e-4)", p) + fmt(", inversion %.2e (tol 1e-4)", v) +
           fmt(", min shrink under doubling %.2f (need 2); oracle/Plancherel/inversion ratios:", shrink) + ratios);
}

void criterion7(const RunConfig& c, const QuantSpec& q) {
  auto phi = project_star(sample(panel_function(3, "gauss"), config_group_grid(c, 3)), c.star_r, c.star_m);
  KnResiduals k = kn_residuals(phi, q, c.lambda_grid(), config_symbol_x_grid(c, 3));
  auto ch = character_residuals(q);
  double cw = 0;
  bool mono = true;
  for (const auto& r : ch) {
    cw = std::max(cw, r.back());
    mono = mono && r[0] > r[1] && r[1] > r[2];
  }
  const bool pass = k.identity <= 1e-4 && k.multiplication <= 1e-10 && k.locality <= 1e-6 && k.roundtrip <= 1e-3 &&
                    cw <= 1e-3 && mono;
  line(7, "Kohn-Nirenberg layer", pass,
       fmt("identity %.2e (tol 1e-4)", k.identity) + fmt(", multiplication %.2e (tol 1e-10)", k.multiplication) +
           fmt(", locality %.2e (tol 1e-6)", k.locality) + fmt(", round trip %.2e (tol 1e-3)", k.roundtrip) +
           fmt(", character %.2e (tol 1e-3)", cw) + (mono ? ", decreasing" : ", NOT decreasing"));
}

void criterion8(const RunConfig& c) {
  std::vector<std::pair<ErrorCode, std::function<void()>>> cases = {
      {ErrorCode::JacobiViolation, [] { load_algebra(kBadJacobi); }},
      {ErrorCode::ZeroLambda, [] { chart_sigma(0.0); }},
      {ErrorCode::BoundaryMassExceeded,
       [] {
         auto f = sample([](const Eigen::VectorXd&) { return cd(1); }, GridSpec::uniform(2, 3, 32));
         SampledTransform(f, -1, 1e-4);
       }},
      {ErrorCode::GridMismatch,
       [&] {
         auto g = config_algebra(c);
         QuantSpec q = config_quant(c, g);
         q.c_nu = 1;
         pedersen_op(q, 1, sample([](const Eigen::VectorXd&) { return cd(0); }, GridSpec::uniform(2, 4, 32), SpaceTag::CentralDual));
       }},
      {ErrorCode::CalibrationResidualTooLarge,
       [&] {
         auto g = config_algebra(c);
         RunConfig d = c;
         d.omega_grid = GridSpec::uniform(2, 6, 2);
         QuantSpec q = config_quant(d, g);
         calibrate_nu(q, 1e-5);
       }},
      {ErrorCode::CenterNotOneDim, [] { is_flat_si_z(load_algebra(kAb), unit(3, 0)); }},
  };
  int hit = 0;
  std::string detail;
  for (auto& [code, fn] : cases) {
    bool ok = false;
    try {
      fn();
    } catch (const Error& e) {
      ok = e.code() == code;
    }
    hit += ok;
    detail += std::string(" ") + error_name(code) + (ok ? "" : "(missed)");
  }
  line(8, "error paths", hit == int(cases.size()), std::to_string(hit) + "/" + std::to_string(cases.size()) + ":" + detail);
}

template <typename F>
void guarded(int k, const char* title, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    line(k, title, false, std::string("raised ") + e.name() + ": " + e.what());
  }
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  const RunConfig c = h1_config();
  guarded(1, "exact algebra layer", criterion1);
  guarded(2, "orbit layer", criterion2);
  guarded(3, "Plancherel density", criterion3);
  guarded(4, "representation layer", [&] { criterion4(c); });
  std::optional<QuantSpec> q;
  guarded(5, "Pedersen layer", [&] { q = criterion5(c); });
  guarded(6, "Fourier layer", [&] { criterion6(c); });
  if (q)
    guarded(7, "Kohn-Nirenberg layer", [&] { criterion7(c, *q); });
  else
    line(7, "Kohn-Nirenberg layer", false, "not run: calibration failed");
  guarded(8, "error paths", [&] { criterion8(c); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("total runtime %.1f s, %d criteria failed\n", secs, failures);
  return failures ? 1 : 0;
}
