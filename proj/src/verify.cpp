#include "nilharm/verify.hpp"

#include <chrono>
#include <nlohmann/json.hpp>
#include <random>

#include "nilharm/star.hpp"

namespace nilharm {

using json = nlohmann::json;

namespace {

VecQ random_q(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  VecQ v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = Rational(num(rng), den(rng));
    v[i].canonicalize();
  }
  return v;
}

Eigen::VectorXd random_d(std::mt19937_64& rng, int dim, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = u(rng);
  return v;
}

Eigen::MatrixXcd test_subspace(const GridSpec& rep_grid) {
  return rep_grid.dims() == 1 ? hermite_subspace(rep_grid, 8) : hermite_subspace(rep_grid, 3, 1.5);
}

bool is_heisenberg(const NilpotentLieAlgebra& g) {
  if (g.dim % 2 == 0) return false;
  auto key = [](const NilpotentLieAlgebra& a) {
    std::vector<std::tuple<int, int, int, std::string>> v;
    for (const auto& e : a.entries) v.emplace_back(e.i, e.j, e.k, e.c.get_str());
    std::sort(v.begin(), v.end());
    return v;
  };
  return key(g) == key(heisenberg_algebra((g.dim - 1) / 2));
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

bool VerifyReport::ok() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

std::string VerifyReport::to_json() const {
  json arr = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"anchor", c.anchor}, {"residual", number(c.residual)}, {"tolerance", c.tol}, {"pass", c.pass}};
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
  }
  return json({{"status", ok() ? "pass" : "fail"}, {"checks", arr}}).dump(2);
}

std::string VerifyReport::timing_json() const {
  json j = json::object();
  for (const auto& c : checks) j[c.name] = c.runtime;
  return j.dump(2);
}

PointFunction panel_function(int dim, const std::string& kind) {
  const int d = dim;
  auto base = [d](const Eigen::VectorXd& x) {
    double e = x[0] * x[0] / 2.56;
    for (int j = 1; j < d; ++j) e += x[j] * x[j] / 1.44;
    return std::exp(-kPi * e);
  };
  if (kind == "gauss") return [base](const Eigen::VectorXd& x) { return cd(base(x)); };
  if (kind == "mod")
    return [base, d](const Eigen::VectorXd& x) {
      return base(x) * std::polar(1.0, kTwoPi * (0.3 * x[1] - 0.2 * x[d - 1] + 0.4 * x[0]));
    };
  if (kind == "herm")
    return [base, d](const Eigen::VectorXd& x) { return cd(base(x) * (x[d - 1] + 0.5 * x[1] * x[1]) * (1 + x[0])); };
  fail(ErrorCode::ConfigError, "unknown panel function '" + kind + "'");
}

int associativity_failures(const NilpotentLieAlgebra& g, int triples, unsigned seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int s = 0; s < triples; ++s) {
    VecQ x = random_q(rng, g.dim), y = random_q(rng, g.dim), z = random_q(rng, g.dim);
    VecQ l = bch_multiply<Rational>(g, VecQ(bch_multiply<Rational>(g, x, y)), z);
    VecQ r = bch_multiply<Rational>(g, x, VecQ(bch_multiply<Rational>(g, y, z)));
    VecQ mx = -x;
    if (l != r || !VecQ(bch_multiply<Rational>(g, x, mx)).isZero()) ++bad;
  }
  return bad;
}

int jacobi_failures(const NilpotentLieAlgebra& g) {
  int bad = 0;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (int k = 0; k < g.dim; ++k) {
        VecQ a = basis_vector(g, i), b = basis_vector(g, j), c = basis_vector(g, k);
        VecQ s = bracket<Rational>(g, a, VecQ(bracket<Rational>(g, b, c))) +
                 bracket<Rational>(g, b, VecQ(bracket<Rational>(g, c, a))) +
                 bracket<Rational>(g, c, VecQ(bracket<Rational>(g, a, b)));
        if (!s.isZero()) ++bad;
      }
  return bad;
}

int antisymmetry_failures(const NilpotentLieAlgebra& g) {
  int bad = 0;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      VecQ a = basis_vector(g, i), b = basis_vector(g, j);
      if (VecQ(bracket<Rational>(g, a, b) + bracket<Rational>(g, b, a)) != VecQ::Zero(g.dim)) ++bad;
    }
  return bad;
}

int dilation_failures(const NilpotentLieAlgebra& g, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  const Rational lams[] = {Rational(2), Rational(3, 2), Rational(5, 7)};
  for (int s = 0; s < samples; ++s) {
    VecQ x = random_q(rng, g.dim), y = random_q(rng, g.dim);
    const Rational& l = lams[s % 3];
    VecQ lhs = dilation_apply<Rational>(g, l, VecQ(bch_multiply<Rational>(g, x, y)));
    VecQ rhs = bch_multiply<Rational>(g, VecQ(dilation_apply<Rational>(g, l, x)), VecQ(dilation_apply<Rational>(g, l, y)));
    if (lhs != rhs) ++bad;
  }
  return bad;
}

int coadjoint_failures(const NilpotentLieAlgebra& g, const VecQ& xi, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    VecQ x = random_q(rng, g.dim), y = random_q(rng, g.dim);
    VecQ xy = bch_multiply<Rational>(g, x, y);
    if (coadjoint_apply(g, xy, xi) != coadjoint_apply(g, x, coadjoint_apply(g, y, xi))) ++bad;
  }
  return bad;
}

Rational pfaffian_scaling_defect(const NilpotentLieAlgebra& g, const FlatOrbitData& d) {
  Rational worst = 0;
  const Rational e = d.Q - d.kappa;
  if (e.get_den() != 1) fail(ErrorCode::DilationIncompatible, "non-integer Pfaffian scaling exponent");
  const long ex = Rational(e).get_num().get_si();
  for (const Rational& l : {Rational(2), Rational(3, 2), Rational(5)}) {
    Rational lhs = pfaffian_abs(g, dual_dilation<Rational>(g, l, d.ell), d.jumps);
    Rational rhs = pow(l, ex) * d.pf_abs();
    worst = std::max(worst, Rational(abs(lhs - rhs)));
  }
  return worst;
}

RepResiduals rep_residuals(const FlatRepSpec& spec, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(0.5, 1.5);
  Eigen::MatrixXcd Q = test_subspace(spec.rep_grid);
  const int d = spec.algebra.dim;
  const double r = spec.n() == 1 ? 1.0 : 0.3;
  RepResiduals out;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(Q.cols(), Q.cols());
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd x = random_d(rng, d, r), y = random_d(rng, d, r);
    const double l = (s % 2 ? -1 : 1) * lam(rng);
    Eigen::MatrixXcd A = rep_matrix(spec, l, x);
    Eigen::MatrixXcd BQ = rep_matrix(spec, l, y) * Q;
    Eigen::MatrixXcd CQ = rep_matrix(spec, l, bch_multiply<double>(spec.algebra, x, y)) * Q;
    out.homomorphism = std::max(out.homomorphism, (Q.adjoint() * (A * BQ - CQ)).norm() / std::sqrt(double(Q.cols())));
    Eigen::MatrixXcd AQ = A * Q;
    out.unitarity = std::max(out.unitarity, (AQ.adjoint() * AQ - I).norm());
    if (s < 8) {
      out.conjugation_exact = out.conjugation_exact && rep_matrix(spec, -std::abs(l), x) == conjugate_rep(spec, std::abs(l), x);
      Eigen::VectorXd dx = dilation_apply<double>(spec.algebra, std::abs(l), x);
      out.dilation_exact = out.dilation_exact && rep_matrix(spec, std::abs(l), x) == rep_matrix(spec, 1, dx);
    }
  }
  return out;
}

FourierResiduals fourier_residuals(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg,
                                   int inversion_points, unsigned seed) {
  FourierResiduals r;
  FourierFamily fam = fourier_pi(phi, q, lg);
  std::vector<Eigen::MatrixXcd> direct(lg.size());
  for (Eigen::Index m = 0; m < lg.size(); ++m) direct[m] = group_ft_direct(phi, q.rep, lg.nodes[m]);
  double mx = 0;
  for (const auto& D : direct) mx = std::max(mx, D.norm());
  for (Eigen::Index m = 0; m < lg.size(); ++m) {
    const double den = std::max(direct[m].norm(), 1e-6 * mx);
    if (den > 0) r.oracle = std::max(r.oracle, (fam.ops[m] - direct[m]).norm() / den);
  }
  const double n2 = phi.l2_squared();
  const double ps = plancherel_sum(fam, q.rep);
  r.plancherel = n2 > 0 ? std::abs(ps - n2) / n2 : ps;
  std::mt19937_64 rng(seed);
  const GridSpec& G = phi.grid;
  Eigen::MatrixXd pts(inversion_points, G.dims());
  std::vector<Eigen::Index> flat(inversion_points);
  for (int p = 0; p < inversion_points; ++p) {
    std::vector<int> idx(G.dims());
    for (int a = 0; a < G.dims(); ++a) {
      const int lo = a == 0 ? G.N[a] / 3 : G.N[a] / 4, hi = a == 0 ? 2 * G.N[a] / 3 : 3 * G.N[a] / 4;
      idx[a] = std::uniform_int_distribution<int>(lo, hi - 1)(rng);
    }
    flat[p] = G.flat(idx);
    pts.row(p) = G.point(flat[p]).transpose();
  }
  Eigen::VectorXcd inv = inverse_fourier_pi(fam, q.rep, pts);
  double err = 0;
  for (int p = 0; p < inversion_points; ++p) err = std::max(err, std::abs(inv[p] - phi.values[flat[p]]));
  r.inversion = phi.sup() > 0 ? err / phi.sup() : err;
  return r;
}

KnResiduals kn_residuals(const SampledFunction& phi, const QuantSpec& q, const LambdaGrid& lg, const GridSpec& x_grid) {
  const auto& g = q.rep.algebra;
  const int d = g.dim;
  const FlatRepSpec& spec = q.rep;
  KnResiduals r;
  FourierFamily fam = fourier_pi(phi, q, lg);
  const double sup = std::max(phi.sup(), 1e-300);
  auto field = scalar_field(phi);

  auto id = kn_quantize(constant_symbol(spec, x_grid, lg, 1), fam, spec);
  for (Eigen::Index k = 0; k < x_grid.size(); ++k)
    r.identity = std::max(r.identity, std::abs(id.values[k] - field(x_grid.point(k))(0, 0)) / sup);

  PointFunction m = [d](const Eigen::VectorXd& x) { return cd(1 + 0.5 * x[d - 1] - 0.3 * x[1] * x[0]); };
  Operator mult = multiplication_operator(m);
  SymbolField am = kn_symbol(mult, spec, x_grid, lg);
  for (Eigen::Index k = 0; k < x_grid.size(); ++k) {
    const cd mk = m(x_grid.point(k));
    for (const auto& a : am.a[k])
      r.multiplication = std::max(r.multiplication, (a - mk * Eigen::MatrixXcd::Identity(a.rows(), a.cols())).cwiseAbs().maxCoeff());
  }

  Eigen::MatrixXcd Q = test_subspace(spec.rep_grid);
  auto dir = [d](int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
    v[i] = 1;
    return v;
  };
  Operator dz = left_invariant_operator(g, dir(0), 1e-2), dx = left_invariant_operator(g, dir(d - 1), 1e-2);
  Operator dy = left_invariant_operator(g, dir(1), 1e-2);
  SymbolField adx = kn_symbol(dx, spec, x_grid, lg);
  r.locality = std::max(symbol_x_dependence(kn_symbol(dz, spec, x_grid, lg), Q), symbol_x_dependence(adx, Q));

  std::vector<std::pair<Operator, SymbolField>> panel;
  panel.emplace_back(mult, std::move(am));
  panel.emplace_back(dx, std::move(adx));
  Operator comp = compose({dy, mult});
  panel.emplace_back(comp, kn_symbol(comp, spec, x_grid, lg));
  for (const auto& [A, a] : panel) {
    SampledFunction out = kn_quantize(a, fam, spec);
    for (Eigen::Index k = 0; k < x_grid.size(); ++k)
      r.roundtrip = std::max(r.roundtrip, std::abs(out.values[k] - A.apply(field, x_grid.point(k))(0, 0)) / sup);
  }
  return r;
}

std::vector<std::vector<double>> character_residuals(const QuantSpec& q) {
  const int d = q.dims();
  Eigen::MatrixXcd Q = test_subspace(q.rep.rep_grid);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(d), central = zero, generic = Eigen::VectorXd::LinSpaced(d, 0.3, -0.4);
  central[0] = 0.3;
  std::vector<std::pair<double, Eigen::VectorXd>> cases = {{1.0, zero}, {1.0, central}, {-1.2, generic}};
  std::vector<std::vector<double>> out;
  for (const auto& [l, x] : cases) {
    std::vector<double> row;
    for (double R : {1.0, 1.5, 2.0}) row.push_back(character_consistency(q, l, x, R, Q));
    out.push_back(row);
  }
  return out;
}

VerifyReport run_verify(const RunConfig& c) {
  VerifyReport rep;
  auto run = [&](const std::string& name, const std::string& anchor, double tol, const std::function<double(std::string&)>& fn) {
    Check ck{name, anchor, 0, tol, false, 0, ""};
    auto t0 = std::chrono::steady_clock::now();
    try {
      ck.residual = fn(ck.note);
      ck.pass = ck.residual <= tol;
    } catch (const Error& e) {
      ck.residual = std::numeric_limits<double>::quiet_NaN();
      ck.note = std::string(e.name()) + ": " + e.what();
    }
    ck.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(ck);
  };

  NilpotentLieAlgebra g;
  try {
    g = config_algebra(c);
  } catch (const Error& e) {
    const std::string n = e.code() == ErrorCode::JacobiViolation ? "jacobi"
                          : e.code() == ErrorCode::AntisymmetryViolation ? "antisymmetry" : "algebra";
    rep.checks.push_back({n, "structure constants define a nilpotent Lie algebra", std::numeric_limits<double>::quiet_NaN(), 0,
                          false, 0, std::string(e.name()) + ": " + e.what()});
    return rep;
  }

  run("jacobi", "[u,[v,w]] + [v,[w,u]] + [w,[u,v]] = 0 on basis triples", 0, [&](std::string&) { return jacobi_failures(g); });
  run("antisymmetry", "[u,v] = -[v,u] on basis pairs", 0, [&](std::string&) { return antisymmetry_failures(g); });
  run("bch_associativity", "(x.y).z = x.(y.z) and x.(-x) = 0, 50 rational triples", 0,
      [&](std::string&) { return associativity_failures(g, 50); });
  run("dilation_homomorphism", "delta_l(x.y) = delta_l(x).delta_l(y), exact", 0,
      [&](std::string&) { return dilation_failures(g, 20); });
  VecQ ell;
  std::optional<FlatOrbitData> orbit;
  run("coadjoint_action", "Ad*(x.y) xi = Ad*(x) Ad*(y) xi, exact", 0, [&](std::string&) {
    ell = config_functional(c, g);
    return coadjoint_failures(g, ell, 20);
  });
  run("flat_orbit", "orbit of ell is ell + (annihilator of the centre)", 0, [&](std::string& note) {
    FlatVerdict v = is_flat_si_z(g, config_functional(c, g));
    note = v.reason;
    if (v.flat) orbit = v.data;
    return v.flat ? 0.0 : 1.0;
  });
  run("pfaffian_scaling", "|Pf(delta_l ell)| = |l|^(Q-kappa) |Pf(ell)|, l in {2, 3/2, 5}", 0, [&](std::string&) {
    if (!orbit) fail(ErrorCode::ConfigError, "functional is not flat");
    return to_double(pfaffian_scaling_defect(g, *orbit));
  });
  if (is_heisenberg(g))
    run("plancherel_density", "kappa |l|^(Q-1) |Pf(ell)| = |mu|^n dmu/dl with mu = sgn(l) l^2 ell_1", 1e-12, [&](std::string&) {
      if (!orbit) fail(ErrorCode::ConfigError, "functional is not flat");
      const int n = (g.dim - 1) / 2;
      const double e1 = std::abs(orbit->ell1());
      double worst = 0;
      for (double l : {-2.0, -0.7, 0.3, 1.0, 1.9}) {
        const double classical = std::pow(l * l * e1, n) * 2 * std::abs(l) * e1;
        worst = std::max(worst, std::abs(plancherel_density(*orbit, l) - classical) / classical);
      }
      return worst;
    });

  run("euclidean_ft", "F(e^{-pi|x|^2})(xi) = e^{-pi|xi|^2}, L = 6, N = 64", c.tolerance("euclidean_ft"), [&](std::string&) {
    auto f = sample([](const Eigen::VectorXd& x) { return cd(std::exp(-kPi * x.squaredNorm())); }, GridSpec::uniform(2, 6, 64));
    Eigen::MatrixXd pts(3, 2);
    pts << 0, 0, 0.4, -0.3, 1.1, 0.7;
    Eigen::VectorXcd v = euclidean_ft_at(f, pts);
    double w = 0;
    for (int p = 0; p < 3; ++p) w = std::max(w, std::abs(v[p] - std::exp(-kPi * pts.row(p).squaredNorm())));
    return w;
  });
  run("star_moments", "central moments 0..3 vanish after projection (long line)", c.tolerance("moments"), [&](std::string&) {
    auto f = sample([](const Eigen::VectorXd& t) { return cd(std::exp(-kPi * t[0] * t[0])); }, GridSpec::uniform(1, 400, 32768));
    return moment_vanish_defect(project_star(f, 0.25, c.star_m), 3).maxCoeff();
  });

  std::optional<RepResiduals> rr;
  auto need_rr = [&]() -> const RepResiduals& {
    if (!rr) rr = rep_residuals(config_rep(c, g));
    return *rr;
  };
  run("rep_homomorphism", "pi_l(x) pi_l(y) = pi_l(x.y) on the Hermite test subspace, 64 samples",
      c.tolerance("rep_homomorphism"), [&](std::string&) { return need_rr().homomorphism; });
  run("rep_unitarity", "||pi_l(x) v|| = ||v|| on the Hermite test subspace", c.tolerance("rep_unitarity"),
      [&](std::string&) { return need_rr().unitarity; });
  run("rep_conjugation", "pi_{-l}(x) = conj(pi_l(x)), exact", 0,
      [&](std::string&) { return need_rr().conjugation_exact ? 0.0 : 1.0; });
  run("rep_dilation", "pi_l(x) = pi_1(delta_l x), exact", 0,
      [&](std::string&) { return need_rr().dilation_exact ? 0.0 : 1.0; });

  std::optional<QuantSpec> q;
  run("calibration", "Tr[op(a) op(b)*] = int a conj(b) dtheta, least-squares c_nu on 3x3 Gaussians",
      c.tolerance("calibration"), [&](std::string& note) {
        QuantSpec qq = config_quant(c, g);
        Calibration cal = calibrate_nu(qq, std::numeric_limits<double>::infinity());
        note = "c_nu = " + std::to_string(cal.c_nu);
        if (cal.residual <= c.tolerance("calibration")) q = qq;
        return cal.residual;
      });
  auto need_q = [&]() -> QuantSpec& {
    if (!q) fail(ErrorCode::NotCalibrated, "calibration did not succeed");
    return *q;
  };
  run("trace_identity", "held-out |Tr[op(a)op(b)*] - int a conj(b) dtheta| / (|a||b|)", c.tolerance("trace_identity"),
      [&](std::string&) {
        QuantSpec& qq = need_q();
        auto h = held_out_panel(qq.zdual);
        double w = 0;
        for (int i = 0; i < 5; ++i) {
          const auto& a = h[i];
          const auto& b = h[(i + 2) % 5];
          cd tr = (pedersen_op(qq, 1, a).array() * pedersen_op(qq, 1, b).array().conjugate()).sum();
          w = std::max(w, std::abs(tr - theta_inner(qq, a, b)) /
                              std::sqrt(std::real(theta_inner(qq, a, a)) * std::real(theta_inner(qq, b, b))));
        }
        return w;
      });
  if (g.dim == 3)
    run("weyl_oracle", "op(phi) has kernel int phi((t+s)/2, xi) e^{2 pi i xi (t-s)} dxi", c.tolerance("weyl_oracle"),
        [&](std::string&) {
          QuantSpec& qq = need_q();
          PointFunction phi = [](const Eigen::VectorXd& x) {
            return std::exp(-kPi * x.squaredNorm()) * cd(1 + x[0] * x[1], 0.5 * x[1]);
          };
          Eigen::MatrixXcd W = weyl_oracle(qq.rep.rep_grid, phi);
          return (pedersen_op(qq, 1, sample(phi, qq.zdual, SpaceTag::CentralDual)) - W).norm() / W.norm();
        });

  std::optional<SampledFunction> phi;
  auto need_phi = [&]() -> const SampledFunction& {
    if (!phi) {
      SampledFunction raw = (c.function_expr.empty() && c.function_file.empty())
                                ? sample(panel_function(g.dim, "gauss"), config_group_grid(c, g.dim))
                                : config_function(c, g);
      phi = project_star(raw, c.star_r, c.star_m);
    }
    return *phi;
  };
  const LambdaGrid lg = c.lambda_grid();
  std::optional<FourierResiduals> fr;
  auto need_fr = [&]() -> const FourierResiduals& {
    if (!fr) fr = fourier_residuals(need_phi(), need_q(), lg);
    return *fr;
  };
  run("oracle", "F_pi phi(l) = sum_k phi(x_k) pi_l(x_k)* h^d at every lambda node", c.tolerance("oracle"),
      [&](std::string&) { return need_fr().oracle; });
  run("plancherel", "||phi||^2 = sum_m w_m density(l_m) ||F_pi phi(l_m)||_HS^2", c.tolerance("plancherel"),
      [&](std::string&) { return need_fr().plancherel; });
  run("inversion", "phi(x) = sum_m w_m density(l_m) Tr[pi_l(x) F_pi phi(l_m)]", c.tolerance("inversion"),
      [&](std::string&) { return need_fr().inversion; });

  std::optional<KnResiduals> kr;
  auto need_kr = [&]() -> const KnResiduals& {
    if (!kr) kr = kn_residuals(need_phi(), need_q(), lg, config_symbol_x_grid(c, g.dim));
    return *kr;
  };
  run("kn_identity", "Op(I) phi = phi", c.tolerance("kn_identity"), [&](std::string&) { return need_kr().identity; });
  run("kn_multiplication", "symbol of multiplication by m is m(x) I", c.tolerance("kn_multiplication"),
      [&](std::string&) { return need_kr().multiplication; });
  run("symbol_locality", "symbols of left-invariant operators do not depend on x", c.tolerance("symbol_locality"),
      [&](std::string&) { return need_kr().locality; });
  run("kn_roundtrip", "Op(S(A)) phi = A phi for multiplication, left-invariant and composed operators",
      c.tolerance("kn_roundtrip"), [&](std::string&) { return need_kr().roundtrip; });
  run("character", "op(psi_R . chi_x pulled back) -> pi_l(x), decreasing over R = 1, 1.5, 2", c.tolerance("character"),
      [&](std::string& note) {
        auto res = character_residuals(need_q());
        double w = 0;
        bool mono = true;
        for (const auto& row : res) {
          w = std::max(w, row.back());
          mono = mono && row[0] > row[1] && row[1] > row[2];
        }
        if (!mono) {
          note = "residual does not decrease with the taper width";
          return std::numeric_limits<double>::infinity();
        }
        return w;
      });

  // finite numeric residuals above tolerance are discretization failures
  const std::string grids = "rep " + config_rep_grid(c, (g.dim - 1) / 2).describe() + ", zdual " +
                            config_zdual_grid(c, g.dim).describe() + ", omega " + config_omega_grid(c, g.dim).describe();
  for (auto& ck : rep.checks)
    if (!ck.pass && ck.tol > 0 && std::isfinite(ck.residual) && ck.note.find(':') == std::string::npos)
      ck.note = "GridTooCoarse: residual above tolerance on " + grids + (ck.note.empty() ? "" : "; " + ck.note);
  return rep;
}

}  // namespace nilharm
