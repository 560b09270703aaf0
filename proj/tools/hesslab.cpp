// Command-line driver: simulate, verify, kowalevski, spectral, reduce.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "hesslab/kowalevski.hpp"
#include "hesslab/poisson.hpp"
#include "hesslab/spectral.hpp"

using namespace hesslab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string spec_path;
  std::string out_dir = ".";
  uint64_t seed = 42;
  double t_end = 10.0;
  double dt = 1e-3;
  double tol = 1e-10;
  std::string method = "rk4";
  std::string format = "json";
};

uint64_t effective_seed(uint64_t cli_seed) {
  if (const char* env = std::getenv("HESSLAB_SEED")) return std::strtoull(env, nullptr, 10);
  return cli_seed;
}

void write_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    os << content;
  }
  fs::rename(tmp, path);
}

void write_json(const fs::path& path, json j) {
  j["schema"] = 1;
  write_atomic(path, j.dump(2) + "\n");
}

Mat mat_from_json(const json& rows) {
  int n = static_cast<int>(rows.size());
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows.at(i).at(j).get<double>();
  return m;
}

SystemSpec load_spec(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open spec file " + path);
  json j = json::parse(is);
  SystemKind kind = kind_from_name(j.at("kind").get<std::string>());
  Params params;
  if (j.contains("params"))
    for (auto& [k, v] : j["params"].items()) params[k] = v.get<double>();
  if (j.contains("n")) params["n"] = j["n"].get<double>();
  std::optional<Mat> J, chi;
  if (j.contains("J")) J = mat_from_json(j["J"]);
  if (j.contains("chi")) chi = mat_from_json(j["chi"]);
  return make_spec(kind, params, J, chi);
}

PhaseState initial_state(const SystemSpec& spec, const std::string& path,
                         uint64_t seed, bool compliant) {
  std::ifstream is(path);
  json j = json::parse(is);
  if (j.contains("state")) {
    PhaseState st;
    st.M = SkewR::from_matrix(mat_from_json(j["state"].at("M")), 1e-9);
    st.Gamma = SkewR::from_matrix(mat_from_json(j["state"].at("Gamma")), 1e-9);
    return st;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 0.5);
  PhaseState st;
  st.M = SkewR::zero(spec.n);
  st.Gamma = SkewR::zero(spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int k = i + 1; k < spec.n; ++k) {
      st.M.set(i, k, nd(rng));
      st.Gamma.set(i, k, nd(rng));
    }
  if (compliant) {
    if (spec.n == 3 && spec.kind == SystemKind::ClassicalHA) {
      // put the state on the invariant surface M1 x0 + M3 z0 = 0
      Vec3 m = unhat(st.M), x = unhat(spec.chi);
      if (std::abs(x(2)) > 1e-12) m(2) = -m(0) * x(0) / x(2);
      st.M = hat(m);
    } else if (spec.n >= 4) {
      st.M.set(0, 1, 0.0);
      if (spec.kind == SystemKind::HAn && spec.n > 4) {
        for (int l = 2; l < spec.n; ++l)
          for (int p = l + 1; p < spec.n; ++p) st.M.set(l, p, 0.0);
      } else {
        st.M.set(2, 3, 0.0);
      }
    }
  }
  if (spec.n == 4) {
    // physical pose: both so(3) halves unit vectors
    Vec3Pair gp = split_so4(st.Gamma);
    Vec3 g1 = 0.5 * (gp.plus + gp.minus), g2 = 0.5 * (gp.plus - gp.minus);
    g1.normalize();
    g2.normalize();
    st.Gamma = join_so4({g1 + g2, g1 - g2});
  } else {
    double nrm = std::sqrt(pair_inner(st.Gamma, st.Gamma));
    if (nrm > 1e-12) st.Gamma = st.Gamma * (1.0 / nrm);
  }
  return st;
}

std::string csv_of(const SystemSpec& spec, const Trajectory& tr) {
  std::string out = "t";
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j)
      out += ",M_" + std::to_string(i + 1) + std::to_string(j + 1);
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j)
      out += ",Gamma_" + std::to_string(i + 1) + std::to_string(j + 1);
  for (const auto& name : tr.monitor_names) out += "," + name;
  out += "\n";
  char buf[32];
  for (size_t k = 0; k < tr.samples.size(); ++k) {
    const auto& s = tr.samples[k];
    std::snprintf(buf, sizeof buf, "%.12g", s.t);
    out += buf;
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, ",%.12g", v);
      out += buf;
    };
    for (int i = 0; i < spec.n; ++i)
      for (int j = i + 1; j < spec.n; ++j) put(s.M(i, j));
    for (int i = 0; i < spec.n; ++i)
      for (int j = i + 1; j < spec.n; ++j) put(s.Gamma(i, j));
    for (double v : tr.monitors[k]) put(v);
  }
  return out;
}

json drift_summary(const Trajectory& tr) {
  json drifts;
  for (size_t c = 0; c < tr.monitor_names.size(); ++c) {
    double first = tr.monitors.front()[c], worst = 0;
    for (const auto& row : tr.monitors)
      worst = std::max(worst, std::abs(row[c] - first));
    drifts[tr.monitor_names[c]] = worst;
  }
  return drifts;
}

json cvec_json(const CVec& v) {
  json a = json::array();
  for (int k = 0; k < v.size(); ++k)
    a.push_back({{"re", v(k).real()}, {"im", v(k).imag()}});
  return a;
}

int cmd_simulate(const RunConfig& cfg) {
  SystemSpec spec = load_spec(cfg.spec_path);
  // default sampled states sit on the invariant manifold; off-manifold
  // experiments supply an explicit "state" in the spec file
  PhaseState st = initial_state(spec, cfg.spec_path, cfg.seed, true);
  IntegratorConfig icfg;
  icfg.method = cfg.method == "rkf45" ? Method::RKF45 : Method::RK4;
  icfg.dt = cfg.dt;
  icfg.tol = cfg.tol;
  icfg.t_end = cfg.t_end;
  Trajectory tr = integrate(spec, st, icfg);
  fs::create_directories(cfg.out_dir);
  write_atomic(fs::path(cfg.out_dir) / "trajectory.csv", csv_of(spec, tr));

  json summary;
  summary["seed"] = cfg.seed;
  summary["kind"] = kind_name(spec.kind);
  summary["samples"] = tr.samples.size();
  summary["max_drifts"] = drift_summary(tr);
  json finalM = json::array(), finalG = json::array();
  const auto& last = tr.samples.back();
  for (int i = 0; i < spec.n; ++i) {
    json rm = json::array(), rg = json::array();
    for (int j = 0; j < spec.n; ++j) {
      rm.push_back(last.M.mat()(i, j));
      rg.push_back(last.Gamma.mat()(i, j));
    }
    finalM.push_back(rm);
    finalG.push_back(rg);
  }
  summary["final_state"] = {{"t", last.t}, {"M", finalM}, {"Gamma", finalG}};
  json invres;
  if (spec.n >= 4) {
    double w12 = 0, w34 = 0;
    for (const auto& s : tr.samples) {
      w12 = std::max(w12, std::abs(s.M(0, 1)));
      w34 = std::max(w34, std::abs(s.M(2, 3)));
    }
    invres["M12"] = w12;
    invres["M34"] = w34;
  } else {
    double w = 0;
    for (size_t k = 0; k < tr.samples.size(); ++k)
      w = std::max(w, std::abs(tr.monitors[k][tr.channel("F4")]));
    invres["F4"] = w;
  }
  summary["invariant_residuals"] = invres;
  write_json(fs::path(cfg.out_dir) / "summary.json", summary);
  std::printf("wrote %s/trajectory.csv (%zu samples)\n", cfg.out_dir.c_str(),
              tr.samples.size());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  SystemSpec spec = load_spec(cfg.spec_path);
  fs::create_directories(cfg.out_dir);
  json rep;
  rep["seed"] = cfg.seed;
  rep["suite"] = suite;
  bool pass = true;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> nd(0.0, 0.6);
  auto rand_compliant = [&]() {
    PhaseState st = initial_state(spec, cfg.spec_path, rng(), true);
    return st;
  };

  if (suite == "lax") {
    double worst_on = 0, worst_coeff = 0;
    for (int k = 0; k < 100; ++k)
      worst_on = std::max(worst_on, lax_residual(spec, rand_compliant()));
    pass &= worst_on < 1e-10;
    rep["residual_compliant"] = worst_on;
    if (spec.n == 4) {
      for (int k = 0; k < 20; ++k) {
        PhaseState st = rand_compliant();
        LaxPair p = build(spec, st);
        SpectralCoefficients sc = spectral_coeffs(p.L);
        for (int probe = 0; probe < 20; ++probe) {
          double lam = nd(rng), mu = nd(rng);
          double P = sc.a * std::pow(lam, 4) + sc.b * std::pow(lam, 3) +
                     sc.c * lam * lam + sc.d * lam + sc.e;
          double Q = sc.f * std::pow(lam, 4) + sc.g * std::pow(lam, 3) +
                     sc.h * lam * lam + sc.i * lam + sc.j;
          double det = (p.L.eval(lam) - mu * Mat::Identity(4, 4)).determinant();
          worst_coeff = std::max(worst_coeff,
                                 std::abs(det - (std::pow(mu, 4) + P * mu * mu + Q * Q)) /
                                     std::max(1.0, std::abs(det)));
        }
      }
      pass &= worst_coeff < 1e-10;
      rep["determinant_check"] = worst_coeff;
    }
    IntegratorConfig icfg;
    icfg.method = Method::RKF45;
    icfg.tol = 1e-10;
    icfg.t_end = cfg.t_end;
    Trajectory tr = integrate(spec, rand_compliant(), icfg);
    IsospectralityReport iso = isospectrality_report(spec, tr);
    json drifts;
    for (size_t k = 0; k < iso.names.size(); ++k) {
      drifts[iso.names[k]] = iso.max_rel_drift[k];
      if (iso.names[k] == "b" || iso.names[k] == "g")
        pass &= iso.max_abs_drift[k] < 1e-8;
      else
        pass &= iso.max_rel_drift[k] < 1e-7;
    }
    rep["coefficient_drift"] = drifts;
    rep["eigenvalue_drift"] = iso.eigenvalue_drift;
    pass &= iso.eigenvalue_drift < 1e-6;
  } else if (suite == "poisson") {
    if (spec.n == 4) {
      double x12 = spec.param_or("chi12", spec.chi(0, 1));
      double x34 = spec.param_or("chi34", spec.chi(2, 3));
      PoissonStructure s1 = standard_sond(4), s2 = second_structure_so4(x12, x34);
      double jac = 0, sch = 0;
      for (const Vec& x : sample_points(12, 100, cfg.seed)) {
        jac = std::max({jac, jacobi_defect(s1, x), jacobi_defect(s2, x)});
        sch = std::max(sch, schouten_defect(s1, s2, x));
      }
      rep["jacobi"] = jac;
      rep["schouten"] = sch;
      pass &= jac < 1e-9 && sch < 1e-10;
      if (spec.kind == SystemKind::LagrangeBitop) {
        double bi = bihamiltonian_check(s1, hamiltonian_field(spec, Which::H_first),
                                        s2, hamiltonian_field(spec, Which::H_second),
                                        100, cfg.seed);
        rep["bihamiltonian"] = bi;
        pass &= bi < 1e-8;
      }
    } else if (spec.n == 3) {
      PoissonStructure s1 = standard_e3(), s2 = second_e3();
      double jac = 0;
      for (const Vec& x : sample_points(6, 100, cfg.seed))
        jac = std::max({jac, jacobi_defect(s1, x), jacobi_defect(s2, x)});
      rep["jacobi"] = jac;
      pass &= jac < 1e-9;
      if (spec.kind == SystemKind::LagrangeTop) {
        double bi = bihamiltonian_check(s1, hamiltonian_field(spec, Which::H_first),
                                        s2, hamiltonian_field(spec, Which::H_second),
                                        100, cfg.seed);
        rep["bihamiltonian"] = bi;
        pass &= bi < 1e-8;
      }
    } else {
      PoissonStructure s1 = standard_sond(spec.n), s2 = second_structure_sond(spec.n);
      double jac = 0, sch = 0;
      for (const Vec& x : sample_points(spec.n * (spec.n - 1), 50, cfg.seed)) {
        jac = std::max({jac, jacobi_defect(s1, x), jacobi_defect(s2, x)});
        sch = std::max(sch, schouten_defect(s1, s2, x));
      }
      rep["jacobi"] = jac;
      rep["schouten"] = sch;
      pass &= jac < 1e-9 && sch < 1e-10;
      if (spec.kind == SystemKind::LagrangeTop) {
        double bi = bihamiltonian_check(s1, hamiltonian_field(spec, Which::H_first),
                                        s2, hamiltonian_field(spec, Which::H_second),
                                        100, cfg.seed);
        rep["bihamiltonian"] = bi;
        pass &= bi < 1e-8;
      }
    }
  } else if (suite == "reduction") {
    PhaseState st = rand_compliant();
    IntegratorConfig icfg;
    icfg.dt = cfg.dt;
    icfg.t_end = std::min(cfg.t_end, 5.0);
    Trajectory full = integrate(spec, st, icfg);
    ReducedTrajectory red = integrate_reduced(spec, st, icfg.dt, icfg.t_end);
    double worst = 0;
    for (size_t k = 0; k < red.samples.size(); ++k) {
      ReducedState rs = reduce(spec, full.samples[k]);
      worst = std::max(worst, (red.samples[k][0] - rs.one.M).cwiseAbs().maxCoeff());
      worst = std::max(worst, (red.samples[k][3] - rs.two.Gamma).cwiseAbs().maxCoeff());
    }
    rep["split_vs_full"] = worst;
    pass &= worst < 1e-8;
    IntegratorConfig fine;
    fine.dt = 2e-4;
    fine.t_end = 2.0;
    QuadratureReport q = quadrature_check(spec, integrate(spec, st, fine));
    rep["quadrature"] = {{"gamma3", q.gamma3_residual},
                         {"K", q.K_residual},
                         {"l", q.l_residual},
                         {"skipped", q.skipped_segments}};
    pass &= q.gamma3_residual < 1e-6 && q.K_residual < 1e-6 && q.l_residual < 1e-6;
  } else if (suite == "spectral") {
    int genus_ok = 0, dp_ok = 0;
    json curves = json::array();
    for (int k = 0; k < 10; ++k) {
      PhaseState st = initial_state(spec, cfg.spec_path, rng(), false);
      CurveData cd = curve_data(spectral_coeffs(build(spec, st).L));
      Gamma1Curve g = curve_gamma1(cd);
      DoublePoints dp = double_points(cd);
      if (g.genus == 3 && !g.degenerate) genus_ok++;
      if (dp.simple && dp.normalization_genus == 5) dp_ok++;
      curves.push_back({{"genus", g.genus},
                        {"degenerate", g.degenerate},
                        {"double_points", dp.lambdas.size()},
                        {"normalization_genus", dp.normalization_genus}});
    }
    rep["curves"] = curves;
    pass &= genus_ok == 10 && dp_ok == 10;
  } else {
    std::fprintf(stderr, "unknown suite %s\n", suite.c_str());
    return 2;
  }
  rep["pass"] = pass;
  write_json(fs::path(cfg.out_dir) / ("verify_" + suite + ".json"), rep);
  std::printf("%s: %s\n", suite.c_str(), pass ? "pass" : "FAIL");
  return pass ? 0 : 1;
}

json solution_json(const BalanceSolution& s) {
  return {{"C", cvec_json(s.C)},
          {"residual", s.residual},
          {"exponents", cvec_json(s.exponents)},
          {"rank_deficiency", s.rank_deficiency}};
}

std::string exponent_csv(const std::vector<BalanceSolution>& sols) {
  std::string out = "solution,k,re,im\n";
  char buf[96];
  for (size_t s = 0; s < sols.size(); ++s)
    for (int k = 0; k < sols[s].exponents.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%d,%.12g,%.12g\n", s, k,
                    sols[s].exponents(k).real(), sols[s].exponents(k).imag());
      out += buf;
    }
  return out;
}

int cmd_kowalevski(const RunConfig& cfg, int dim, double J13, double J24,
                   int example, const std::string& theorem5_b, double Jscalar) {
  fs::create_directories(cfg.out_dir);
  json rep;
  rep["seed"] = cfg.seed;
  auto index_of = [](int n, int i, int j) {
    int k = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (a == i && b == j) return k;
        ++k;
      }
    return -1;
  };

  if (!theorem5_b.empty()) {
    auto beta = parse_linear_b(theorem5_b);
    ClassificationVerdict v = classification_filter(beta, Jscalar);
    rep["b"] = theorem5_b;
    rep["pass"] = v.pass;
    rep["classical_equivalent"] = v.classical_equivalent;
    rep["qh"] = v.qh_ok;
    rep["failing_branches"] = v.failing_branches;
    json pchs = json::array();
    for (int br = 0; br < 4; ++br) {
      json p = json::array();
      for (cplx ck : v.pch[br]) p.push_back({{"re", ck.real()}, {"im", ck.imag()}});
      pchs.push_back(p);
    }
    rep["pch"] = pchs;
    write_json(fs::path(cfg.out_dir) / "theorem5.json", rep);
    std::printf("theorem5(%s): %s\n", theorem5_b.c_str(), v.pass ? "pass" : "fail");
    return v.pass ? 0 : 1;
  }

  SolveOptions opt;
  opt.seed = cfg.seed;
  opt.starts = 300;
  std::vector<BalanceSolution> sols;
  BalanceMask mask;
  if (dim == 3) {
    QHSystem sys = qh_field_3d({1, 0, 0, 0, 0, 0}, J13);
    mask.zero = {2};
    sols = solve_balances(sys, mask, opt);
  } else if (dim == 4) {
    QHSystem sys = example == 1 ? qh_field_sond(4, 0.3, 0.7, 0.0, J24, 1.0, 2.0)
                                : qh_field_sond(4, 1.0, 3.0, J13, J24, 1.0, 2.0);
    mask.zero = {index_of(4, 0, 1), index_of(4, 2, 3)};
    if (example == 2) mask.pinned = {{index_of(4, 0, 2), 0.0}};  // the d2 = 0 branch
    sols = solve_balances(sys, mask, opt);
  } else if (dim == 5) {
    QHSystem sys = qh_field_sond(5, 1.0, 3.0, J13, J24, 1.0, 0.0);
    mask.zero = {index_of(5, 0, 1), index_of(5, 2, 3), index_of(5, 2, 4),
                 index_of(5, 3, 4)};
    mask.pinned = {{index_of(5, 1, 2), 0.0}, {index_of(5, 1, 4), 0.0}};
    opt.starts = 400;
    sols = solve_balances(sys, mask, opt);
  } else if (dim == 6) {
    QHSystem sys = qh_field_sond(6, 1.0, 3.0, J13, J24, 1.0, 0.0);
    mask.zero = {index_of(6, 0, 1), index_of(6, 2, 3), index_of(6, 2, 4),
                 index_of(6, 2, 5), index_of(6, 3, 4), index_of(6, 3, 5),
                 index_of(6, 4, 5)};
    mask.pinned = {{index_of(6, 1, 2), 0.0}, {index_of(6, 1, 3), 0.0},
                   {index_of(6, 1, 4), 0.0}, {index_of(6, 1, 5), 0.0}};
    opt.starts = 400;
    sols = solve_balances(sys, mask, opt);
  } else {
    std::fprintf(stderr, "unsupported --dim %d\n", dim);
    return 2;
  }
  QHSystem sys_for_ara =
      dim == 3 ? qh_field_3d({1, 0, 0, 0, 0, 0}, J13)
               : (dim == 4 ? (example == 1 ? qh_field_sond(4, 0.3, 0.7, 0.0, J24, 1.0, 2.0)
                                           : qh_field_sond(4, 1.0, 3.0, J13, J24, 1.0, 2.0))
                           : (dim == 5 ? qh_field_sond(5, 1.0, 3.0, J13, J24, 1.0, 0.0)
                                       : qh_field_sond(6, 1.0, 3.0, J13, J24, 1.0, 0.0)));
  json sj = json::array();
  for (const auto& s : sols) {
    json e = solution_json(s);
    try {
      AraReport ar = ara_check(sys_for_ara, s, mask);
      e["ara"] = {{"p", ar.p},
                  {"tangent", ar.tangent},
                  {"transversal", ar.transversal},
                  {"pass", ar.pass}};
    } catch (const std::exception& ex) {
      e["ara"] = {{"ambiguous", ex.what()}};
    }
    sj.push_back(e);
  }
  rep["solutions"] = sj;
  rep["masks"] = {{"zero", mask.zero}};
  write_json(fs::path(cfg.out_dir) / "kowalevski.json", rep);
  write_atomic(fs::path(cfg.out_dir) / "exponents.csv", exponent_csv(sols));
  std::printf("found %zu balance solutions (dim %d)\n", sols.size(), dim);
  return 0;
}

int cmd_spectral(const RunConfig& cfg) {
  SystemSpec spec = load_spec(cfg.spec_path);
  PhaseState st = initial_state(spec, cfg.spec_path, cfg.seed, true);
  CurveData cd = curve_data(spectral_coeffs(build(spec, st).L));
  Gamma1Curve g = curve_gamma1(cd);
  DoublePoints dp = double_points(cd);
  CurvePair cp = curves_c1c2(cd);
  ReducedState rs = reduce(spec, st);
  json rep;
  rep["seed"] = cfg.seed;
  rep["genus"] = g.genus;
  rep["degenerate"] = g.degenerate;
  json dps = json::array();
  for (size_t k = 0; k < dp.lambdas.size(); ++k)
    dps.push_back({{"re", dp.lambdas[k].real()},
                   {"im", dp.lambdas[k].imag()},
                   {"multiplicity", dp.multiplicity[k]}});
  rep["double_points"] = dps;
  rep["normalization_genus"] = dp.normalization_genus;
  rep["E1"] = {{"A", rs.one.A}, {"B", rs.one.B}, {"C", rs.one.C},
               {"j_re", cp.j1.real()}, {"j_im", cp.j1.imag()}};
  rep["E2"] = {{"A", rs.two.A}, {"B", rs.two.B}, {"C", rs.two.C},
               {"j_re", cp.j2.real()}, {"j_im", cp.j2.imag()}};
  fs::create_directories(cfg.out_dir);
  write_json(fs::path(cfg.out_dir) / "curves.json", rep);
  std::printf("genus %d, %zu double points, normalization genus %d\n", g.genus,
              dp.lambdas.size(), dp.normalization_genus);
  return 0;
}

int cmd_reduce(const RunConfig& cfg) {
  SystemSpec spec = load_spec(cfg.spec_path);
  PhaseState st = initial_state(spec, cfg.spec_path, cfg.seed, true);
  ReducedState rs = reduce(spec, st);
  json rep;
  rep["seed"] = cfg.seed;
  auto half = [](const ReducedHalf& h) {
    return json{{"M", {h.M(0), h.M(1), h.M(2)}},
                {"Gamma", {h.Gamma(0), h.Gamma(1), h.Gamma(2)}},
                {"chi", {h.chi(0), h.chi(1), h.chi(2)}},
                {"h", h.h},
                {"c", h.c},
                {"K", h.K},
                {"l", h.l},
                {"elliptic", {{"A", h.A}, {"B", h.B}, {"C", h.C}}}};
  };
  rep["one"] = half(rs.one);
  rep["two"] = half(rs.two);
  fs::create_directories(cfg.out_dir);
  write_json(fs::path(cfg.out_dir) / "reduced.json", rep);
  std::printf("reduced state written to %s/reduced.json\n", cfg.out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hesslab: numerical laboratory for Hess-Appel'rot systems"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string suite, theorem5_b;
  int dim = 3, example = 0;
  double J13 = 1.0, J24 = 0.0, Jscalar = 1.0;
  bool theorem5 = false;

  auto add_common = [&](CLI::App* sub, bool needs_spec) {
    if (needs_spec)
      sub->add_option("--spec", cfg.spec_path, "system spec JSON")->required();
    sub->add_option("--seed", cfg.seed, "RNG seed (HESSLAB_SEED overrides)");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--t-end", cfg.t_end, "integration horizon");
    sub->add_option("--dt", cfg.dt, "fixed step (rk4)");
    sub->add_option("--tol", cfg.tol, "adaptive tolerance (rkf45)");
    sub->add_option("--format", cfg.format, "json|csv");
  };

  CLI::App* sim = app.add_subcommand("simulate", "integrate and monitor");
  add_common(sim, true);
  sim->add_option("--method", cfg.method, "rk4|rkf45");

  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  add_common(ver, true);
  ver->add_option("--suite", suite, "lax|poisson|reduction|spectral")->required();

  CLI::App* kow = app.add_subcommand("kowalevski", "balances, exponents, theorem-5");
  add_common(kow, false);
  kow->add_option("--dim", dim, "3..6");
  kow->add_option("--J13", J13, "J13 parameter");
  kow->add_option("--J24", J24, "J24 parameter");
  kow->add_option("--example", example, "example selector for dim 4");
  kow->add_flag("--theorem5", theorem5, "run the theorem-5 filter");
  kow->add_option("--b", theorem5_b, "perturbing function, e.g. \"z1+2*z3\"");
  kow->add_option("--J", Jscalar, "scalar J for theorem-5");

  CLI::App* spc = app.add_subcommand("spectral", "curve report at a sampled state");
  add_common(spc, true);

  CLI::App* red = app.add_subcommand("reduce", "so(4) -> so(3)+so(3) reduction data");
  add_common(red, true);

  CLI11_PARSE(app, argc, argv);
  cfg.seed = effective_seed(cfg.seed);

  try {
    if (sim->parsed()) return cmd_simulate(cfg);
    if (ver->parsed()) return cmd_verify(cfg, suite);
    if (kow->parsed())
      return cmd_kowalevski(cfg, dim, J13, J24, example,
                            theorem5 ? theorem5_b : "", Jscalar);
    if (spc->parsed()) return cmd_spectral(cfg);
    if (red->parsed()) return cmd_reduce(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
