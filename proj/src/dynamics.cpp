#include "hesslab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "hesslab/lax.hpp"

namespace hesslab {

int Trajectory::channel(const std::string& name) const {
  auto it = std::find(monitor_names.begin(), monitor_names.end(), name);
  if (it == monitor_names.end())
    throw std::invalid_argument("no monitor channel " + name);
  return static_cast<int>(it - monitor_names.begin());
}

std::vector<double> Trajectory::series(const std::string& name) const {
  int c = channel(name);
  std::vector<double> out(monitors.size());
  for (size_t k = 0; k < monitors.size(); ++k) out[k] = monitors[k][c];
  return out;
}

std::pair<SkewR, SkewR> rhs(const SystemSpec& spec, const PhaseState& st) {
  if (st.M.n() != spec.n || st.Gamma.n() != spec.n)
    throw DimensionMismatch("rhs: state/spec dimension mismatch");
  SkewR Om = omega_of(spec, st.M);
  SkewR Mdot = commutator(st.M, Om) + commutator(st.Gamma, spec.chi);
  SkewR Gdot = commutator(st.Gamma, Om);
  return {Mdot, Gdot};
}

namespace {

Vec pack(const PhaseState& st) {
  Vec m = st.M.upper(), g = st.Gamma.upper();
  Vec out(m.size() + g.size());
  out << m, g;
  return out;
}

PhaseState unpack(int n, const Vec& y, double t) {
  int np = n * (n - 1) / 2;
  PhaseState st;
  st.M = SkewR::from_upper(n, y.head(np));
  st.Gamma = SkewR::from_upper(n, y.tail(np));
  st.t = t;
  return st;
}

Vec deriv(const SystemSpec& spec, const Vec& y) {
  PhaseState st = unpack(spec.n, y, 0.0);
  auto [Md, Gd] = rhs(spec, st);
  Vec out(y.size());
  out << Md.upper(), Gd.upper();
  return out;
}

Vec rk4_step(const SystemSpec& spec, const Vec& y, double h) {
  Vec k1 = deriv(spec, y);
  Vec k2 = deriv(spec, y + 0.5 * h * k1);
  Vec k3 = deriv(spec, y + 0.5 * h * k2);
  Vec k4 = deriv(spec, y + h * k3);
  return y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
}

// Fehlberg 4(5) pair
struct Rkf45Result {
  Vec y5;
  double err;
};

Rkf45Result rkf45_step(const SystemSpec& spec, const Vec& y, double h) {
  Vec k1 = deriv(spec, y);
  Vec k2 = deriv(spec, y + h * (1.0 / 4) * k1);
  Vec k3 = deriv(spec, y + h * (3.0 / 32 * k1 + 9.0 / 32 * k2));
  Vec k4 = deriv(spec, y + h * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 +
                                7296.0 / 2197 * k3));
  Vec k5 = deriv(spec, y + h * (439.0 / 216 * k1 - 8.0 * k2 + 3680.0 / 513 * k3 -
                                845.0 / 4104 * k4));
  Vec k6 = deriv(spec, y + h * (-8.0 / 27 * k1 + 2.0 * k2 - 3544.0 / 2565 * k3 +
                                1859.0 / 4104 * k4 - 11.0 / 40 * k5));
  Vec y4 = y + h * (25.0 / 216 * k1 + 1408.0 / 2565 * k3 + 2197.0 / 4104 * k4 -
                    1.0 / 5 * k5);
  Vec y5 = y + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 + 28561.0 / 56430 * k4 -
                    9.0 / 50 * k5 + 2.0 / 55 * k6);
  return {y5, (y5 - y4).cwiseAbs().maxCoeff()};
}

void append_monitors(const SystemSpec& spec, const PhaseState& st, Trajectory& tr,
                     bool first) {
  std::vector<std::pair<std::string, double>> vals = first_integrals(spec, st);
  if (spec.n >= 4) {
    // invariant-relation residual channels
    vals.emplace_back("rel_M12", st.M(0, 1));
    if (spec.kind == SystemKind::HA4 || spec.kind == SystemKind::LagrangeBitop ||
        spec.n == 4)
      vals.emplace_back("rel_M34", st.M(2, 3));
    if (spec.kind == SystemKind::HAn && spec.n > 4) {
      double worst = 0.0;
      for (int l = 2; l < spec.n; ++l)
        for (int p = l + 1; p < spec.n; ++p)
          worst = std::max(worst, std::abs(st.M(l, p)));
      vals.emplace_back("rel_Mlp", worst);
    }
    if (spec.n == 4) {
      SkewR Om = omega_of(spec, st.M);
      vals.emplace_back("Omega12", Om(0, 1));
      vals.emplace_back("Omega34", Om(2, 3));
    }
  }
  if (first) {
    tr.monitor_names.clear();
    for (auto& [k, v] : vals) tr.monitor_names.push_back(k);
  }
  std::vector<double> row(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) row[i] = vals[i].second;
  tr.monitors.push_back(std::move(row));
}

}  // namespace

Trajectory integrate(const SystemSpec& spec, const PhaseState& st0,
                     const IntegratorConfig& cfg) {
  Trajectory tr;
  Vec y = pack(st0);
  double t = st0.t;
  const double t_end = st0.t + cfg.t_end;

  PhaseState cur = st0;
  tr.samples.push_back(cur);
  append_monitors(spec, cur, tr, true);

  if (cfg.method == Method::RK4) {
    const double h = cfg.dt;
    if (h <= 0) throw std::invalid_argument("dt must be positive");
    long nsteps = static_cast<long>(std::ceil((t_end - t) / h - 1e-12));
    for (long k = 0; k < nsteps; ++k) {
      double step = std::min(h, t_end - t);
      y = rk4_step(spec, y, step);
      t += step;
      cur = unpack(spec.n, y, t);
      tr.samples.push_back(cur);
      append_monitors(spec, cur, tr, false);
    }
  } else {
    double h = std::min(cfg.dt_max, cfg.t_end / 10);
    while (t < t_end - 1e-14) {
      h = std::min(h, t_end - t);
      Rkf45Result r = rkf45_step(spec, y, h);
      double scale = std::max(1.0, y.cwiseAbs().maxCoeff());
      if (r.err <= cfg.tol * scale) {
        y = r.y5;
        t += h;
        cur = unpack(spec.n, y, t);
        tr.samples.push_back(cur);
        append_monitors(spec, cur, tr, false);
        double grow = (r.err > 0) ? 0.9 * std::pow(cfg.tol * scale / r.err, 0.2) : 4.0;
        h = std::min(cfg.dt_max, h * std::min(4.0, std::max(1.0, grow)));
      } else {
        h *= std::max(0.1, 0.9 * std::pow(cfg.tol * scale / r.err, 0.25));
        if (h < cfg.dt_min)
          throw StepSizeUnderflow("RKF45 cannot meet tolerance at t=" +
                                  std::to_string(t));
      }
    }
  }
  return tr;
}

std::vector<std::pair<std::string, double>> first_integrals(const SystemSpec& spec,
                                                            const PhaseState& st) {
  std::vector<std::pair<std::string, double>> out;
  out.emplace_back("energy", hamiltonian(spec, st, Which::H_first));
  if (spec.n == 3) {
    Vec3 m = unhat(st.M), g = unhat(st.Gamma), x = unhat(spec.chi);
    Vec3 om = spec.J.mat() * m;
    out.emplace_back("F1", 0.5 * m.dot(om) + g.dot(x));
    out.emplace_back("F2", m.dot(g));
    out.emplace_back("F3", g.dot(g));
    double x0 = spec.param_or("x0", x(0)), z0 = spec.param_or("z0", x(2));
    out.emplace_back("F4", m(0) * x0 + m(2) * z0);
    return out;
  }
  const Mat& G = st.Gamma.mat();
  const Mat& M = st.M.mat();
  Mat G2 = G * G;
  for (int k = 1; 2 * k <= spec.n; ++k) {
    Mat Gp = G2;
    for (int r = 1; r < k; ++r) Gp = Gp * G2;
    out.emplace_back("trG" + std::to_string(2 * k), Gp.trace());
    out.emplace_back("trMG" + std::to_string(2 * k + 1), (M * Gp * G).trace());
  }
  if (spec.n == 4) {
    LaxPair lp = build(spec, st);
    SpectralCoefficients c = spectral_coeffs(lp.L);
    const char* names = "abcdefghij";
    const double vals[10] = {c.a, c.b, c.c, c.d, c.e, c.f, c.g, c.h, c.i, c.j};
    for (int k = 0; k < 10; ++k)
      out.emplace_back(std::string("coef_") + names[k], vals[k]);
  }
  return out;
}

double phase_rate_check(const SystemSpec& spec, const Trajectory& traj,
                    double relation_tol) {
  if (spec.n != 4) throw Unsupported("phase_rate_check: n must be 4");
  const double J13 = spec.param("J13"), J24 = spec.param("J24");
  const size_t N = traj.samples.size();
  if (N < 5) throw std::invalid_argument("trajectory too short");

  for (const auto& s : traj.samples)
    if (std::abs(s.M(0, 1)) > relation_tol || std::abs(s.M(2, 3)) > relation_tol)
      throw InvariantViolated("invariant relations do not hold along trajectory");

  std::vector<double> om12 = traj.series("Omega12"), om34 = traj.series("Omega34");
  std::vector<double> phi1(N, 0.0), phi2(N, 0.0), tt(N);
  for (size_t k = 0; k < N; ++k) tt[k] = traj.samples[k].t;
  for (size_t k = 1; k < N; ++k) {
    double h = tt[k] - tt[k - 1];
    phi1[k] = phi1[k - 1] + 0.5 * h * ((om34[k] + om12[k]) + (om34[k - 1] + om12[k - 1]));
    phi2[k] = phi2[k - 1] + 0.5 * h * ((om34[k] - om12[k]) + (om34[k - 1] - om12[k - 1]));
  }
  double worst = 0.0;
  for (size_t k = 1; k + 1 < N; ++k) {
    double h2 = tt[k + 1] - tt[k - 1];
    double dphi1 = (phi1[k + 1] - phi1[k - 1]) / h2;
    double dphi2 = (phi2[k + 1] - phi2[k - 1]) / h2;
    const auto& s = traj.samples[k];
    double N1 = s.M(0, 3) - s.M(1, 2);
    double N4 = s.M(0, 3) + s.M(1, 2);
    worst = std::max(worst, std::abs(dphi1 - N1 * (J24 + J13)));
    worst = std::max(worst, std::abs(dphi2 + N4 * (J24 - J13)));
  }
  return worst;
}

}  // namespace hesslab
