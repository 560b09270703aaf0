#include "hesslab/lax.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hesslab {

LaxPair build(const SystemSpec& spec, const PhaseState& st) {
  double denom;
  if (spec.n == 3) {
    denom = spec.J.mat()(1, 1);  // classical pair: C = chi / J2tilde
  } else {
    denom = spec.param_or("J1", spec.J.mat()(0, 0)) +
            spec.param_or("J3", spec.J.mat()(2, 2));
  }
  LaxPair p;
  p.L.C = SkewR::from_matrix(spec.chi.mat() / denom);
  p.L.M = st.M;
  p.L.Gamma = st.Gamma;
  p.A_chi = spec.chi;
  p.A_omega = omega_of(spec, st.M);
  return p;
}

double lax_residual(const SystemSpec& spec, const PhaseState& st) {
  LaxPair p = build(spec, st);
  auto [Mdot, Gdot] = rhs(spec, st);
  const Mat &C = p.L.C.mat(), &M = st.M.mat(), &G = st.Gamma.mat();
  const Mat &X = p.A_chi.mat(), &Om = p.A_omega.mat();
  auto br = [](const Mat& a, const Mat& b) -> Mat { return a * b - b * a; };
  // coefficients of R(lambda) = (d/dt)L - [L, A] in powers of lambda
  Mat r3 = -br(C, X);
  Mat r2 = -(br(C, Om) + br(M, X));
  Mat r1 = Mdot.mat() - br(M, Om) - br(G, X);
  Mat r0 = Gdot.mat() - br(G, Om);
  double worst = 0.0;
  for (const Mat* m : {&r3, &r2, &r1, &r0})
    worst = std::max(worst, m->cwiseAbs().maxCoeff());
  return worst;
}

SpectralCoefficients spectral_coeffs(const LaxPolynomial& L) {
  if (L.M.n() != 4) throw Unsupported("spectral_coeffs: n must be 4");
  const Mat &C = L.C.mat(), &M = L.M.mat(), &G = L.Gamma.mat();
  SpectralCoefficients s;
  s.a = C(0, 1) * C(0, 1) + C(2, 3) * C(2, 3);
  s.b = 2 * C(0, 1) * M(0, 1) + 2 * C(2, 3) * M(2, 3);
  s.c = M(0, 2) * M(0, 2) + M(0, 3) * M(0, 3) + M(1, 2) * M(1, 2) +
        M(1, 3) * M(1, 3) + M(0, 1) * M(0, 1) + M(2, 3) * M(2, 3) +
        2 * C(0, 1) * G(0, 1) + 2 * C(2, 3) * G(2, 3);
  s.d = 2 * (G(0, 1) * M(0, 1) + G(0, 2) * M(0, 2) + G(0, 3) * M(0, 3) +
             G(1, 2) * M(1, 2) + G(1, 3) * M(1, 3) + G(2, 3) * M(2, 3));
  s.e = G(0, 1) * G(0, 1) + G(0, 2) * G(0, 2) + G(0, 3) * G(0, 3) +
        G(1, 2) * G(1, 2) + G(1, 3) * G(1, 3) + G(2, 3) * G(2, 3);
  s.f = C(0, 1) * C(2, 3);
  s.g = C(0, 1) * M(2, 3) + C(2, 3) * M(0, 1);
  s.h = G(2, 3) * C(0, 1) + G(0, 1) * C(2, 3) + M(0, 1) * M(2, 3) +
        M(1, 2) * M(0, 3) - M(0, 2) * M(1, 3);
  s.i = M(2, 3) * G(0, 1) + M(0, 1) * G(2, 3) + M(0, 3) * G(1, 2) +
        M(1, 2) * G(0, 3) - G(0, 2) * M(1, 3) - G(1, 3) * M(0, 2);
  s.j = G(2, 3) * G(0, 1) + G(1, 2) * G(0, 3) - G(0, 2) * G(1, 3);
  return s;
}

IsospectralityReport isospectrality_report(const SystemSpec& spec,
                                           const Trajectory& traj,
                                           double probe_lambda) {
  IsospectralityReport rep;
  rep.probe_lambda = probe_lambda;
  if (traj.samples.empty()) return rep;

  auto channels = [&](const PhaseState& st) {
    std::vector<std::pair<std::string, double>> out;
    LaxPair p = build(spec, st);
    if (spec.n == 4) {
      SpectralCoefficients c = spectral_coeffs(p.L);
      const char* names = "abcdefghij";
      const double vals[10] = {c.a, c.b, c.c, c.d, c.e, c.f, c.g, c.h, c.i, c.j};
      for (int k = 0; k < 10; ++k)
        out.emplace_back(std::string(1, names[k]), vals[k]);
    } else {
      // n > 4: isospectral invariants tr(L^k) at the probe
      Mat L = p.L.eval(probe_lambda);
      out.emplace_back("trL2", (L * L).trace());
      out.emplace_back("trL4", (L * L * L * L).trace());
    }
    return out;
  };

  auto first = channels(traj.samples.front());
  rep.names.reserve(first.size());
  for (auto& [k, v] : first) {
    rep.names.push_back(k);
    rep.initial.push_back(v);
  }
  rep.max_abs_drift.assign(first.size(), 0.0);
  rep.max_rel_drift.assign(first.size(), 0.0);

  Eigen::ComplexEigenSolver<CMat> es;
  es.compute(build(spec, traj.samples.front()).L.eval(cplx(probe_lambda, 0.0)));
  CVec ev0 = es.eigenvalues();

  for (const auto& st : traj.samples) {
    auto vals = channels(st);
    for (size_t k = 0; k < vals.size(); ++k) {
      double d = std::abs(vals[k].second - rep.initial[k]);
      rep.max_abs_drift[k] = std::max(rep.max_abs_drift[k], d);
      rep.max_rel_drift[k] =
          std::max(rep.max_rel_drift[k], d / std::max(1.0, std::abs(rep.initial[k])));
    }
    es.compute(build(spec, st).L.eval(cplx(probe_lambda, 0.0)));
    CVec ev = es.eigenvalues();
    // nearest-neighbor matching against the initial spectrum
    std::vector<bool> used(ev0.size(), false);
    for (int i = 0; i < ev.size(); ++i) {
      double best = 1e300;
      int arg = -1;
      for (int j = 0; j < ev0.size(); ++j) {
        if (used[j]) continue;
        double d = std::abs(ev(i) - ev0(j));
        if (d < best) { best = d; arg = j; }
      }
      if (arg >= 0) used[arg] = true;
      rep.eigenvalue_drift = std::max(rep.eigenvalue_drift, best);
    }
  }
  return rep;
}

}  // namespace hesslab
