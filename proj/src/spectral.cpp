#include "hesslab/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hesslab {

std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs) {
  size_t lead = 0;
  while (lead < coeffs.size() && std::abs(coeffs[lead]) == 0.0) ++lead;
  if (coeffs.size() - lead < 2) return {};
  const size_t deg = coeffs.size() - lead - 1;
  CMat comp = CMat::Zero(deg, deg);
  for (size_t k = 0; k < deg; ++k) comp(0, k) = -coeffs[lead + 1 + k] / coeffs[lead];
  for (size_t k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

CurveData curve_data(const SpectralCoefficients& c) {
  return {{c.a, c.b, c.c, c.d, c.e}, {c.f, c.g, c.h, c.i, c.j}};
}

namespace {

std::array<double, 9> p2q2(const CurveData& cd) {
  std::array<double, 9> out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      out[i + j] += 0.25 * cd.P[i] * cd.P[j] - cd.Q[i] * cd.Q[j];
  return out;
}

}  // namespace

namespace {

int count_distinct(const std::vector<cplx>& roots, double tol) {
  double scale = 1.0;
  for (auto r : roots) scale = std::max(scale, std::abs(r));
  std::vector<cplx> distinct;
  for (auto r : roots) {
    bool fresh = true;
    for (auto d : distinct)
      if (std::abs(r - d) < tol * scale) { fresh = false; break; }
    if (fresh) distinct.push_back(r);
  }
  return static_cast<int>(distinct.size());
}

}  // namespace

Gamma1Curve curve_gamma1(const CurveData& cd, double root_tol) {
  Gamma1Curve g;
  g.coeffs = p2q2(cd);
  std::vector<cplx> c(g.coeffs.begin(), g.coeffs.end());
  auto roots = poly_roots(c);
  // multiple roots of a companion-matrix eigenproblem split by ~sqrt(eps),
  // so detect them through the derivative instead of root clustering alone
  std::vector<cplx> dc;
  for (size_t k = 0; k + 1 < c.size(); ++k)
    dc.push_back(c[k] * double(c.size() - 1 - k));
  double dscale = 0;
  for (auto v : dc) dscale = std::max(dscale, std::abs(v));
  bool deriv_degenerate = false;
  for (auto r : roots) {
    cplx dval = 0;
    for (auto v : dc) dval = dval * r + v;
    double rpow = std::pow(std::max(1.0, std::abs(r)), double(dc.size() - 1));
    if (std::abs(dval) < 1e-6 * std::max(1.0, dscale) * rpow)
      deriv_degenerate = true;
  }
  int distinct = count_distinct(roots, root_tol);
  g.degenerate = deriv_degenerate || distinct < static_cast<int>(roots.size());
  if (deriv_degenerate)
    distinct = std::min(distinct, count_distinct(roots, std::max(1e-6, root_tol)));
  g.distinct_roots = distinct;
  g.genus = (g.distinct_roots - 1) / 2;
  return g;
}

DoublePoints double_points(const CurveData& cd, double tol) {
  bool allzero = true;
  for (double q : cd.Q) allzero &= std::abs(q) < 1e-15;
  if (allzero) throw QIdenticallyZero("Q(lambda) vanishes identically");
  std::vector<cplx> c(cd.Q.begin(), cd.Q.end());
  DoublePoints dp;
  dp.lambdas = poly_roots(c);
  double scale = 1.0;
  for (auto r : dp.lambdas) scale = std::max(scale, std::abs(r));
  dp.multiplicity.assign(dp.lambdas.size(), 1);
  for (size_t i = 0; i < dp.lambdas.size(); ++i)
    for (size_t j = 0; j < dp.lambdas.size(); ++j)
      if (i != j && std::abs(dp.lambdas[i] - dp.lambdas[j]) < tol * scale)
        dp.multiplicity[i]++;
  dp.simple = std::all_of(dp.multiplicity.begin(), dp.multiplicity.end(),
                          [](int m) { return m == 1; });
  dp.arithmetic_genus = 9;
  dp.normalization_genus = 9 - static_cast<int>(dp.lambdas.size());
  return dp;
}

cplx j_invariant_quartic(const std::array<double, 5>& q) {
  // classical binary-quartic invariants of y^2 = a0 x^4 + ... + a4
  double a0 = q[0], a1 = q[1], a2 = q[2], a3 = q[3], a4 = q[4];
  double S = a0 * a4 - a1 * a3 / 4 + a2 * a2 / 12;
  double T = a0 * a2 * a4 / 6 - a0 * a3 * a3 / 16 - a1 * a1 * a4 / 16 +
             a1 * a2 * a3 / 48 - a2 * a2 * a2 / 216;
  cplx den = cplx(S * S * S - 27 * T * T, 0.0);
  return 1728.0 * S * S * S / den;
}

CurvePair curves_c1c2(const CurveData& cd) {
  CurvePair cp;
  for (int k = 0; k < 5; ++k) {
    cp.C1[k] = cd.P[k] / 2 + cd.Q[k];
    cp.C2[k] = cd.P[k] / 2 - cd.Q[k];
  }
  cp.j1 = j_invariant_quartic(cp.C1);
  cp.j2 = j_invariant_quartic(cp.C2);
  return cp;
}

ReducedState reduce(const SystemSpec& spec, const PhaseState& st) {
  if (spec.n != 4) throw Unsupported("reduce: n must be 4");
  const double J1 = spec.param("J1"), J3 = spec.param("J3");
  const double x12 = spec.chi(0, 1), x34 = spec.chi(2, 3);
  Vec3Pair mp = split_so4(st.M), gp = split_so4(st.Gamma);
  ReducedState rs;
  rs.one.M = 0.5 * (mp.plus + mp.minus);
  rs.two.M = 0.5 * (mp.plus - mp.minus);
  rs.one.Gamma = 0.5 * (gp.plus + gp.minus);
  rs.two.Gamma = 0.5 * (gp.plus - gp.minus);
  rs.one.chi = Vec3(0, 0, -0.5 * (x12 + x34));
  rs.two.chi = Vec3(0, 0, -0.5 * (x12 - x34));
  for (ReducedHalf* h : {&rs.one, &rs.two}) {
    h->h = h->M.dot(h->M) + 2.0 / (J1 + J3) * h->chi.dot(h->Gamma);
    h->c = h->M.dot(h->Gamma);
    h->K = std::hypot(h->M(0), h->M(1));
    h->l = std::atan2(h->M(0), h->M(1));  // M1 = K sin l, M2 = K cos l
    h->A = (J1 + J3) * h->chi(2);
    h->B = (J1 + J3) * (J1 + J3) * h->h;
    h->C = (J1 + J3) * (J1 + J3) * (h->c * h->c - h->h);
  }
  return rs;
}

namespace {

// angular-velocity vectors of the reduced system
std::pair<Vec3, Vec3> reduced_omegas(double J1, double J3, double J13, double J24,
                                     const Vec3& M1, const Vec3& M2) {
  Vec3 O1((J1 + J3) * M1(0) - (J13 - J24) * M2(2), (J1 + J3) * M1(1),
          (J1 + J3) * M1(2) + (J1 - J3) * M2(2) - (J13 + J24) * M2(0));
  Vec3 O2((J1 + J3) * M2(0) - (J13 + J24) * M1(2), (J1 + J3) * M2(1),
          (J1 + J3) * M2(2) + (J1 - J3) * M1(2) - (J13 - J24) * M1(0));
  return {O1, O2};
}

}  // namespace

ReducedTrajectory integrate_reduced(const SystemSpec& spec, const PhaseState& st0,
                                    double dt, double t_end) {
  if (spec.n != 4) throw Unsupported("integrate_reduced: n must be 4");
  const double J1 = spec.param("J1"), J3 = spec.param("J3");
  const double J13 = spec.param_or("J13", 0.0), J24 = spec.param_or("J24", 0.0);
  ReducedState rs0 = reduce(spec, st0);
  Eigen::Matrix<double, 12, 1> y;
  y << rs0.one.M, rs0.one.Gamma, rs0.two.M, rs0.two.Gamma;
  const Vec3 chi1 = rs0.one.chi, chi2 = rs0.two.chi;

  auto f = [&](const Eigen::Matrix<double, 12, 1>& v) {
    Vec3 M1 = v.segment<3>(0), G1 = v.segment<3>(3);
    Vec3 M2 = v.segment<3>(6), G2 = v.segment<3>(9);
    auto [O1, O2] = reduced_omegas(J1, J3, J13, J24, M1, M2);
    Eigen::Matrix<double, 12, 1> d;
    d.segment<3>(0) = 2 * (M1.cross(O1) + G1.cross(chi1));
    d.segment<3>(3) = 2 * G1.cross(O1);
    d.segment<3>(6) = 2 * (M2.cross(O2) + G2.cross(chi2));
    d.segment<3>(9) = 2 * G2.cross(O2);
    return d;
  };

  ReducedTrajectory tr;
  double t = st0.t;
  tr.t.push_back(t);
  tr.samples.push_back({y.segment<3>(0), y.segment<3>(3), y.segment<3>(6), y.segment<3>(9)});
  long nsteps = static_cast<long>(std::ceil(t_end / dt - 1e-12));
  for (long k = 0; k < nsteps; ++k) {
    double h = std::min(dt, st0.t + t_end - t);
    auto k1 = f(y);
    auto k2 = f((y + 0.5 * h * k1).eval());
    auto k3 = f((y + 0.5 * h * k2).eval());
    auto k4 = f((y + h * k3).eval());
    y += (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
    t += h;
    tr.t.push_back(t);
    tr.samples.push_back({y.segment<3>(0), y.segment<3>(3), y.segment<3>(6), y.segment<3>(9)});
  }
  return tr;
}

QuadratureReport quadrature_check(const SystemSpec& spec, const Trajectory& traj) {
  if (spec.n != 4) throw Unsupported("quadrature_check: n must be 4");
  const double J1 = spec.param("J1"), J3 = spec.param("J3");
  const double J13 = spec.param_or("J13", 0.0), J24 = spec.param_or("J24", 0.0);
  const double s = J1 + J3;
  QuadratureReport rep;
  const size_t N = traj.samples.size();
  if (N < 5) throw std::invalid_argument("trajectory too short");

  std::vector<ReducedState> red(N);
  for (size_t k = 0; k < N; ++k) red[k] = reduce(spec, traj.samples[k]);

  // unwrapped angle series per half
  std::array<std::vector<double>, 2> lser;
  for (int half = 0; half < 2; ++half) {
    lser[half].resize(N);
    lser[half][0] = half == 0 ? red[0].one.l : red[0].two.l;
    for (size_t k = 1; k < N; ++k) {
      double lk = half == 0 ? red[k].one.l : red[k].two.l;
      double prev = half == 0 ? red[k - 1].one.l : red[k - 1].two.l;
      lser[half][k] = lser[half][k - 1] + std::remainder(lk - prev, 2 * M_PI);
    }
  }

  const double h = traj.samples[1].t - traj.samples[0].t;
  auto d4 = [&](auto&& get, size_t k) {  // 4th-order centered first derivative
    return (-get(k + 2) + 8 * get(k + 1) - 8 * get(k - 1) + get(k - 2)) / (12 * h);
  };

  for (size_t k = 2; k + 2 < N; ++k) {
    for (int half = 0; half < 2; ++half) {
      auto at = [&](size_t m) -> const ReducedHalf& {
        return half == 0 ? red[m].one : red[m].two;
      };
      const ReducedHalf& cur = at(k);
      // (i) elliptic quadrature for Gamma_(i)3 (unit-pose halves assumed)
      double dg = d4([&](size_t m) { return at(m).Gamma(2); }, k);
      double g3 = cur.Gamma(2);
      double P3 = 4 * s * s *
                  ((1 - g3 * g3) * (cur.h - 2.0 / s * cur.chi(2) * g3) -
                   cur.c * cur.c);
      rep.gamma3_residual = std::max(rep.gamma3_residual, std::abs(dg * dg - P3));
      // (ii) K^2 from the energy integral
      double K2 = cur.h - 2.0 / s * cur.chi(2) * g3;
      rep.K_residual = std::max(rep.K_residual, std::abs(cur.K * cur.K - K2));
      // (iii) the angle equations; skip segments through K ~ 0
      const ReducedHalf& other = half == 0 ? red[k].two : red[k].one;
      bool near_zero = false;
      for (size_t m = k - 2; m <= k + 2; ++m) near_zero |= at(m).K < 1e-6;
      if (near_zero) {
        rep.skipped_segments++;
        continue;
      }
      double dl = d4([&](size_t m) { return lser[half][m]; }, k);
      double coupling = (half == 0) ? -2 * (J13 + J24) * other.K * std::sin(other.l)
                                    : -2 * (J13 - J24) * other.K * std::sin(other.l);
      double target = coupling + 2 * cur.chi(2) * cur.c / (cur.K * cur.K);
      rep.l_residual = std::max(rep.l_residual, std::abs(dl - target));
    }
  }
  return rep;
}

}  // namespace hesslab
