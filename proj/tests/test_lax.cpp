#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hesslab/lax.hpp"

using namespace hesslab;

namespace {

std::mt19937_64 rng(5150);

SkewR random_skew(int n, double scale = 1.0) {
  std::normal_distribution<double> nd(0.0, scale);
  SkewR s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.set(i, j, nd(rng));
  return s;
}

SystemSpec ha4_spec() {
  return make_spec(SystemKind::HA4, {{"J1", 1.1}, {"J3", 2.7}, {"J13", 0.4},
                                     {"J24", 0.9}, {"chi12", 1.3}, {"chi34", 0.6}});
}

PhaseState compliant_state(const SystemSpec& s) {
  PhaseState st{random_skew(s.n, 0.6), random_skew(s.n, 0.6), 0.0};
  st.M.set(0, 1, 0.0);
  if (s.kind == SystemKind::HA4) {
    st.M.set(2, 3, 0.0);
  } else {
    for (int l = 2; l < s.n; ++l)
      for (int p = l + 1; p < s.n; ++p) st.M.set(l, p, 0.0);
  }
  return st;
}

}  // namespace

TEST_CASE("build: C = chi/(J1+J3) (HA4) and chi/J2 (classical)") {
  SystemSpec s = ha4_spec();
  PhaseState st{random_skew(4), random_skew(4), 0.0};
  LaxPair p = build(s, st);
  CHECK((p.L.C.mat() - s.chi.mat() / 3.8).cwiseAbs().maxCoeff() < 1e-15);

  SystemSpec c3 = make_spec(SystemKind::ClassicalHA,
                            {{"J1", 1}, {"J2", 2}, {"J3", 3}, {"x0", 0.8},
                             {"z0", -0.8}});
  PhaseState st3{hat(Vec3(0.1, 0.2, 0.1)), hat(Vec3(0.3, 0.1, 0.9)), 0.0};
  LaxPair p3 = build(c3, st3);
  CHECK((p3.L.C.mat() - c3.chi.mat() / 2.0).cwiseAbs().maxCoeff() < 1e-15);

  SUBCASE("zero state leaves only the lambda^2 part") {
    PhaseState z{SkewR::zero(4), SkewR::zero(4), 0.0};
    LaxPair pz = build(s, z);
    double lam = 0.9;
    CHECK((pz.L.eval(lam) - lam * lam * pz.L.C.mat()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lax residual vanishes exactly on the invariant manifold") {
  SystemSpec s = ha4_spec();
  for (int rep = 0; rep < 100; ++rep)
    CHECK(lax_residual(s, compliant_state(s)) < 1e-12);

  SystemSpec s5 = make_spec(SystemKind::HAn, {{"n", 5}, {"J1", 1.1}, {"J3", 2.7},
                                              {"J13", 0.4}, {"J24", 0.9},
                                              {"chi12", 1.3}});
  for (int rep = 0; rep < 100; ++rep)
    CHECK(lax_residual(s5, compliant_state(s5)) < 1e-12);
}

TEST_CASE("lax residual off the manifold equals the D13/D24 scale") {
  SystemSpec s = ha4_spec();
  const double J13 = 0.4, J24 = 0.9, x12 = 1.3, x34 = 0.6;
  PhaseState st = compliant_state(s);
  st.M.set(0, 1, 1.0);  // violate the relations
  double r = lax_residual(s, st);
  const SkewR& M = st.M;
  double D13 = -x12 * (J13 * M(0, 1) + J24 * M(2, 3)) +
               x34 * (J13 * M(2, 3) + J24 * M(0, 1));
  double D24 = -x12 * (J13 * M(2, 3) + J24 * M(0, 1)) +
               x34 * (J13 * M(0, 1) + J24 * M(2, 3));
  double expect = std::max(std::abs(D13), std::abs(D24)) / 3.8;
  CHECK(r == doctest::Approx(expect).epsilon(1e-10));
  CHECK(r > 1e-6);
}

TEST_CASE("classical pair: residual vanishes on the surface F4 = 0") {
  SystemSpec s = make_spec(SystemKind::ClassicalHA,
                           {{"J1", 1}, {"J2", 2}, {"J3", 3}, {"x0", 0.8},
                            {"z0", -0.8}});
  // z0 = -x0 so F4 = 0 means M1 = M3
  PhaseState on{hat(Vec3(0.7, 0.2, 0.7)), hat(Vec3(0.3, 0.1, 0.9)), 0.0};
  PhaseState off{hat(Vec3(0.7, 0.2, 0.1)), hat(Vec3(0.3, 0.1, 0.9)), 0.0};
  CHECK(lax_residual(s, on) < 1e-13);
  CHECK(lax_residual(s, off) > 1e-6);
}

TEST_CASE("spectral coefficients against the determinant oracle") {
  SystemSpec s = ha4_spec();
  std::normal_distribution<double> nd;
  for (int rep = 0; rep < 20; ++rep) {
    PhaseState st{random_skew(4), random_skew(4), 0.0};
    LaxPair p = build(s, st);
    SpectralCoefficients c = spectral_coeffs(p.L);
    for (int probe = 0; probe < 20; ++probe) {
      double lam = nd(rng), mu = nd(rng);
      double P = c.a * std::pow(lam, 4) + c.b * std::pow(lam, 3) +
                 c.c * lam * lam + c.d * lam + c.e;
      double Q = c.f * std::pow(lam, 4) + c.g * std::pow(lam, 3) +
                 c.h * lam * lam + c.i * lam + c.j;
      double det = (p.L.eval(lam) - mu * Mat::Identity(4, 4)).determinant();
      double expect = std::pow(mu, 4) + P * mu * mu + Q * Q;
      CHECK(det == doctest::Approx(expect).epsilon(1e-10));
    }
    // b formula
    CHECK(c.b == doctest::Approx(2 * p.L.C(0, 1) * st.M(0, 1) +
                                 2 * p.L.C(2, 3) * st.M(2, 3)));
  }
}

TEST_CASE("basis state: e = 2, j = 1, the rest zero") {
  LaxPolynomial L;
  L.C = SkewR::zero(4);
  L.M = SkewR::zero(4);
  L.Gamma = SkewR::zero(4);
  L.Gamma.set(0, 1, 1.0);
  L.Gamma.set(2, 3, 1.0);
  SpectralCoefficients c = spectral_coeffs(L);
  CHECK(c.e == doctest::Approx(2.0));
  CHECK(c.j == doctest::Approx(1.0));
  for (double v : {c.a, c.b, c.c, c.d, c.f, c.g, c.h, c.i})
    CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("isospectrality along a compliant trajectory") {
  SystemSpec s = ha4_spec();
  PhaseState st = compliant_state(s);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  Trajectory tr = integrate(s, st, cfg);
  IsospectralityReport rep = isospectrality_report(s, tr, 0.7);
  for (size_t k = 0; k < rep.names.size(); ++k) {
    CAPTURE(rep.names[k]);
    if (rep.names[k] == "b" || rep.names[k] == "g") {
      CHECK(rep.max_abs_drift[k] < 1e-9);
    } else {
      CHECK(rep.max_rel_drift[k] < 1e-7);
    }
  }
  CHECK(rep.eigenvalue_drift < 1e-7);
}

TEST_CASE("Casimirs d,e,i,j stay constant even off the manifold; b,g drift") {
  SystemSpec s = ha4_spec();
  PhaseState st{random_skew(4, 0.7), random_skew(4, 0.7), 0.0};
  st.M.set(0, 1, 0.8);  // deliberately violate the relations
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  Trajectory tr = integrate(s, st, cfg);
  IsospectralityReport rep = isospectrality_report(s, tr);
  double bdrift = 0;
  for (size_t k = 0; k < rep.names.size(); ++k) {
    const std::string& n = rep.names[k];
    if (n == "d" || n == "e" || n == "i" || n == "j")
      CHECK(rep.max_rel_drift[k] < 1e-8);
    if (n == "b") bdrift = rep.max_abs_drift[k];
  }
  CHECK(bdrift > 1e-3);  // negative control
}

TEST_CASE("free case: all coefficients constant") {
  SystemSpec s = make_spec(SystemKind::Custom, {},
                           Mat((Vec(4) << 1.1, 1.1, 2.7, 2.7).finished().asDiagonal()),
                           Mat(Mat::Zero(4, 4)));
  s.params["J1"] = 1.1;
  s.params["J3"] = 2.7;
  PhaseState st{random_skew(4), random_skew(4), 0.0};
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  Trajectory tr = integrate(s, st, cfg);
  IsospectralityReport rep = isospectrality_report(s, tr);
  for (size_t k = 0; k < rep.names.size(); ++k) {
    CAPTURE(rep.names[k]);
    CHECK(rep.max_rel_drift[k] < 1e-8);
  }
}

TEST_CASE("n = 5: trace invariants at the probe stay constant") {
  SystemSpec s5 = make_spec(SystemKind::HAn, {{"n", 5}, {"J1", 1.1}, {"J3", 2.7},
                                              {"J13", 0.4}, {"J24", 0.9},
                                              {"chi12", 1.3}});
  PhaseState st = compliant_state(s5);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  Trajectory tr = integrate(s5, st, cfg);
  IsospectralityReport rep = isospectrality_report(s5, tr, 0.7);
  for (size_t k = 0; k < rep.names.size(); ++k) {
    CAPTURE(rep.names[k]);
    CHECK(rep.max_rel_drift[k] < 1e-7);
  }
}
