#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>

#include "hesslab/kowalevski.hpp"

using namespace hesslab;

namespace {

const cplx I(0, 1);

bool multiset_eq(std::vector<cplx> a, std::vector<cplx> b, double tol = 1e-7) {
  if (a.size() != b.size()) return false;
  for (cplx x : a) {
    bool hit = false;
    for (size_t k = 0; k < b.size(); ++k)
      if (std::abs(x - b[k]) < tol) {
        b.erase(b.begin() + k);
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return b.empty();
}

std::vector<cplx> to_vec(const CVec& v) {
  return {v.data(), v.data() + v.size()};
}

int pidx(int n, int i, int j) {
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (a == i && b == j) return k;
      ++k;
    }
  return -1;
}

}  // namespace

TEST_CASE("quasi-homogeneity of the named fields") {
  QHSystem f3 = qh_field_3d({1, 0, 0, 0, 0, 0}, 1.0);
  CHECK(check_qh(f3).pass);
  QHSystem f4 = qh_field_sond(4, 1, 3, 0.4, 0.9, 1.0, 2.0);
  CHECK(check_qh(f4).pass);
  QHSystem f5 = qh_field_sond(5, 1, 3, 0.4, 0.9, 1.0, 0.0);
  CHECK(check_qh(f5).pass);

  SUBCASE("constant terms break the scaling") {
    QHSystem bad = f3;
    auto inner = bad.f;
    bad.f = [inner](const CVec& z) {
      CVec v = inner(z);
      v(0) += 0.37;
      return v;
    };
    CHECK_FALSE(check_qh(bad).pass);
  }
  SUBCASE("Gamma-dependent perturbations break the scaling") {
    QHSystem bad = qh_field_3d({1, 0, 0, 0.5, 0, 0}, 1.0);
    CHECK_FALSE(check_qh(bad).pass);
  }
}

TEST_CASE("analytic Kowalevski matrix matches a finite-difference Jacobian") {
  QHSystem sys = qh_field_sond(4, 1, 3, 0.4, 0.9, 1.0, 2.0);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  CVec z(12);
  for (int k = 0; k < 12; ++k) z(k) = cplx(nd(rng), nd(rng));
  CMat K = kowalevski_matrix(sys, z);
  const double h = 1e-6;
  for (int j = 0; j < 12; ++j) {
    CVec e = CVec::Zero(12);
    e(j) = h;
    CVec col = (sys.f(z + e) - sys.f(z - e)) / (2 * h);
    col(j) += cplx(sys.g(j), 0);
    CHECK((K.col(j) - col).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("three-dimensional balance families and exponents") {
  for (double J13 : {1.0, 3.0}) {
    QHSystem sys = qh_field_3d({1, 0, 0, 0, 0, 0}, J13);
    BalanceMask mask;
    mask.zero = {2};  // c3 = 0
    SolveOptions opt;
    opt.starts = 300;
    auto sols = solve_balances(sys, mask, opt);
    CHECK(sols.size() >= 6);

    std::vector<cplx> listA = {-1, -2, 2, 4, 3, 3};   // from the (2i/J, -2/J) pair
    std::vector<cplx> listB = {-1, 1, 3, 2, 2, 2};    // from the (i/J, -1/J) pair
    bool sawA = false, sawB = false;
    for (const auto& s : sols) {
      CHECK(s.residual < 1e-10);
      // every nonzero balance carries the exponent -1
      bool has_m1 = false;
      for (int k = 0; k < s.exponents.size(); ++k)
        has_m1 |= std::abs(s.exponents(k) - cplx(-1, 0)) < 1e-7;
      CHECK(has_m1);

      cplx c1 = s.C(0), c2 = s.C(1);
      // elimination formulas of the masked system
      CHECK(std::abs(s.C(3) - (-J13 * c1 * c1 + c2)) < 1e-9);
      CHECK(std::abs(s.C(4) - (-c1 * (1.0 + J13 * c2))) < 1e-9);
      CHECK(std::abs(s.C(5) - (-(c1 * c1 + c2 * c2) / 2.0)) < 1e-9);
      if (std::abs(c1) < 1e-9) continue;
      if (std::abs(c2 - cplx(-1 / J13, 0)) < 1e-7) {
        CHECK(std::abs(std::abs(c1) - 1 / J13) < 1e-7);
        CHECK(multiset_eq(to_vec(s.exponents), listB));
        sawB = true;
      }
      if (std::abs(c2 - cplx(-2 / J13, 0)) < 1e-7) {
        CHECK(std::abs(std::abs(c1) - 2 / J13) < 1e-7);
        CHECK(multiset_eq(to_vec(s.exponents), listA));
        sawA = true;
      }
    }
    CHECK(sawA);
    CHECK(sawB);
  }
}

TEST_CASE("exponent multisets are invariant under J13 rescaling") {
  std::vector<std::vector<cplx>> base;
  for (double kappa : {1.0, 2.0, 10.0}) {
    QHSystem sys = qh_field_3d({1, 0, 0, 0, 0, 0}, kappa);
    CVec c(6);
    cplx c1 = 2.0 * I / kappa, c2 = -2.0 / kappa;
    c << c1, c2, 0.0, -kappa * c1 * c1 + c2, -c1 * (1.0 + kappa * c2),
        -(c1 * c1 + c2 * c2) / 2.0;
    auto ev = exponents_of(sys, c);
    base.push_back(to_vec(ev));
  }
  CHECK(multiset_eq(base[0], base[1]));
  CHECK(multiset_eq(base[0], base[2]));
}

TEST_CASE("four-dimensional exponents with both couplings active") {
  // chi12 = 1, chi34 = 2, (J1,J3) = (1,3)
  for (auto [J13, J24] : {std::pair{0.3, 0.8}, {1.0, 2.0}, {0.7, 0.1}}) {
    QHSystem sys = qh_field_sond(4, 1, 3, J13, J24, 1.0, 2.0);
    BalanceMask mask;
    mask.zero = {pidx(4, 0, 1), pidx(4, 2, 3)};
    mask.pinned = {{pidx(4, 0, 2), 0.0}, {pidx(4, 1, 3), 0.0}};  // d2 = d5 = 0
    SolveOptions opt;
    opt.starts = 250;
    auto sols = solve_balances(sys, mask, opt);
    double A = (J13 - J24) / 2;
    std::vector<cplx> expect = {0, -1, 3, 4, 1. + A, 1. - A, 2. + A, 2. - A,
                                2, 1, 2, 1};
    bool found = false;
    for (const auto& s : sols) {
      // the family with d3 = d4 = +-i/4
      if (std::abs(s.C(pidx(4, 0, 3)) - s.C(pidx(4, 1, 2))) < 1e-8 &&
          std::abs(std::abs(s.C(pidx(4, 0, 3))) - 0.25) < 1e-7) {
        CHECK(multiset_eq(to_vec(s.exponents), expect));
        found = true;
      }
    }
    CAPTURE(J13);
    CHECK(found);
  }
}

TEST_CASE("five-dimensional masked balances include the single-entry family") {
  double J1 = 1.3, J3 = 2.2, J13 = 0.9, J24 = 0.5;
  QHSystem sys = qh_field_sond(5, J1, J3, J13, J24, 1.0, 0.0);
  BalanceMask mask;
  mask.zero = {pidx(5, 0, 1), pidx(5, 2, 3), pidx(5, 2, 4), pidx(5, 3, 4)};
  mask.pinned = {{pidx(5, 1, 2), 0.0}, {pidx(5, 1, 4), 0.0}};  // d5 = d7 = 0
  SolveOptions opt;
  opt.starts = 300;
  auto sols = solve_balances(sys, mask, opt);
  // the family with only M24 = +-2i/(J1+J3) among the M-coordinates
  cplx want = 2.0 * I / (J1 + J3);
  bool found = false;
  for (const auto& s : sols) {
    if (std::abs(std::abs(s.C(pidx(5, 1, 3))) - std::abs(want)) > 1e-8) continue;
    bool others_zero = true;
    for (int k : {pidx(5, 0, 2), pidx(5, 0, 3), pidx(5, 0, 4)})
      others_zero &= std::abs(s.C(k)) < 1e-8;
    if (!others_zero) continue;
    found = true;
    // expected exponents: A = 2 sqrt(J13^2-J24^2)/(J1+J3), B = 2i J24/(J1+J3)
    cplx A = 2.0 * std::sqrt(cplx(J13 * J13 - J24 * J24, 0)) / (J1 + J3);
    cplx B = 2.0 * I * J24 / (J1 + J3);
    std::vector<cplx> expect = {1. + A, 1. - A, A, -A, B, 1. - B, 1, -1, -1, -1,
                                3, 3, 3, 2, 2, 2, 2, 4, 4, 4};
    bool m = multiset_eq(to_vec(s.exponents), expect) ||
             multiset_eq(to_vec(s.exponents),
                         [&] {  // conjugate family (M24 = -2i/(J1+J3))
                           std::vector<cplx> e2 = expect;
                           for (auto& v : e2) v = std::conj(v);
                           return e2;
                         }());
    CHECK(m);
  }
  CHECK(found);
}

TEST_CASE("the d2 = 0 branch carries three solution families") {
  QHSystem sys = qh_field_sond(4, 1.0, 3.0, 0.4, 0.9, 1.0, 2.0);
  BalanceMask mask;
  mask.zero = {pidx(4, 0, 1), pidx(4, 2, 3)};
  mask.pinned = {{pidx(4, 0, 2), 0.0}};
  SolveOptions opt;
  opt.starts = 400;
  auto sols = solve_balances(sys, mask, opt);
  int i14 = pidx(4, 0, 3), i23 = pidx(4, 1, 2), i24 = pidx(4, 1, 3);
  bool fam_m24 = false, fam_anti = false, fam_sym = false;
  for (const auto& s : sols) {
    cplx d3 = s.C(i14), d4 = s.C(i23), d5 = s.C(i24);
    if (std::abs(d3) < 1e-8 && std::abs(d4) < 1e-8 &&
        std::abs(std::abs(d5) - 0.5) < 1e-7)
      fam_m24 = true;  // only M24 = +-i/2
    if (std::abs(d5) < 1e-8 && std::abs(d3 + d4) < 1e-8 &&
        std::abs(std::abs(d3) - 0.25) < 1e-7)
      fam_anti = true;  // d3 = -d4 = +-i/4
    if (std::abs(d5) < 1e-8 && std::abs(d3 - d4) < 1e-8 &&
        std::abs(std::abs(d3) - 0.25) < 1e-7)
      fam_sym = true;  // d3 = d4 = +-i/4
  }
  CHECK(fam_m24);
  CHECK(fam_anti);
  CHECK(fam_sym);
}

TEST_CASE("a lone irrational exponent fails the arithmetic pairing") {
  // synthetic system: diagonal field with one sqrt(5) eigenvalue among
  // rationals, all eigenvectors tangent except the masked direction
  QHSystem sys;
  sys.dim = 4;
  sys.g = Eigen::VectorXi::Ones(4);
  CVec diag(4);
  diag << std::sqrt(5.0) - 1.0, 1.0, 2.0, 0.0;
  sys.f = [diag](const CVec& z) { return CVec(diag.cwiseProduct(z)); };
  sys.df = [diag](const CVec&, const CVec& w) { return CVec(diag.cwiseProduct(w)); };
  sys.conormals = [](const CVec&) { return std::vector<CVec>{}; };
  BalanceMask mask;
  mask.zero = {3};
  BalanceSolution sol;
  sol.C = CVec::Zero(4);
  sol.C(1) = 1.0;  // keep the -1-exponent convention out of scope here
  sol.K = kowalevski_matrix(sys, sol.C);
  Eigen::ComplexEigenSolver<CMat> es(sol.K, false);
  sol.exponents = es.eigenvalues();
  AraReport ar = ara_check(sys, sol, mask);
  CHECK_FALSE(ar.irrational_pairs_integer_diff);
  CHECK_FALSE(ar.pass);
}

TEST_CASE("germ data and characteristic polynomials") {
  // the passing family b = z1 + k z3
  for (double k : {0.5, 2.0}) {
    std::array<cplx, 6> beta{1.0, 0.0, k, 0.0, 0.0, 0.0};
    for (int br = 1; br <= 4; ++br) {
      GermData g = germ_of(beta, br, 1.7);
      auto pch = germ_charpolys(1.7, g, br);
      // integer coefficients, root at -1
      for (cplx c : pch) {
        CHECK(std::abs(c.imag()) < 1e-9);
        CHECK(std::abs(c.real() - std::round(c.real())) < 1e-9);
      }
      cplx at = 0;
      for (cplx c : pch) at = at * cplx(-1, 0) + c;
      CHECK(std::abs(at) < 1e-10);
    }
    // coefficients coincide across J in {1, 2, 7}, and the roots are integers
    auto p1 = germ_charpoly(germ_of(beta, 1, 1.0));
    for (double J : {2.0, 7.0}) {
      auto pj = germ_charpoly(germ_of(beta, 1, J));
      for (int q = 0; q < 7; ++q) CHECK(std::abs(pj[q] - p1[q]) < 1e-12);
    }
    {
      CMat comp = CMat::Zero(6, 6);
      for (int q = 0; q < 6; ++q) comp(0, q) = -p1[q + 1] / p1[0];
      for (int q = 1; q < 6; ++q) comp(q, q - 1) = 1.0;
      Eigen::ComplexEigenSolver<CMat> es(comp, false);
      for (int q = 0; q < 6; ++q) {
        cplx r = es.eigenvalues()(q);
        CHECK(std::abs(r.imag()) < 1e-7);
        CHECK(std::abs(r.real() - std::round(r.real())) < 1e-7);
      }
    }
    // branch data: Y = -2 on branches 1/2, -1 on 3/4, X = 0
    GermData g1 = germ_of(beta, 1, 1.7);
    CHECK(std::abs(g1.Y - cplx(-2, 0)) < 1e-12);
    CHECK(std::abs(g1.X) < 1e-12);
    GermData g3 = germ_of(beta, 3, 1.7);
    CHECK(std::abs(g3.Y - cplx(-1, 0)) < 1e-12);
  }

  SUBCASE("counterexample polynomials") {
    std::array<cplx, 6> beta{-3.0, I, 0.0, 0.0, 0.0, 0.0};
    GermData g1 = germ_of(beta, 1, 1.0);
    CHECK(std::abs(g1.X - I) < 1e-12);
    CHECK(std::abs(g1.Y - cplx(-3, 0)) < 1e-12);
    auto p1 = germ_charpoly(g1);
    // w(w-1)(w-2)(w-3)(w+1)(w+2) = w^6 -3w^5 -5w^4 +15w^3 +4w^2 -12w
    std::array<cplx, 7> want1 = {1, -3, -5, 15, 4, -12, 0};
    for (int k = 0; k < 7; ++k) CHECK(std::abs(p1[k] - want1[k]) < 1e-10);

    GermData g3 = germ_of(beta, 3, 1.0);
    auto p3 = germ_charpoly(g3);
    // (w-1)(w-2)(w-3)(w+1)(w^2 - w + 9/2)
    std::array<cplx, 7> want3 = {1, -6, 14.5, -22.5, 11.5, 28.5, -27};
    for (int k = 0; k < 7; ++k) CHECK(std::abs(p3[k] - want3[k]) < 1e-10);
  }

  SUBCASE("A15 and A10 closed forms on branch 1") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 30; ++rep) {
      std::array<cplx, 6> beta{cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng)),
                               cplx(nd(rng), nd(rng)), 0.0, 0.0, 0.0};
      GermData g = germ_of(beta, 1, 1.0);
      auto p = germ_charpoly(g);
      cplx X = g.X, Y = g.Y;
      CHECK(std::abs(p[1] - (-9.0 - 2.0 * Y)) < 1e-9);
      cplx A10 = 12.0 * I * Y * (-I * Y + X * Y - I * X * X - I);
      CHECK(std::abs(p[6] - A10) < 1e-9 * std::max(1.0, std::abs(A10)));
      cplx at = 0;
      for (cplx c : p) at = at * cplx(-1, 0) + c;
      CHECK(std::abs(at) < 1e-9);
    }
  }

  SUBCASE("branch consistency is enforced") {
    std::array<cplx, 6> beta{0.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(germ_of(beta, 1, 1.0), BranchInconsistent);
    GermData g = germ_of({1.0, 0, 0, 0, 0, 0}, 1, 1.0);
    CHECK_THROWS_AS(germ_charpolys(1.0, g, 2), BranchInconsistent);
  }
}

TEST_CASE("classification filter") {
  for (double k : {0.5, 2.0}) {
    auto v = classification_filter({1.0, 0.0, k, 0.0, 0.0, 0.0}, 1.0);
    CAPTURE(k);
    CHECK(v.pass);
    CHECK(v.qh_ok);
    CHECK_FALSE(v.classical_equivalent);
  }

  auto bad = classification_filter({-3.0, I, 0.0, 0.0, 0.0, 0.0}, 1.0);
  CHECK_FALSE(bad.pass);
  CHECK(bad.qh_ok);
  REQUIRE(bad.failing_branches.size() == 1);
  CHECK(bad.failing_branches[0] == 3);

  auto lag = classification_filter({0.0, 0.0, 1.0, 0.0, 0.0, 0.0}, 1.0);
  CHECK(lag.pass);
  CHECK(lag.classical_equivalent);

  auto gamma = classification_filter({1.0, 0.0, 0.0, 0.5, 0.0, 0.0}, 1.0);
  CHECK_FALSE(gamma.pass);
  CHECK_FALSE(gamma.qh_ok);
}

TEST_CASE("parse_linear_b") {
  auto b = parse_linear_b("z1+2*z3");
  CHECK(b[0] == cplx(1, 0));
  CHECK(b[2] == cplx(2, 0));
  auto c = parse_linear_b("-3*z1+i*z2");
  CHECK(c[0] == cplx(-3, 0));
  CHECK(c[1] == cplx(0, 1));
  auto d = parse_linear_b("0.5*z1 - 1.5i*z2");
  CHECK(d[0] == cplx(0.5, 0));
  CHECK(d[1] == cplx(0, -1.5));
  CHECK_THROWS(parse_linear_b("z9"));
}

TEST_CASE("ara_check on the four-dimensional J13 = 0 family") {
  // (J1,J3) = (a, 1-a), chi = (1,2): the displayed s-family
  double a = 0.3, J24 = 0.8;
  QHSystem sys = qh_field_sond(4, a, 1 - a, 0.0, J24, 1.0, 2.0);
  for (double s : {0.0, 1.0}) {
    BalanceMask mask;
    mask.zero = {pidx(4, 0, 1), pidx(4, 2, 3)};
    mask.pinned = {{pidx(4, 0, 2), s}};
    // warm start from the family structure
    CVec w = CVec::Zero(12);
    cplx d3 = std::sqrt(cplx(-1 - s * s, 0));
    w(pidx(4, 0, 2)) = s;
    w(pidx(4, 1, 3)) = -s;
    w(pidx(4, 0, 3)) = d3;
    w(pidx(4, 1, 2)) = d3;
    w(6 + pidx(4, 0, 1)) = 1.0 / 3;
    w(6 + pidx(4, 2, 3)) = 1.0 / 3;
    w(6 + pidx(4, 0, 2)) = -d3 / 3.0;
    w(6 + pidx(4, 1, 3)) = d3 / 3.0;
    w(6 + pidx(4, 0, 3)) = s / 3.0;
    w(6 + pidx(4, 1, 2)) = s / 3.0;
    SolveOptions opt;
    opt.starts = 0;
    opt.warm_starts = {w};
    auto sols = solve_balances(sys, mask, opt);
    REQUIRE(sols.size() == 1);
    double A = 2 * std::sqrt(J24 * J24 * (1 + s * s));
    std::vector<cplx> expect = {0, -1, 3, 4, 2, 1, 2, 1,
                                2 + A, 2 - A, 1 + A, 1 - A};
    CHECK(multiset_eq(to_vec(sols[0].exponents), expect));

    AraReport ar = ara_check(sys, sols[0], mask);
    CAPTURE(s);
    CHECK(ar.tangent == 8);
    CHECK(ar.transversal == 4);
    CHECK(ar.pass);
    // the irrational exponents are tangential and pair with integer differences
    int irr = 0;
    for (cplx e : ar.tangential_exponents)
      if (!is_rational(e)) irr++;
    int expected_irr = is_rational(cplx(2 + A, 0)) ? 0 : 4;
    CHECK(irr == expected_irr);
  }
}

TEST_CASE("rationality detection") {
  CHECK(is_rational(cplx(0.5, 0)));
  CHECK(is_rational(cplx(7.0 / 24, 0)));
  CHECK_FALSE(is_rational(cplx(std::sqrt(2.0), 0)));
  CHECK_FALSE(is_rational(cplx(0.5, 0.1)));
}
