#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hesslab/skew.hpp"

using namespace hesslab;

namespace {

std::mt19937_64 rng(1234);

SkewR random_skew(int n) {
  std::normal_distribution<double> nd;
  SkewR s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s.set(i, j, nd(rng));
  return s;
}

Vec3 random_vec3() {
  std::normal_distribution<double> nd;
  return Vec3(nd(rng), nd(rng), nd(rng));
}

}  // namespace

TEST_CASE("construction enforces skewness") {
  Mat bad = Mat::Random(4, 4);
  CHECK_THROWS(SkewR::from_matrix(bad));
  SkewR s = random_skew(5);
  CHECK((s.mat() + s.mat().transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < 5; ++i) CHECK(s(i, i) == 0.0);
  CHECK_THROWS_AS(SkewR::zero(2), DimensionMismatch);
  CHECK_THROWS_AS(SkewR::zero(9), DimensionMismatch);
}

TEST_CASE("commutator basics") {
  SkewR x = random_skew(4), y = random_skew(4);
  // [X, X] = 0
  CHECK(commutator(x, x).mat().cwiseAbs().maxCoeff() == 0.0);
  // antisymmetry
  CHECK((commutator(x, y).mat() + commutator(y, x).mat()).cwiseAbs().maxCoeff() <
        1e-14);
  CHECK_THROWS_AS(commutator(random_skew(4), random_skew(5)), DimensionMismatch);
}

TEST_CASE("elementary commutator against the matrix-product oracle") {
  // E12, E13 elementary skew matrices; direct product computation
  SkewR e12(3), e13(3);
  e12.set(0, 1, 1.0);
  e13.set(0, 2, 1.0);
  Mat oracle = e12.mat() * e13.mat() - e13.mat() * e12.mat();
  SkewR c = commutator(e12, e13);
  CHECK((c.mat() - oracle).cwiseAbs().maxCoeff() == 0.0);
  // which is -E23
  CHECK(c(1, 2) == -1.0);
  CHECK(c(0, 1) == 0.0);
  CHECK(c(0, 2) == 0.0);
}

TEST_CASE("jacobi identity") {
  for (int n : {3, 4, 5}) {
    for (int rep = 0; rep < 10; ++rep) {
      SkewR a = random_skew(n), b = random_skew(n), c = random_skew(n);
      Mat j = commutator(commutator(a, b), c).mat() +
              commutator(commutator(b, c), a).mat() +
              commutator(commutator(c, a), b).mat();
      CHECK(j.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("hat/unhat") {
  SkewR h = hat(Vec3(0, 0, 1));
  CHECK(h(0, 1) == -1.0);
  CHECK(h(1, 0) == 1.0);
  CHECK(h(0, 2) == 0.0);
  for (int rep = 0; rep < 20; ++rep) {
    Vec3 v = random_vec3(), x = random_vec3();
    CHECK((unhat(hat(v)) - v).cwiseAbs().maxCoeff() == 0.0);
    // hat(v) x == v cross x
    CHECK((hat(v).mat() * x - v.cross(x)).cwiseAbs().maxCoeff() < 1e-15);
  }
  Vec3 a(1, 0, 0), b(0, 1, 0);
  CHECK(((hat(a).mat() * b) - Vec3(0, 0, 1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(unhat(random_skew(4)), DimensionMismatch);
}

TEST_CASE("so(4) split/join") {
  // entry m12 = 1 corresponds to plus = (0,0,-1), minus = 0
  SkewR m(4);
  m.set(0, 1, 1.0);
  Vec3Pair p = split_so4(m);
  CHECK((p.plus - Vec3(0, 0, -1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.minus.cwiseAbs().maxCoeff() == 0.0);

  CHECK(split_so4(SkewR::zero(4)).plus.cwiseAbs().maxCoeff() == 0.0);
  CHECK(split_so4(SkewR::zero(4)).minus.cwiseAbs().maxCoeff() == 0.0);

  for (int rep = 0; rep < 20; ++rep) {
    SkewR a = random_skew(4);
    CHECK((join_so4(split_so4(a)).mat() - a.mat()).cwiseAbs().maxCoeff() == 0.0);
    Vec3Pair q{random_vec3(), random_vec3()};
    Vec3Pair r = split_so4(join_so4(q));
    CHECK((r.plus - q.plus).cwiseAbs().maxCoeff() == 0.0);
    CHECK((r.minus - q.minus).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK_THROWS_AS(split_so4(random_skew(5)), DimensionMismatch);

  SUBCASE("split/join are linear") {
    SkewR a = random_skew(4), b = random_skew(4);
    Vec3Pair pa = split_so4(a), pb = split_so4(b);
    Vec3Pair ps = split_so4(SkewR::from_matrix(a.mat() + 2.5 * b.mat()));
    CHECK((ps.plus - (pa.plus + 2.5 * pb.plus)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((ps.minus - (pa.minus + 2.5 * pb.minus)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("inertia map") {
  // J = I/2 gives Omega == M
  Sym half = Sym::from_matrix(0.5 * Mat::Identity(4, 4));
  SkewR m = random_skew(4);
  CHECK((inertia_map(half, m).mat() - m.mat()).cwiseAbs().maxCoeff() < 1e-15);

  // eq-(6) block J, m with only m13 = 1: Omega13 = J1 + J3 (product oracle)
  double J1 = 1.3, J3 = 2.9, J13 = 0.4, J24 = 0.7;
  Mat J = Mat::Zero(4, 4);
  J(0, 0) = J(1, 1) = J1;
  J(2, 2) = J(3, 3) = J3;
  J(0, 2) = J(2, 0) = J13;
  J(1, 3) = J(3, 1) = J24;
  Sym Js = Sym::from_matrix(J);
  SkewR e13(4);
  e13.set(0, 2, 1.0);
  SkewR om = inertia_map(Js, e13);
  Mat oracle = J * e13.mat() + e13.mat() * J;
  CHECK((om.mat() - oracle).cwiseAbs().maxCoeff() == 0.0);
  CHECK(om(0, 2) == doctest::Approx(J1 + J3).epsilon(1e-15));

  // eq-(10) form, m with only m14 = 1: Omega12 = J24
  SkewR e14(4);
  e14.set(0, 3, 1.0);
  CHECK(inertia_map(Js, e14)(0, 1) == doctest::Approx(J24).epsilon(1e-15));

  SUBCASE("linearity and skewness") {
    SkewR a = random_skew(4), b = random_skew(4);
    Mat lhs = inertia_map(Js, SkewR::from_matrix(a.mat() + 3.0 * b.mat())).mat();
    Mat rhs = inertia_map(Js, a).mat() + 3.0 * inertia_map(Js, b).mat();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    Mat om2 = inertia_map(Js, a).mat();
    CHECK((om2 + om2.transpose()).cwiseAbs().maxCoeff() < 1e-15);
  }

  SUBCASE("consistency under orthogonal conjugation of J") {
    SkewR m2 = random_skew(4);
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    Mat S = es.eigenvectors();
    Mat lhs = S.transpose() * inertia_map(Js, m2).mat() * S;
    Sym Jd = Sym::from_matrix(S.transpose() * J * S, 1e-9);
    SkewR ms = SkewR::from_matrix(S.transpose() * m2.mat() * S, 1e-9);
    CHECK((lhs - inertia_map(Jd, ms).mat()).cwiseAbs().maxCoeff() < 1e-12);
  }
}
