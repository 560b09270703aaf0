#pragma once

#include <array>

#include "hesslab/lax.hpp"

namespace hesslab {

struct DegenerateCurve : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct QIdenticallyZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KZero : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Roots of a complex polynomial (highest-degree coefficient first) via the
/// companion-matrix eigenproblem. Leading zeros are stripped.
std::vector<cplx> poly_roots(const std::vector<cplx>& coeffs);

/// P, Q of the spectral polynomial, degree-4 coefficient lists [x^4 .. x^0].
struct CurveData {
  std::array<double, 5> P;  // a b c d e
  std::array<double, 5> Q;  // f g h i j
};

CurveData curve_data(const SpectralCoefficients& c);

struct Gamma1Curve {
  std::array<double, 9> coeffs;  // P^2/4 - Q^2, degree 8, [x^8 .. x^0]
  int distinct_roots = 0;
  int genus = 0;           // floor((r-1)/2)
  bool degenerate = false; // repeated roots detected
};

/// The factor curve u1^2 = P^2/4 - Q^2 and its genus from the distinct-root
/// count (generic genus 3). Degenerate root patterns set the flag instead of
/// throwing so sweeps can continue; callers wanting a hard error can check it.
Gamma1Curve curve_gamma1(const CurveData& cd, double root_tol = 1e-8);

struct DoublePoints {
  std::vector<cplx> lambdas;   // zeros of Q
  std::vector<int> multiplicity;
  int arithmetic_genus = 9;
  int normalization_genus = 5; // 9 - #double points when simple
  bool simple = true;
};

DoublePoints double_points(const CurveData& cd, double tol = 1e-8);

struct CurvePair {
  std::array<double, 5> C1;  // P/2 + Q
  std::array<double, 5> C2;  // P/2 - Q
  cplx j1, j2;               // j-invariants of the two genus-1 curves
};

CurvePair curves_c1c2(const CurveData& cd);

/// j-invariant of y^2 = quartic (degree 4 or 3 leading coefficient zero).
cplx j_invariant_quartic(const std::array<double, 5>& q);

/// Reduction data for one so(3) factor.
struct ReducedHalf {
  Vec3 M, Gamma, chi;
  double h = 0, c = 0, K = 0, l = 0;
  double A = 0, B = 0, C = 0;  // elliptic curve y^2 = 8Ax^3 - 4Bx^2 - 8Ax - 4C
};

struct ReducedState {
  ReducedHalf one, two;
};

ReducedState reduce(const SystemSpec& spec, const PhaseState& st);

struct QuadratureReport {
  double gamma3_residual = 0;  // (d Gamma_(i)3/dt)^2 == P3(Gamma_(i)3)
  double K_residual = 0;       // K_i^2 == h_i - 2 chi_(i)3 Gamma_(i)3 /(J1+J3)
  double l_residual = 0;       // the ldot equations
  int skipped_segments = 0;    // K through zero
};

QuadratureReport quadrature_check(const SystemSpec& spec, const Trajectory& traj);

/// Integrates the reduced equations (14)-(15) directly, returning the two
/// 3-vector pairs sampled like the full flow; used for the cross-check.
struct ReducedTrajectory {
  std::vector<double> t;
  std::vector<std::array<Vec3, 4>> samples;  // M1, G1, M2, G2
};

ReducedTrajectory integrate_reduced(const SystemSpec& spec, const PhaseState& st0,
                                    double dt, double t_end);

}  // namespace hesslab
