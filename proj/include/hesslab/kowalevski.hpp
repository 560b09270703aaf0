#pragma once

#include <array>
#include <functional>

#include "hesslab/skew.hpp"

namespace hesslab {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchInconsistent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ClassificationAmbiguous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quasi-homogeneous polynomial vector field with exact directional
/// derivatives and the conormal data used by the arithmetic-axiom check.
struct QHSystem {
  int dim = 0;
  Eigen::VectorXi g;                                      // quasi-homogeneity exponents
  std::function<CVec(const CVec&)> f;                     // the field
  std::function<CVec(const CVec&, const CVec&)> df;       // d f(z)[w], exact
  std::function<std::vector<CVec>(const CVec&)> conormals;  // leaf conormals at z
};

/// Three-dimensional field of H = (z1^2+z2^2)/2 + a z3^2/2 + z6 + J b z3 on e(3),
/// with b = sum_k beta_k z_k (z1..z3 are M, z4..z6 are Gamma).
/// beta = (1,0,0,...) and J = J13 is the classical Hess-Appel'rot system.
QHSystem qh_field_3d(const std::array<cplx, 6>& beta, double J, double a = 2.0);

/// Euler-Poisson field on so(n) x so(n) with the block J of eq-(6)/(10) shape;
/// variables (M_ij lex, Gamma_ij lex), exponents (1..1, 2..2).
QHSystem qh_field_sond(int n, double J1, double J3, double J13, double J24,
                       double chi12, double chi34);

struct QHCheck {
  bool pass = false;
  double worst = 0;
};
QHCheck check_qh(const QHSystem& sys, int trials = 50, uint64_t seed = 42);

/// Balance constraints: coordinates forced to zero (the invariant relations)
/// plus optionally pinned values selecting a member of a parametric family.
struct BalanceMask {
  std::vector<int> zero;
  std::vector<std::pair<int, cplx>> pinned;
};

struct BalanceSolution {
  CVec C;
  double residual = 0;
  CMat K;              // Kowalevski matrix Df(C) + diag(g)
  CVec exponents;      // eigenvalues of K sorted by (re, im)
  int rank_deficiency = 0;
};

struct SolveOptions {
  int starts = 200;
  uint64_t seed = 42;
  double scale = 1.0;
  double dedup_tol = 1e-7;
  int max_iter = 120;
  double residual_tol = 1e-10;
  std::vector<CVec> warm_starts;
};

std::vector<BalanceSolution> solve_balances(const QHSystem& sys,
                                            const BalanceMask& mask,
                                            const SolveOptions& opt = {});

CMat kowalevski_matrix(const QHSystem& sys, const CVec& C);
CVec exponents_of(const QHSystem& sys, const CVec& C);

struct AraReport {
  int p = 0;            // rank of the conormal family at the balance
  int tangent = 0;
  int transversal = 0;
  std::vector<cplx> tangential_exponents;
  std::vector<cplx> transversal_exponents;
  bool transversal_rational = false;
  bool tangential_half_rational = false;
  bool irrational_pairs_integer_diff = false;
  bool pass = false;
};

/// Classifies root subspaces of K against the leaf conormals (gradients of the
/// masked invariant-relation coordinates plus first-structure Casimir
/// gradients) and runs the arithmetic conditions on the resulting split.
AraReport ara_check(const QHSystem& sys, const BalanceSolution& sol,
                    const BalanceMask& mask, double tol = 1e-6);

bool is_rational(cplx x, int max_den = 24, double tol = 1e-7);

// ---- germ analysis of the three-dimensional perturbations H1 = H0 + J b M3 ----

struct GermData {
  int branch = 0;      // 1..4
  cplx f;              // value of b at the balance
  std::array<cplx, 6> fi{};  // partials of b there
  cplx c2hat;          // the branch-consistent balance coordinate
  cplx X, Y;           // X = J c2 f2, Y = J c2 f1
};

/// Branch data: 1: (c1=+i c2, f=-2i/J), 2: (-i, +2i/J), 3: (+i, -i/J), 4: (-i, +i/J).
GermData germ_of(const std::array<cplx, 6>& beta, int branch, double J);

/// Monic degree-6 characteristic polynomial of the germ Kowalevski matrix,
/// coefficients [w^6 .. w^0].
std::array<cplx, 7> germ_charpoly(const GermData& germ);

std::array<cplx, 7> germ_charpolys(double J, const GermData& germ, int branch);

struct ClassificationVerdict {
  bool pass = false;
  bool classical_equivalent = false;  // b has no z1/z2 part: Lagrange-type shift
  bool qh_ok = false;
  std::vector<int> failing_branches;
  std::array<std::array<cplx, 7>, 4> pch{};
  std::array<bool, 4> integer_coefficients{};  // per-branch diagnostic
  std::string detail;
};

ClassificationVerdict classification_filter(const std::array<cplx, 6>& beta, double J);

/// Parses linear expressions like "z1+2*z3" or "-3*z1+i*z2".
std::array<cplx, 6> parse_linear_b(const std::string& expr);

}  // namespace hesslab
