#pragma once

#include <functional>
#include <random>

#include "hesslab/models.hpp"

namespace hesslab {

struct InvolutionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Poisson tensor with entries affine in the coordinates, stored as
/// pi(x) = pi0 + sum_k x_k pi_lin[k] so derivatives are exact.
/// Coordinate order: M_ij lexicographic (i<j), then Gamma_ij; for the
/// three-dimensional structures (M1,M2,M3,G1,G2,G3).
struct PoissonStructure {
  int dim = 0;
  std::vector<std::string> coords;
  Mat pi0;
  std::vector<Mat> pi_lin;

  Mat pi(const Vec& x) const;
  /// d pi^{ij} / d x_s
  double dpi(int i, int j, int s) const { return pi_lin[s](i, j); }
};

PoissonStructure standard_e3();
PoissonStructure second_e3();
PoissonStructure standard_sond(int n);      // semidirect so(n) x so(n)
PoissonStructure second_structure_so4(double chi12, double chi34);
PoissonStructure second_structure_sond(int n);
PoissonStructure pencil(const PoissonStructure& a, const PoissonStructure& b,
                        double lambda);

struct ScalarField {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> grad;  // may be empty: numeric fallback

  Vec gradient(const Vec& x) const;
};

ScalarField make_field(std::function<double(const Vec&)> f);
ScalarField coordinate_field(int dim, int k);
/// tr(Gamma^p) and tr(M Gamma^p) over the so(n)xso(n) chart, analytic gradients.
ScalarField trace_gamma_power(int n, int p);
ScalarField trace_m_gamma_power(int n, int p);

double bracket(const PoissonStructure& P, const ScalarField& f,
               const ScalarField& g, const Vec& x);

/// |{{z_i,z_j},z_k} + cyc| for one coordinate triple, from the affine tensor.
double jacobi_defect(const PoissonStructure& P, const Vec& x, int i, int j, int k);
/// Max over all coordinate triples.
double jacobi_defect(const PoissonStructure& P, const Vec& x);

double schouten_defect(const PoissonStructure& A, const PoissonStructure& B,
                       const Vec& x);

/// max over sampled points and coordinates g of |{f, z_g}|
double casimir_check(const PoissonStructure& P, const ScalarField& f,
                     int npoints = 100, uint64_t seed = 42, double scale = 1.0);

Vec ham_vector_field(const PoissonStructure& P, const ScalarField& H, const Vec& x);

double bihamiltonian_check(const PoissonStructure& P1, const ScalarField& H1,
                           const PoissonStructure& P2, const ScalarField& H2,
                           int npoints = 100, uint64_t seed = 42,
                           double scale = 1.0);

struct RestrictiveReport {
  double a1_residual = 0;       // |{H,f_i} - sum_j a_ij f_j|
  double a1_onset_residual = 0; // |{H,f_i}| at points projected onto {f=0}
  double a2_residual = 0;       // |{f_i,f_j}| or, with structure constants
                                // supplied, |{f_i,f_j} - sum_l d_ij^l f_l|
  double c_symmetry_defect = 0; // |c_il^j - c_li^j|, c_il^j = {a_ij, f_l};
                                // generalized with the d-correction when given
};

/// Structure constants for the noncommutative variant: d[l](i,j) = d_ij^l.
/// When supplied, the relation algebra is checked against them and the
/// compatibility symmetry acquires the sum_m d_il^m a_jm correction.
RestrictiveReport restrictive_check(const PoissonStructure& P1, const ScalarField& H0,
                                    const std::vector<ScalarField>& b,
                                    const std::vector<ScalarField>& f,
                                    int npoints = 100, uint64_t seed = 42,
                                    double involution_tol = 1e-8,
                                    std::function<Vec(Vec)> project_onto_zero = {},
                                    const std::vector<Mat>* structure_d = nullptr);

/// Uniform [-scale, scale] componentwise sample points, fixed seed.
std::vector<Vec> sample_points(int dim, int npoints, uint64_t seed, double scale = 1.0);

/// Phase-space coordinates <-> states, matching the module coordinate order.
Vec state_to_coords(const SystemSpec& spec, const PhaseState& st);
PhaseState coords_to_state(const SystemSpec& spec, const Vec& x);

/// H_first/H_second of a spec as a ScalarField over the coordinate chart.
ScalarField hamiltonian_field(const SystemSpec& spec, Which which);

}  // namespace hesslab
