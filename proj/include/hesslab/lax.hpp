#pragma once

#include "hesslab/dynamics.hpp"

namespace hesslab {

/// L(lambda) = lambda^2 C + lambda M + Gamma
struct LaxPolynomial {
  SkewR C, M, Gamma;
  Mat eval(double lambda) const {
    return lambda * lambda * C.mat() + lambda * M.mat() + Gamma.mat();
  }
  CMat eval(cplx lambda) const {
    return lambda * lambda * C.mat().cast<cplx>() + lambda * M.mat().cast<cplx>() +
           Gamma.mat().cast<cplx>();
  }
};

struct SpectralCoefficients {
  double a, b, c, d, e, f, g, h, i, j;
};

struct LaxPair {
  LaxPolynomial L;
  SkewR A_chi;    // lambda-part of A
  SkewR A_omega;  // constant part of A
};

/// Assembles L, A with C = chi/(J1+J3) for n >= 4 or the classical
/// pair C = chi/J2tilde for n = 3.
LaxPair build(const SystemSpec& spec, const PhaseState& st);

/// Max over lambda-coefficients of |(d/dt)L - [L, A]| entries, with (d/dt)L
/// assembled algebraically from rhs(). Zero iff the Lax identity holds.
double lax_residual(const SystemSpec& spec, const PhaseState& st);

/// Closed-form coefficients of det(L - mu I) = mu^4 + P(lambda) mu^2 + Q(lambda)^2,
/// n = 4 only.
SpectralCoefficients spectral_coeffs(const LaxPolynomial& L);

struct IsospectralityReport {
  std::vector<std::string> names;       // coefficient channels
  std::vector<double> initial;
  std::vector<double> max_abs_drift;    // absolute drift over the trajectory
  std::vector<double> max_rel_drift;    // relative to max(1,|initial|)
  double eigenvalue_drift = 0.0;        // eigenvalues of L(lambda*) tracked in time
  double probe_lambda = 0.7;
};

IsospectralityReport isospectrality_report(const SystemSpec& spec,
                                           const Trajectory& traj,
                                           double probe_lambda = 0.7);

}  // namespace hesslab
