#pragma once

#include <string>
#include <vector>

#include "hesslab/models.hpp"

namespace hesslab {

struct StepSizeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { RK4, RKF45 };

struct IntegratorConfig {
  Method method = Method::RK4;
  double dt = 1e-3;
  double tol = 1e-10;   // RKF45 only
  double dt_min = 1e-9;
  double dt_max = 0.1;
  double t_end = 10.0;
};

struct Trajectory {
  std::vector<PhaseState> samples;
  std::vector<std::string> monitor_names;
  std::vector<std::vector<double>> monitors;  // [sample][channel]

  int channel(const std::string& name) const;
  std::vector<double> series(const std::string& name) const;
};

/// Euler-Poisson vector field: Mdot = [M,Omega] + [Gamma,chi], Gdot = [Gamma,Omega].
std::pair<SkewR, SkewR> rhs(const SystemSpec& spec, const PhaseState& st);

Trajectory integrate(const SystemSpec& spec, const PhaseState& st0,
                     const IntegratorConfig& cfg);

/// Named conserved quantities at a state. n=3: F1..F4 of eqs (2),(4);
/// n>=4: energy, tr(Gamma^2k), tr(M Gamma^(2k+1)), and for n=4 the
/// spectral coefficients a..j.
std::vector<std::pair<std::string, double>> first_integrals(const SystemSpec& spec,
                                                            const PhaseState& st);

/// Max residual of the phase identities phidot1 = N1(J24+J13),
/// phidot2 = -N4(J24-J13) along a compliant HA4 trajectory.
double phase_rate_check(const SystemSpec& spec, const Trajectory& traj,
                    double relation_tol = 1e-6);

}  // namespace hesslab
