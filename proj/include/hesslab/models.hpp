#pragma once

#include <map>
#include <optional>
#include <string>

#include "hesslab/skew.hpp"

namespace hesslab {

enum class SystemKind { ClassicalHA, HA4, HAn, LagrangeTop, LagrangeBitop, Custom };

std::string kind_name(SystemKind k);
SystemKind kind_from_name(const std::string& s);

struct ConditionViolated : std::runtime_error {
  ConditionViolated(const std::string& cond, double resid)
      : std::runtime_error("condition violated: " + cond +
                           " (residual " + std::to_string(resid) + ")"),
        condition(cond), residual(resid) {}
  std::string condition;
  double residual;
};

struct DegenerateInertia : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Params = std::map<std::string, double>;

/// A named system: dimension, inertia data J, chi, parameters.
///
/// Conventions per kind (J holds multipliers, Omega built from it):
///   ClassicalHA   n=3, J = diag(J1,J2,J3) ascending, chi = hat((x0,y0,z0)),
///                 Omega = J*m (vector form); the center-of-mass
///                 condition is enforced at construction.
///   HA4           n=4, J block form with J13, J24; chi12, chi34.
///   HAn           n>=4, J block form with J13, J24; chi12 only.
///   LagrangeTop   n=3: J = diag(1,1,a), chi = hat((0,0,z0));
///                 n>=4: J = diag(J1,J1,J3..J3), chi12.
///   LagrangeBitop n=4, J = diag(J1,J1,J3,J3), chi12, chi34.
///   Custom        explicit J and chi.
struct SystemSpec {
  SystemKind kind = SystemKind::Custom;
  int n = 3;
  Sym J;
  SkewR chi;
  Params params;

  double param(const std::string& k) const;
  double param_or(const std::string& k, double dflt) const;
};

struct PhaseState {
  SkewR M;
  SkewR Gamma;
  double t = 0.0;
};

/// Diagonalized form: Jtilde = S^T J S with the rotation angles and the
/// chi-identities carried along.
struct DiagonalizedSpec {
  Vec Jtilde;      // diagonal entries of S^T J S
  SkewR chitilde;  // S^T chi S
  Mat S;           // the rotation used
  double t1 = 0.0, t2 = 0.0;
  double phi = 0.0, phi1 = 0.0;
  double identity_residual_1 = 0.0;  // |(Jt3-Jt4)-(Jt2-Jt1)|
  double identity_residual_2 = 0.0;  // second chi-identity, on |.|
  double identity_signed_2 = 0.0;    // signed residual, reported not enforced
};

SystemSpec make_spec(SystemKind kind, const Params& params,
                     std::optional<Mat> J = std::nullopt,
                     std::optional<Mat> chi = std::nullopt);

DiagonalizedSpec diagonalize(const SystemSpec& spec);

enum class Which { H_first, H_second };

double hamiltonian(const SystemSpec& spec, const PhaseState& st, Which which);

/// Angular velocity of a system: hat(J*unhat(M)) for n=3, JM+MJ otherwise.
SkewR omega_of(const SystemSpec& spec, const SkewR& M);

}  // namespace hesslab
