#include "hesslab/models.hpp"

#include <cmath>

namespace hesslab {

std::string kind_name(SystemKind k) {
  switch (k) {
    case SystemKind::ClassicalHA: return "ClassicalHA";
    case SystemKind::HA4: return "HA4";
    case SystemKind::HAn: return "HAn";
    case SystemKind::LagrangeTop: return "LagrangeTop";
    case SystemKind::LagrangeBitop: return "LagrangeBitop";
    case SystemKind::Custom: return "Custom";
  }
  return "?";
}

SystemKind kind_from_name(const std::string& s) {
  if (s == "ClassicalHA") return SystemKind::ClassicalHA;
  if (s == "HA4") return SystemKind::HA4;
  if (s == "HAn") return SystemKind::HAn;
  if (s == "LagrangeTop") return SystemKind::LagrangeTop;
  if (s == "LagrangeBitop") return SystemKind::LagrangeBitop;
  if (s == "Custom") return SystemKind::Custom;
  throw std::invalid_argument("unknown system kind: " + s);
}

double SystemSpec::param(const std::string& k) const {
  auto it = params.find(k);
  if (it == params.end()) throw std::invalid_argument("missing parameter: " + k);
  return it->second;
}

double SystemSpec::param_or(const std::string& k, double dflt) const {
  auto it = params.find(k);
  return it == params.end() ? dflt : it->second;
}

namespace {

Mat block_J(int n, double J1, double J3, double J13, double J24) {
  Mat J = Mat::Zero(n, n);
  J(0, 0) = J(1, 1) = J1;
  for (int k = 2; k < n; ++k) J(k, k) = J3;
  J(0, 2) = J(2, 0) = J13;
  J(1, 3) = J(3, 1) = J24;
  return J;
}

SkewR chi_of(int n, double chi12, double chi34) {
  SkewR c(n);
  c.set(0, 1, chi12);
  if (n >= 4) c.set(2, 3, chi34);
  return c;
}

}  // namespace

SystemSpec make_spec(SystemKind kind, const Params& params,
                     std::optional<Mat> Jexp, std::optional<Mat> chiexp) {
  SystemSpec s;
  s.kind = kind;
  s.params = params;
  const double tol = s.param_or("tol", 1e-10);

  switch (kind) {
    case SystemKind::ClassicalHA: {
      s.n = 3;
      double J1 = s.param("J1"), J2 = s.param("J2"), J3 = s.param("J3");
      double x0 = s.param("x0"), y0 = s.param_or("y0", 0.0), z0 = s.param("z0");
      if (!(J1 < J2 && J2 < J3))
        throw ConditionViolated("J1 < J2 < J3 ordering", 0.0);
      if (std::abs(y0) > tol) throw ConditionViolated("y0 == 0", std::abs(y0));
      double r = x0 * std::sqrt(J3 - J2) + z0 * std::sqrt(J2 - J1);
      if (std::abs(r) > tol)
        throw ConditionViolated("x0*sqrt(J3-J2) + z0*sqrt(J2-J1) == 0", std::abs(r));
      s.J = Sym::diagonal(Vec3(J1, J2, J3));
      s.chi = hat(Vec3(x0, y0, z0));
      break;
    }
    case SystemKind::HA4: {
      s.n = 4;
      s.J = Sym::from_matrix(block_J(4, s.param("J1"), s.param("J3"),
                                     s.param("J13"), s.param("J24")));
      s.chi = chi_of(4, s.param("chi12"), s.param("chi34"));
      if (Jexp) {  // explicit J must keep the coupled block shape
        Mat d = *Jexp - s.J.mat();
        if (d.cwiseAbs().maxCoeff() > tol)
          throw ConditionViolated("J has the coupled block shape", d.cwiseAbs().maxCoeff());
      }
      break;
    }
    case SystemKind::HAn: {
      s.n = static_cast<int>(s.param("n"));
      if (s.n < 4) throw std::invalid_argument("HAn requires n >= 4");
      s.J = Sym::from_matrix(block_J(s.n, s.param("J1"), s.param("J3"),
                                     s.param("J13"), s.param("J24")));
      s.chi = chi_of(s.n, s.param("chi12"), 0.0);
      break;
    }
    case SystemKind::LagrangeTop: {
      s.n = static_cast<int>(s.param_or("n", 3));
      if (s.n == 3) {
        double a = s.param("a");
        s.J = Sym::diagonal(Vec3(1.0, 1.0, a));
        s.chi = hat(Vec3(0, 0, s.param_or("z0", 1.0)));
      } else {
        s.J = Sym::from_matrix(block_J(s.n, s.param("J1"), s.param("J3"), 0, 0));
        s.chi = chi_of(s.n, s.param("chi12"), 0.0);
      }
      break;
    }
    case SystemKind::LagrangeBitop: {
      s.n = 4;
      s.J = Sym::from_matrix(block_J(4, s.param("J1"), s.param("J3"), 0, 0));
      s.chi = chi_of(4, s.param("chi12"), s.param("chi34"));
      break;
    }
    case SystemKind::Custom: {
      if (!Jexp || !chiexp)
        throw std::invalid_argument("Custom kind needs explicit J and chi");
      s.J = Sym::from_matrix(*Jexp);
      s.chi = SkewR::from_matrix(*chiexp);
      s.n = s.J.n();
      if (s.chi.n() != s.n) throw DimensionMismatch("J/chi dimension mismatch");
      break;
    }
  }
  return s;
}

DiagonalizedSpec diagonalize(const SystemSpec& spec) {
  if (spec.kind != SystemKind::HA4 && spec.kind != SystemKind::HAn)
    throw Unsupported("diagonalize: only HA4/HAn");
  const int n = spec.n;
  double J1 = spec.param("J1"), J3 = spec.param("J3");
  double J13 = spec.param("J13"), J24 = spec.param("J24");

  double phi, phi1;
  if (std::abs(J3 - J1) < 1e-14) {
    if (std::abs(J13) < 1e-14 && std::abs(J24) < 1e-14)
      throw DegenerateInertia("J1 == J3 with no off-diagonal terms");
    phi = (J13 == 0.0) ? 0.0 : M_PI / 4;  // arctan limit
    phi1 = (J24 == 0.0) ? 0.0 : M_PI / 4;
  } else {
    phi = 0.5 * std::atan(2 * J13 / (J3 - J1));
    phi1 = 0.5 * std::atan(2 * J24 / (J3 - J1));
  }

  Mat S = Mat::Identity(n, n);
  S(0, 0) = std::cos(phi);  S(0, 2) = std::sin(phi);
  S(2, 0) = -std::sin(phi); S(2, 2) = std::cos(phi);
  S(1, 1) = std::cos(phi1); S(1, 3) = std::sin(phi1);
  S(3, 1) = -std::sin(phi1); S(3, 3) = std::cos(phi1);

  Mat Jt = S.transpose() * spec.J.mat() * S;
  Mat ct = S.transpose() * spec.chi.mat() * S;

  DiagonalizedSpec d;
  d.S = S;
  d.Jtilde = Jt.diagonal();
  d.chitilde = SkewR::from_matrix(0.5 * (ct - ct.transpose().eval()), 1e-9);
  d.phi = phi;
  d.phi1 = phi1;

  double c12 = d.chitilde(0, 1), c14 = n >= 4 ? d.chitilde(0, 3) : 0.0;
  double c23 = d.chitilde(1, 2), c34 = n >= 4 ? d.chitilde(2, 3) : 0.0;
  double den1 = c14 * c14 - c34 * c34 + c12 * c12 - c23 * c23;
  double den2 = -c14 * c14 - c34 * c34 + c12 * c12 + c23 * c23;
  d.t1 = (std::abs(den1) > 1e-300) ? 2 * (c14 * c34 - c12 * c23) / den1 : 0.0;
  d.t2 = (std::abs(den2) > 1e-300) ? 2 * (c14 * c12 - c23 * c34) / den2 : 0.0;

  d.identity_residual_1 =
      std::abs((d.Jtilde(2) - d.Jtilde(3)) - (d.Jtilde(1) - d.Jtilde(0)));
  double lhs = (d.Jtilde(2) - d.Jtilde(0)) / std::sqrt(1 + d.t1 * d.t1);
  double rhs = (d.Jtilde(3) - d.Jtilde(1)) / std::sqrt(1 + d.t2 * d.t2);
  d.identity_signed_2 = lhs - rhs;
  d.identity_residual_2 = std::abs(std::abs(lhs) - std::abs(rhs));
  return d;
}

SkewR omega_of(const SystemSpec& spec, const SkewR& M) {
  if (spec.n == 3) return hat(spec.J.mat() * unhat(M));
  return inertia_map(spec.J, M);
}

double hamiltonian(const SystemSpec& spec, const PhaseState& st, Which which) {
  if (which == Which::H_first) {
    SkewR Om = omega_of(spec, st.M);
    return 0.5 * pair_inner(st.M, Om) + pair_inner(st.Gamma, spec.chi);
  }

  // second Hamiltonians of the compatible Poisson pairs
  switch (spec.kind) {
    case SystemKind::LagrangeTop: {
      if (spec.n == 3) {
        double a = spec.param("a");
        Vec3 m = unhat(st.M), g = unhat(st.Gamma);
        return (a - 1) * m(2) * (0.5 * (m(0) * m(0) + m(1) * m(1)) + g(2)) +
               m.dot(g);
      }
      // n-dimensional: J1 = a, J3 = 1-a, chi12 = 1 expected
      const int n = spec.n;
      double a = spec.param("J1");
      const Mat& M = st.M.mat();
      const Mat& G = st.Gamma.mat();
      double s1 = 0, s2 = 0, s3 = 0;
      for (int p = 2; p < n; ++p) s1 += M(0, p) * M(0, p) + M(1, p) * M(1, p);
      for (int p = 2; p < n; ++p)
        for (int q = p + 1; q < n; ++q)
          s2 += M(p, q) * (M(0, q) * M(1, p) - M(1, q) * M(0, p) + G(p, q));
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) s3 += M(p, q) * G(p, q);
      return (2 * a - 1) * M(0, 1) * (0.5 * s1 + G(0, 1)) + (1 - 2 * a) * s2 + s3;
    }
    case SystemKind::LagrangeBitop: {
      double a = spec.param("J1");
      double x12 = spec.param("chi12"), x34 = spec.param("chi34");
      double den = x12 * x12 - x34 * x34;
      if (std::abs(den) < 1e-9)
        throw Unsupported("Htilde_LB undefined for chi12^2 == chi34^2");
      const Mat& M = st.M.mat();
      const Mat& G = st.Gamma.mat();
      double quad = 0.5 * (M(0, 2) * M(0, 2) + M(0, 3) * M(0, 3) +
                           M(1, 2) * M(1, 2) + M(1, 3) * M(1, 3));
      double t1 = (2 * a - 1) * (x12 * M(0, 1) + x34 * M(2, 3)) / den *
                  (quad + x12 * G(0, 1) + x34 * G(2, 3));
      double t2 = (1 - 2 * a) * (x12 * M(2, 3) + x34 * M(0, 1)) / den *
                  (M(1, 2) * M(0, 3) - M(0, 2) * M(1, 3) + x12 * G(2, 3) +
                   x34 * G(0, 1));
      double t3 = 0;
      for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) t3 += M(p, q) * G(p, q);
      return t1 + t2 + t3;
    }
    default:
      throw Unsupported("no second Hamiltonian for kind " + kind_name(spec.kind));
  }
}

}  // namespace hesslab
