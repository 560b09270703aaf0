#include "hesslab/poisson.hpp"

#include <cmath>

namespace hesslab {

namespace {

std::vector<std::pair<int, int>> pairs(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  return p;
}

int pair_index(int n, int i, int j) {
  // lexicographic position of (i,j), i<j
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (a == i && b == j) return k;
      ++k;
    }
  throw std::logic_error("pair_index");
}

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

Mat PoissonStructure::pi(const Vec& x) const {
  Mat out = pi0;
  for (int k = 0; k < dim; ++k)
    if (x(k) != 0.0) out += x(k) * pi_lin[k];
  return out;
}

namespace {

PoissonStructure empty_structure(int dim) {
  PoissonStructure P;
  P.dim = dim;
  P.pi0 = Mat::Zero(dim, dim);
  P.pi_lin.assign(dim, Mat::Zero(dim, dim));
  return P;
}

void add_const(PoissonStructure& P, int a, int b, double coef) {
  P.pi0(a, b) += coef;
  P.pi0(b, a) -= coef;
}

const int EPS[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                          {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                          {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};

}  // namespace

PoissonStructure standard_e3() {
  PoissonStructure P = empty_structure(6);
  P.coords = {"M1", "M2", "M3", "G1", "G2", "G3"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (!EPS[i][j][k]) continue;
        // {Mi, Mj} = -eps_ijk Mk ; {Mi, Gj} = -eps_ijk Gk
        P.pi_lin[k](i, j) += -EPS[i][j][k];
        P.pi_lin[3 + k](i, 3 + j) += -EPS[i][j][k];
        P.pi_lin[3 + k](3 + i, j) += -EPS[i][j][k];
      }
  return P;
}

PoissonStructure second_e3() {
  PoissonStructure P = empty_structure(6);
  P.coords = {"M1", "M2", "M3", "G1", "G2", "G3"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (EPS[i][j][k]) P.pi_lin[3 + k](3 + i, 3 + j) += -EPS[i][j][k];
  add_const(P, 0, 1, 1.0);  // {M1, M2} = 1
  return P;
}

PoissonStructure standard_sond(int n) {
  const auto prs = pairs(n);
  const int np = static_cast<int>(prs.size());
  PoissonStructure P = empty_structure(2 * np);
  for (auto [i, j] : prs) {
    P.coords.push_back("M" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  for (auto [i, j] : prs) {
    P.coords.push_back("G" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  // {M_ij, M_kl} = -(d_jk M_il - d_ik M_jl - d_jl M_ik + d_il M_jk); same for
  // {M_ij, G_kl} and {G_ij, M_kl} with G on the right; {G,G} = 0.
  for (int a = 0; a < np; ++a) {
    auto [i, j] = prs[a];
    for (int b = 0; b < np; ++b) {
      auto [k, l] = prs[b];
      // M-M block -> M entries; M-G and G-M blocks -> G entries
      struct B { int row, col; bool gamma; };
      for (const B& blk : {B{a, b, false}, B{a, b + np, true}, B{a + np, b, true}}) {
        double c1 = -kron(j, k), c2 = kron(i, k), c3 = kron(j, l), c4 = -kron(i, l);
        // entries: c1*X_il + c2*X_jl + c3*X_ik + c4*X_jk with X = M or G
        auto put = [&](double c, int p, int q) {
          if (c == 0.0 || p == q) return;
          int idx = p < q ? pair_index(n, p, q) : pair_index(n, q, p);
          double sign = p < q ? 1.0 : -1.0;
          P.pi_lin[idx + (blk.gamma ? np : 0)](blk.row, blk.col) += c * sign;
        };
        put(c1, i, l);
        put(c2, j, l);
        put(c3, i, k);
        put(c4, j, k);
      }
    }
  }
  // antisymmetrize exactly
  for (auto& L : P.pi_lin) L = 0.5 * (L - L.transpose().eval());
  return P;
}

namespace {

// {G_ij, G_kl} = -(d_jk G_il - d_ik G_jl - d_jl G_ik + d_il G_jk): the so(n)
// Lie-Poisson pattern carried by the Gamma block alone.
void add_gamma_lie_poisson(PoissonStructure& P, int n) {
  const auto prs = pairs(n);
  const int np = static_cast<int>(prs.size());
  for (int a = 0; a < np; ++a) {
    auto [i, j] = prs[a];
    for (int b = 0; b < np; ++b) {
      auto [k, l] = prs[b];
      auto put = [&](double c, int p, int q) {
        if (c == 0.0 || p == q) return;
        int idx = p < q ? pair_index(n, p, q) : pair_index(n, q, p);
        double sign = p < q ? 1.0 : -1.0;
        P.pi_lin[np + idx](np + a, np + b) += c * sign;
      };
      put(-kron(j, k), i, l);
      put(kron(i, k), j, l);
      put(kron(j, l), i, k);
      put(-kron(i, l), j, k);
    }
  }
  for (auto& L : P.pi_lin) L = 0.5 * (L - L.transpose().eval());
}

}  // namespace

PoissonStructure second_structure_so4(double chi12, double chi34) {
  const int n = 4;
  PoissonStructure P = empty_structure(12);
  P.coords = standard_sond(4).coords;
  add_gamma_lie_poisson(P, n);
  auto M = [&](int i, int j) { return pair_index(n, i, j); };
  add_const(P, M(0, 2), M(1, 2), -chi12);  // {M13, M23} = -chi12
  add_const(P, M(0, 3), M(1, 3), -chi12);  // {M14, M24} = -chi12
  add_const(P, M(0, 2), M(0, 3), -chi34);  // {M13, M14} = -chi34
  add_const(P, M(1, 2), M(1, 3), -chi34);  // {M23, M24} = -chi34
  return P;
}

PoissonStructure second_structure_sond(int n) {
  const int np = static_cast<int>(pairs(n).size());
  PoissonStructure P = empty_structure(2 * np);
  P.coords = standard_sond(n).coords;
  add_gamma_lie_poisson(P, n);
  for (int l = 2; l < n; ++l)
    add_const(P, pair_index(n, 0, l), pair_index(n, 1, l), -1.0);  // {M_1l, M_2l} = -1
  return P;
}

PoissonStructure pencil(const PoissonStructure& a, const PoissonStructure& b,
                        double lambda) {
  if (a.dim != b.dim) throw DimensionMismatch("pencil: dim mismatch");
  PoissonStructure P = a;
  P.pi0 += lambda * b.pi0;
  for (int k = 0; k < P.dim; ++k) P.pi_lin[k] += lambda * b.pi_lin[k];
  return P;
}

Vec ScalarField::gradient(const Vec& x) const {
  if (grad) return grad(x);
  // Richardson-extrapolated central differences
  const double h = 1e-6;
  Vec g(x.size());
  for (int k = 0; k < x.size(); ++k) {
    Vec e = Vec::Zero(x.size());
    e(k) = h;
    double d1 = (eval(x + e) - eval(x - e)) / (2 * h);
    double d2 = (eval(x + 2 * e) - eval(x - 2 * e)) / (4 * h);
    g(k) = (4 * d1 - d2) / 3;
  }
  return g;
}

ScalarField make_field(std::function<double(const Vec&)> f) {
  ScalarField s;
  s.eval = std::move(f);
  return s;
}

ScalarField coordinate_field(int dim, int k) {
  ScalarField s;
  s.eval = [k](const Vec& x) { return x(k); };
  s.grad = [dim, k](const Vec&) {
    Vec g = Vec::Zero(dim);
    g(k) = 1.0;
    return g;
  };
  return s;
}

namespace {

struct SkewChart {
  int n, np;
  std::vector<std::pair<int, int>> prs;
  explicit SkewChart(int n_) : n(n_), prs(pairs(n_)) { np = int(prs.size()); }
  Mat unpackM(const Vec& x) const {
    Mat A = Mat::Zero(n, n);
    for (int k = 0; k < np; ++k) {
      A(prs[k].first, prs[k].second) = x(k);
      A(prs[k].second, prs[k].first) = -x(k);
    }
    return A;
  }
  Mat unpackG(const Vec& x) const {
    Mat A = Mat::Zero(n, n);
    for (int k = 0; k < np; ++k) {
      A(prs[k].first, prs[k].second) = x(np + k);
      A(prs[k].second, prs[k].first) = -x(np + k);
    }
    return A;
  }
};

}  // namespace

ScalarField trace_gamma_power(int n, int p) {
  SkewChart ch(n);
  ScalarField s;
  s.eval = [ch, p](const Vec& x) {
    Mat G = ch.unpackG(x);
    Mat P = Mat::Identity(ch.n, ch.n);
    for (int r = 0; r < p; ++r) P = P * G;
    return P.trace();
  };
  s.grad = [ch, p](const Vec& x) {
    // d tr(G^p)[E] = p tr(G^{p-1} E) = p ((G^{p-1})_ji - (G^{p-1})_ij)
    Mat G = ch.unpackG(x);
    Mat P = Mat::Identity(ch.n, ch.n);
    for (int r = 0; r < p - 1; ++r) P = P * G;
    Vec g = Vec::Zero(2 * ch.np);
    for (int k = 0; k < ch.np; ++k) {
      auto [i, j] = ch.prs[k];
      g(ch.np + k) = p * (P(j, i) - P(i, j));
    }
    return g;
  };
  return s;
}

ScalarField trace_m_gamma_power(int n, int p) {
  SkewChart ch(n);
  ScalarField s;
  s.eval = [ch, p](const Vec& x) {
    Mat M = ch.unpackM(x), G = ch.unpackG(x);
    Mat P = M;
    for (int r = 0; r < p; ++r) P = P * G;
    return P.trace();
  };
  s.grad = [ch, p](const Vec& x) {
    Mat M = ch.unpackM(x), G = ch.unpackG(x);
    Vec g = Vec::Zero(2 * ch.np);
    // M-direction: tr(E G^p)
    Mat Gp = Mat::Identity(ch.n, ch.n);
    for (int r = 0; r < p; ++r) Gp = Gp * G;
    for (int k = 0; k < ch.np; ++k) {
      auto [i, j] = ch.prs[k];
      g(k) = Gp(j, i) - Gp(i, j);
    }
    // Gamma-direction: sum_a tr(M G^a E G^{p-1-a}) = sum_a (G^{p-1-a} M G^a)_ji - (ij)
    std::vector<Mat> pw(p);
    pw[0] = Mat::Identity(ch.n, ch.n);
    for (int r = 1; r < p; ++r) pw[r] = pw[r - 1] * G;
    for (int a = 0; a < p; ++a) {
      Mat T = pw[p - 1 - a] * M * pw[a];
      for (int k = 0; k < ch.np; ++k) {
        auto [i, j] = ch.prs[k];
        g(ch.np + k) += T(j, i) - T(i, j);
      }
    }
    return g;
  };
  return s;
}

double bracket(const PoissonStructure& P, const ScalarField& f,
               const ScalarField& g, const Vec& x) {
  return f.gradient(x).dot(P.pi(x) * g.gradient(x));
}

double jacobi_defect(const PoissonStructure& P, const Vec& x, int i, int j, int k) {
  Mat pix = P.pi(x);
  double tot = 0;
  for (int s = 0; s < P.dim; ++s) {
    tot += P.dpi(i, j, s) * pix(s, k);
    tot += P.dpi(j, k, s) * pix(s, i);
    tot += P.dpi(k, i, s) * pix(s, j);
  }
  return std::abs(tot);
}

double jacobi_defect(const PoissonStructure& P, const Vec& x) {
  double worst = 0;
  for (int i = 0; i < P.dim; ++i)
    for (int j = i + 1; j < P.dim; ++j)
      for (int k = j + 1; k < P.dim; ++k)
        worst = std::max(worst, jacobi_defect(P, x, i, j, k));
  return worst;
}

double schouten_defect(const PoissonStructure& A, const PoissonStructure& B,
                       const Vec& x) {
  if (A.dim != B.dim) throw DimensionMismatch("schouten: dim mismatch");
  Mat Ax = A.pi(x), Bx = B.pi(x);
  double worst = 0;
  for (int i = 0; i < A.dim; ++i)
    for (int j = i + 1; j < A.dim; ++j)
      for (int k = j + 1; k < A.dim; ++k) {
        double tot = 0;
        for (int s = 0; s < A.dim; ++s) {
          tot += A.dpi(i, j, s) * Bx(s, k) + B.dpi(i, j, s) * Ax(s, k);
          tot += A.dpi(j, k, s) * Bx(s, i) + B.dpi(j, k, s) * Ax(s, i);
          tot += A.dpi(k, i, s) * Bx(s, j) + B.dpi(k, i, s) * Ax(s, j);
        }
        worst = std::max(worst, std::abs(tot));
      }
  return worst;
}

std::vector<Vec> sample_points(int dim, int npoints, uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Vec> pts(npoints);
  for (auto& p : pts) {
    p = Vec(dim);
    for (int k = 0; k < dim; ++k) p(k) = u(rng);
  }
  return pts;
}

double casimir_check(const PoissonStructure& P, const ScalarField& f, int npoints,
                     uint64_t seed, double scale) {
  double worst = 0;
  for (const Vec& x : sample_points(P.dim, npoints, seed, scale)) {
    Vec v = P.pi(x).transpose() * f.gradient(x);
    worst = std::max(worst, v.cwiseAbs().maxCoeff());
  }
  return worst;
}

Vec ham_vector_field(const PoissonStructure& P, const ScalarField& H, const Vec& x) {
  return P.pi(x) * H.gradient(x);
}

double bihamiltonian_check(const PoissonStructure& P1, const ScalarField& H1,
                           const PoissonStructure& P2, const ScalarField& H2,
                           int npoints, uint64_t seed, double scale) {
  if (P1.dim != P2.dim) throw DimensionMismatch("bihamiltonian_check: dim");
  double worst = 0;
  for (const Vec& x : sample_points(P1.dim, npoints, seed, scale)) {
    Vec d = ham_vector_field(P1, H1, x) - ham_vector_field(P2, H2, x);
    worst = std::max(worst, d.cwiseAbs().maxCoeff());
  }
  return worst;
}

RestrictiveReport restrictive_check(const PoissonStructure& P1, const ScalarField& H0,
                                    const std::vector<ScalarField>& b,
                                    const std::vector<ScalarField>& f,
                                    int npoints, uint64_t seed, double involution_tol,
                                    std::function<Vec(Vec)> project_onto_zero,
                                    const std::vector<Mat>* structure_d) {
  if (b.size() != f.size()) throw std::invalid_argument("restrictive_check: |b| != |f|");
  const size_t K = f.size();
  RestrictiveReport rep;

  ScalarField H = make_field([&, K](const Vec& x) {
    double v = H0.eval(x);
    for (size_t j = 0; j < K; ++j) v += b[j].eval(x) * f[j].eval(x);
    return v;
  });
  // gradient via product rule so analytic part gradients are reused
  H.grad = [&, K](const Vec& x) {
    Vec g = H0.gradient(x);
    for (size_t j = 0; j < K; ++j)
      g += b[j].eval(x) * f[j].gradient(x) + f[j].eval(x) * b[j].gradient(x);
    return g;
  };

  auto a_field = [&](size_t i, size_t j) {
    ScalarField af;
    af.eval = [&, i, j](const Vec& x) { return bracket(P1, b[j], f[i], x); };
    return af;
  };

  auto pts = sample_points(P1.dim, npoints, seed);
  for (const Vec& x : pts) {
    for (size_t i = 0; i < K; ++i) {
      for (size_t j = 0; j < K; ++j) {
        double bij = bracket(P1, f[i], f[j], x);
        if (structure_d)
          for (size_t l = 0; l < K; ++l)
            bij -= (*structure_d)[l](i, j) * f[l].eval(x);
        rep.a2_residual = std::max(rep.a2_residual, std::abs(bij));
      }
      double lhs = bracket(P1, H, f[i], x);
      double rhs = 0;
      for (size_t j = 0; j < K; ++j) {
        // A1 coefficient; the noncommutative algebra contributes
        // b_k {f_k, f_i} = sum_j (sum_k b_k d_ki^j) f_j
        double aij = bracket(P1, b[j], f[i], x);
        if (structure_d)
          for (size_t k = 0; k < K; ++k)
            aij += b[k].eval(x) * (*structure_d)[j](k, i);
        rhs += aij * f[j].eval(x);
      }
      rep.a1_residual = std::max(rep.a1_residual, std::abs(lhs - rhs));
      // c_il^j symmetry; Jacobi gives c_il^j - c_li^j = sum_m d_il^m {b_j, f_m}
      for (size_t j = 0; j < K; ++j)
        for (size_t l = 0; l < K; ++l) {
          double c_il = bracket(P1, a_field(i, j), f[l], x);
          double c_li = bracket(P1, a_field(l, j), f[i], x);
          double corr = 0;
          if (structure_d)
            for (size_t m = 0; m < K; ++m)
              corr += (*structure_d)[m](i, l) * bracket(P1, b[j], f[m], x);
          rep.c_symmetry_defect =
              std::max(rep.c_symmetry_defect, std::abs(c_il - c_li - corr));
        }
    }
    if (project_onto_zero) {
      Vec x0 = project_onto_zero(x);
      for (size_t i = 0; i < K; ++i)
        rep.a1_onset_residual =
            std::max(rep.a1_onset_residual, std::abs(bracket(P1, H, f[i], x0)));
    }
  }
  if (rep.a2_residual > involution_tol)
    throw InvolutionFailed("A2 violated: max |{f_i,f_j}| = " +
                           std::to_string(rep.a2_residual));
  return rep;
}

Vec state_to_coords(const SystemSpec& spec, const PhaseState& st) {
  if (spec.n == 3) {
    Vec x(6);
    x << unhat(st.M), unhat(st.Gamma);
    return x;
  }
  Vec m = st.M.upper(), g = st.Gamma.upper();
  Vec x(m.size() + g.size());
  x << m, g;
  return x;
}

PhaseState coords_to_state(const SystemSpec& spec, const Vec& x) {
  PhaseState st;
  if (spec.n == 3) {
    st.M = hat(x.head(3));
    st.Gamma = hat(x.tail(3));
    return st;
  }
  int np = spec.n * (spec.n - 1) / 2;
  st.M = SkewR::from_upper(spec.n, x.head(np));
  st.Gamma = SkewR::from_upper(spec.n, x.tail(np));
  return st;
}

ScalarField hamiltonian_field(const SystemSpec& spec, Which which) {
  ScalarField s;
  s.eval = [spec, which](const Vec& x) {
    return hamiltonian(spec, coords_to_state(spec, x), which);
  };
  if (which == Which::H_first) {
    // dH/dM_ij = Omega_ij, dH/dGamma_ij = chi_ij in the pairing <,>
    s.grad = [spec](const Vec& x) {
      PhaseState st = coords_to_state(spec, x);
      SkewR Om = omega_of(spec, st.M);
      PhaseState gr{Om, spec.chi, 0.0};
      return state_to_coords(spec, gr);
    };
  }
  return s;
}

}  // namespace hesslab
