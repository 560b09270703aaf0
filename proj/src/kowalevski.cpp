#include "hesslab/kowalevski.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

namespace hesslab {

namespace {

std::vector<std::pair<int, int>> pairs(int n) {
  std::vector<std::pair<int, int>> p;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.emplace_back(i, j);
  return p;
}

CVec cross(const CVec& a, const CVec& b) {
  CVec c(3);
  c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
      a(0) * b(1) - a(1) * b(0);
  return c;
}

void sort_complex(CVec& v) {
  std::vector<cplx> s(v.data(), v.data() + v.size());
  std::sort(s.begin(), s.end(), [](cplx a, cplx b) {
    if (std::abs(a.real() - b.real()) > 1e-12) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  for (int k = 0; k < v.size(); ++k) v(k) = s[k];
}

}  // namespace

QHSystem qh_field_3d(const std::array<cplx, 6>& beta, double J, double a) {
  QHSystem sys;
  sys.dim = 6;
  sys.g = Eigen::VectorXi(6);
  sys.g << 1, 1, 1, 2, 2, 2;

  auto gradH = [beta, J, a](const CVec& z) {
    cplx b = 0;
    for (int k = 0; k < 6; ++k) b += beta[k] * z(k);
    CVec HM(3), HG(3);
    HM << z(0) + J * beta[0] * z(2), z(1) + J * beta[1] * z(2),
        a * z(2) + J * (beta[2] * z(2) + b);
    HG << J * beta[3] * z(2), J * beta[4] * z(2), 1.0 + J * beta[5] * z(2);
    CVec out(6);
    out << HM, HG;
    return out;
  };
  sys.f = [gradH](const CVec& z) {
    CVec gH = gradH(z);
    CVec M = z.head(3), G = z.tail(3);
    CVec HM = gH.head(3), HG = gH.tail(3);
    CVec out(6);
    out << cross(M, HM) + cross(G, HG), cross(G, HM);
    return out;
  };
  sys.df = [gradH, beta, J, a](const CVec& z, const CVec& w) {
    // directional derivative: product rule with d(gradH)[w]
    CVec M = z.head(3), G = z.tail(3);
    CVec Mw = w.head(3), Gw = w.tail(3);
    CVec gH = gradH(z);
    CVec HM = gH.head(3), HG = gH.tail(3);
    cplx bw = 0;
    for (int k = 0; k < 6; ++k) bw += beta[k] * w(k);
    CVec dHM(3), dHG(3);
    dHM << Mw(0) + J * beta[0] * Mw(2), Mw(1) + J * beta[1] * Mw(2),
        a * Mw(2) + J * (beta[2] * Mw(2) + bw);
    dHG << J * beta[3] * Mw(2), J * beta[4] * Mw(2), J * beta[5] * Mw(2);
    CVec out(6);
    out << cross(Mw, HM) + cross(M, dHM) + cross(Gw, HG) + cross(G, dHG),
        cross(Gw, HM) + cross(G, dHM);
    return out;
  };
  sys.conormals = [](const CVec& z) {
    // Casimir gradients of e(3): <G,G> and <M,G>; the relation covectors
    // come from the balance mask
    std::vector<CVec> out;
    CVec c1 = CVec::Zero(6);
    for (int k = 0; k < 3; ++k) c1(3 + k) = 2.0 * z(3 + k);
    out.push_back(c1);
    CVec c2(6);
    c2 << z.tail(3), z.head(3);
    out.push_back(c2);
    return out;
  };
  return sys;
}

QHSystem qh_field_sond(int n, double J1, double J3, double J13, double J24,
                       double chi12, double chi34) {
  QHSystem sys;
  const auto prs = pairs(n);
  const int np = static_cast<int>(prs.size());
  sys.dim = 2 * np;
  sys.g = Eigen::VectorXi(2 * np);
  for (int k = 0; k < np; ++k) {
    sys.g(k) = 1;
    sys.g(np + k) = 2;
  }
  Mat J = Mat::Zero(n, n);
  J(0, 0) = J(1, 1) = J1;
  for (int k = 2; k < n; ++k) J(k, k) = J3;
  J(0, 2) = J(2, 0) = J13;
  J(1, 3) = J(3, 1) = J24;
  Mat chi = Mat::Zero(n, n);
  chi(0, 1) = chi12;
  chi(1, 0) = -chi12;
  if (n >= 4) {
    chi(2, 3) = chi34;
    chi(3, 2) = -chi34;
  }

  auto unpack = [prs, n](const CVec& v, int off) {
    CMat A = CMat::Zero(n, n);
    for (size_t k = 0; k < prs.size(); ++k) {
      A(prs[k].first, prs[k].second) = v(off + k);
      A(prs[k].second, prs[k].first) = -v(off + k);
    }
    return A;
  };
  auto pack2 = [prs](const CMat& A, const CMat& B) {
    CVec v(2 * prs.size());
    for (size_t k = 0; k < prs.size(); ++k) {
      v(k) = A(prs[k].first, prs[k].second);
      v(prs.size() + k) = B(prs[k].first, prs[k].second);
    }
    return v;
  };
  CMat Jc = J.cast<cplx>(), Xc = chi.cast<cplx>();

  sys.f = [unpack, pack2, Jc, Xc, np](const CVec& z) {
    CMat M = unpack(z, 0), G = unpack(z, np);
    CMat Om = Jc * M + M * Jc;
    CMat Md = M * Om - Om * M + G * Xc - Xc * G;
    CMat Gd = G * Om - Om * G;
    return pack2(Md, Gd);
  };
  sys.df = [unpack, pack2, Jc, Xc, np](const CVec& z, const CVec& w) {
    CMat M = unpack(z, 0), G = unpack(z, np);
    CMat Mw = unpack(w, 0), Gw = unpack(w, np);
    CMat Om = Jc * M + M * Jc, Omw = Jc * Mw + Mw * Jc;
    CMat Md = Mw * Om - Om * Mw + M * Omw - Omw * M + Gw * Xc - Xc * Gw;
    CMat Gd = Gw * Om - Om * Gw + G * Omw - Omw * G;
    return pack2(Md, Gd);
  };
  sys.conormals = [unpack, prs, n, np](const CVec& z) {
    // first-structure Casimir gradients: the spectral-coefficient list d,e,i,j
    // for n = 4, the trace family tr(G^2k), tr(M G^{2k+1}) otherwise
    CMat M = unpack(z, 0), G = unpack(z, np);
    std::vector<CVec> out;
    if (n == 4) {
      // order (12,13,14,23,24,34); the dual-pair pattern of the Pfaffian
      const int dual[6] = {5, 4, 3, 2, 1, 0};
      const double sgn[6] = {1, -1, 1, 1, -1, 1};
      CVec gd = CVec::Zero(12), ge = CVec::Zero(12), gi = CVec::Zero(12),
           gj = CVec::Zero(12);
      for (int k = 0; k < 6; ++k) {
        auto [i, j] = prs[k];
        auto [di, dj] = prs[dual[k]];
        gd(k) = 2.0 * G(i, j);
        gd(6 + k) = 2.0 * M(i, j);
        ge(6 + k) = 2.0 * G(i, j);
        gi(k) = sgn[k] * G(di, dj);       // i = sum sgn_k M_k G_dual(k)
        gi(6 + k) = sgn[k] * M(di, dj);
        gj(6 + k) = sgn[k] * G(di, dj);   // j = Pf(Gamma)
      }
      out = {gd, ge, gi, gj};
      return out;
    }
    auto push_grad = [&](const std::function<cplx(const CMat&, const CMat&)>& fn) {
      CVec grad(2 * np);
      for (int k = 0; k < 2 * np; ++k) {
        CVec e = CVec::Zero(2 * np);
        e(k) = 1.0;
        CMat Em = unpack(e, 0), Eg = unpack(e, np);
        const double h = 1e-6;
        cplx fp = fn(M + h * Em, G + h * Eg);
        cplx fm = fn(M - h * Em, G - h * Eg);
        grad(k) = (fp - fm) / (2 * h);
      }
      return grad;
    };
    for (int k = 1; 2 * k <= n; ++k) {
      out.push_back(push_grad([k](const CMat&, const CMat& g) {
        CMat p = CMat::Identity(g.rows(), g.cols());
        for (int r = 0; r < 2 * k; ++r) p = p * g;
        return p.trace();
      }));
      out.push_back(push_grad([k](const CMat& m, const CMat& g) {
        CMat p = m;
        for (int r = 0; r < 2 * k + 1; ++r) p = p * g;
        return p.trace();
      }));
    }
    return out;
  };
  return sys;
}

QHCheck check_qh(const QHSystem& sys, int trials, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  QHCheck out;
  for (int t = 0; t < trials; ++t) {
    CVec z(sys.dim);
    for (int k = 0; k < sys.dim; ++k) z(k) = cplx(nd(rng), nd(rng));
    cplx a(0.6 + 0.1 * (t % 7), 0.3 + 0.05 * (t % 5));
    CVec zs(sys.dim);
    for (int k = 0; k < sys.dim; ++k) zs(k) = std::pow(a, sys.g(k)) * z(k);
    CVec lhs = sys.f(zs);
    CVec rhs = sys.f(z);
    double worst = 0;
    for (int k = 0; k < sys.dim; ++k) {
      cplx want = std::pow(a, sys.g(k) + 1) * rhs(k);
      worst = std::max(worst,
                       std::abs(lhs(k) - want) / std::max(1.0, std::abs(want)));
    }
    out.worst = std::max(out.worst, worst);
  }
  out.pass = out.worst < 1e-10;
  return out;
}

CMat kowalevski_matrix(const QHSystem& sys, const CVec& C) {
  CMat K(sys.dim, sys.dim);
  for (int j = 0; j < sys.dim; ++j) {
    CVec e = CVec::Zero(sys.dim);
    e(j) = 1.0;
    K.col(j) = sys.df(C, e);
  }
  for (int i = 0; i < sys.dim; ++i) K(i, i) += cplx(sys.g(i), 0);
  return K;
}

CVec exponents_of(const QHSystem& sys, const CVec& C) {
  Eigen::ComplexEigenSolver<CMat> es(kowalevski_matrix(sys, C), false);
  CVec ev = es.eigenvalues();
  sort_complex(ev);
  return ev;
}

namespace {

struct MaskView {
  std::vector<int> free;  // indices solved for
};

MaskView make_view(const BalanceMask& mask, int dim) {
  std::vector<bool> fixed(dim, false);
  for (int i : mask.zero) fixed[i] = true;
  for (auto& [i, v] : mask.pinned) fixed[i] = true;
  MaskView mv;
  for (int k = 0; k < dim; ++k)
    if (!fixed[k]) mv.free.push_back(k);
  return mv;
}

}  // namespace

std::vector<BalanceSolution> solve_balances(const QHSystem& sys,
                                            const BalanceMask& mask,
                                            const SolveOptions& opt) {
  const MaskView mv = make_view(mask, sys.dim);
  const int nf = static_cast<int>(mv.free.size());
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> nd(0.0, opt.scale);
  CVec gc(sys.dim);
  for (int k = 0; k < sys.dim; ++k) gc(k) = cplx(sys.g(k), 0);

  auto resid = [&](const CVec& z) -> CVec { return gc.cwiseProduct(z) + sys.f(z); };

  std::vector<BalanceSolution> found;
  auto try_start = [&](CVec z) {
    for (int it = 0; it < opt.max_iter; ++it) {
      CVec F = resid(z);
      double nrm = F.cwiseAbs().maxCoeff();
      if (nrm < opt.residual_tol) break;
      // Jacobian restricted to free coordinates
      CMat Jf(sys.dim, nf);
      for (int c = 0; c < nf; ++c) {
        CVec e = CVec::Zero(sys.dim);
        e(mv.free[c]) = 1.0;
        CVec col = sys.df(z, e);
        col(mv.free[c]) += gc(mv.free[c]);
        Jf.col(c) = col;
      }
      Eigen::JacobiSVD<CMat> svd(Jf, Eigen::ComputeThinU | Eigen::ComputeThinV);
      CVec dz = svd.solve(-F);
      double step = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 40; ++ls) {
        CVec z2 = z;
        for (int c = 0; c < nf; ++c) z2(mv.free[c]) += step * dz(c);
        if (resid(z2).cwiseAbs().maxCoeff() < nrm) {
          z = z2;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    CVec F = resid(z);
    double nrm = F.cwiseAbs().maxCoeff();
    if (nrm > opt.residual_tol) return;
    if (z.cwiseAbs().maxCoeff() < 1e-9) return;  // trivial solution
    double zscale = std::max(1.0, z.cwiseAbs().maxCoeff());
    for (const auto& s : found)
      if ((s.C - z).cwiseAbs().maxCoeff() < opt.dedup_tol * zscale) return;
    BalanceSolution sol;
    sol.C = z;
    sol.residual = nrm;
    sol.K = kowalevski_matrix(sys, z);
    Eigen::ComplexEigenSolver<CMat> es(sol.K, false);
    sol.exponents = es.eigenvalues();
    sort_complex(sol.exponents);
    Eigen::JacobiSVD<CMat> ksvd(sol.K);
    double smax = ksvd.singularValues()(0);
    sol.rank_deficiency = 0;
    for (int k = 0; k < ksvd.singularValues().size(); ++k)
      if (ksvd.singularValues()(k) < 1e-7 * std::max(1.0, smax)) sol.rank_deficiency++;
    found.push_back(std::move(sol));
  };

  for (const CVec& w : opt.warm_starts) {
    CVec z = CVec::Zero(sys.dim);
    for (size_t k = 0; k < mv.free.size(); ++k) z(mv.free[k]) = w(mv.free[k]);
    for (auto& [i, v] : mask.pinned) z(i) = v;
    try_start(z);
  }
  for (int s = 0; s < opt.starts; ++s) {
    CVec z = CVec::Zero(sys.dim);
    for (int k : mv.free) z(k) = cplx(nd(rng), nd(rng));
    for (auto& [i, v] : mask.pinned) z(i) = v;
    try_start(z);
  }
  return found;
}

bool is_rational(cplx x, int max_den, double tol) {
  if (std::abs(x.imag()) > tol) return false;
  for (int q = 1; q <= max_den; ++q) {
    double p = std::round(x.real() * q);
    if (std::abs(x.real() - p / q) < tol) return true;
  }
  return false;
}

AraReport ara_check(const QHSystem& sys, const BalanceSolution& sol,
                    const BalanceMask& mask, double tol) {
  AraReport rep;
  // conormal family: unit covectors of the invariant-relation coordinates
  // plus the first-structure Casimir gradients at the balance
  std::vector<CVec> con = sys.conormals ? sys.conormals(sol.C) : std::vector<CVec>{};
  for (int k : mask.zero) {
    CVec e = CVec::Zero(sys.dim);
    e(k) = 1.0;
    con.push_back(e);
  }
  if (con.empty()) throw ClassificationAmbiguous("no conormal data");
  CMat G(con.size(), sys.dim);
  for (size_t r = 0; r < con.size(); ++r) {
    double nrm = con[r].norm();
    G.row(r) = con[r].transpose() / std::max(nrm, 1e-30);
  }
  Eigen::JacobiSVD<CMat> gsvd(G);
  double gmax = gsvd.singularValues()(0);
  rep.p = 0;
  for (int k = 0; k < gsvd.singularValues().size(); ++k)
    if (gsvd.singularValues()(k) > 1e-6 * std::max(1.0, gmax)) rep.p++;

  Eigen::ComplexEigenSolver<CMat> es(sol.K, false);
  CVec ev = es.eigenvalues();

  // distinct eigenvalue groups
  std::vector<cplx> lams;
  std::vector<int> mult;
  std::vector<bool> used(ev.size(), false);
  for (int k = 0; k < ev.size(); ++k) {
    if (used[k]) continue;
    int m = 0;
    for (int j = 0; j < ev.size(); ++j)
      if (!used[j] && std::abs(ev(j) - ev(k)) < tol) {
        used[j] = true;
        ++m;
      }
    lams.push_back(ev(k));
    mult.push_back(m);
  }

  for (size_t gidx = 0; gidx < lams.size(); ++gidx) {
    // root subspace ker((K - lambda I)^m); the power can be defective, so the
    // null dimension is read from the singular-value gap
    const int m = mult[gidx];
    CMat B = sol.K - lams[gidx] * CMat::Identity(sys.dim, sys.dim);
    double bnorm = std::max(1.0, B.cwiseAbs().maxCoeff());
    CMat A = CMat::Identity(sys.dim, sys.dim);
    for (int r = 0; r < m; ++r) A = A * (B / bnorm);
    Eigen::JacobiSVD<CMat> asvd(A, Eigen::ComputeFullV);
    double amax = std::max(1e-300, asvd.singularValues()(0));
    int null_dim = 0;
    for (int s = 0; s < asvd.singularValues().size(); ++s)
      if (asvd.singularValues()(s) < 1e-6 * amax) null_dim++;
    if (null_dim != m)
      throw ClassificationAmbiguous("root-subspace dimension disagrees with the "
                                    "algebraic multiplicity");
    CMat V = asvd.matrixV().rightCols(null_dim);
    Eigen::JacobiSVD<CMat> pairsvd(G * V);
    int r = 0;
    for (int s = 0; s < pairsvd.singularValues().size(); ++s)
      if (pairsvd.singularValues()(s) > 1e-5) r++;
    rep.transversal += r;
    rep.tangent += null_dim - r;
    for (int c = 0; c < r; ++c) rep.transversal_exponents.push_back(lams[gidx]);
    for (int c = 0; c < null_dim - r; ++c)
      rep.tangential_exponents.push_back(lams[gidx]);
  }

  rep.transversal_rational =
      std::all_of(rep.transversal_exponents.begin(), rep.transversal_exponents.end(),
                  [](cplx e) { return is_rational(e); });
  int rat = 0;
  std::vector<cplx> irr;
  for (cplx e : rep.tangential_exponents) {
    if (is_rational(e))
      ++rat;
    else
      irr.push_back(e);
  }
  rep.tangential_half_rational = 2 * rat >= static_cast<int>(rep.tangential_exponents.size());
  // pair irrational tangential exponents with integer differences
  std::vector<bool> paired(irr.size(), false);
  bool ok = true;
  for (size_t i = 0; i < irr.size(); ++i) {
    if (paired[i]) continue;
    bool hit = false;
    for (size_t j = i + 1; j < irr.size(); ++j) {
      if (paired[j]) continue;
      cplx d = irr[i] - irr[j];
      if (std::abs(d.imag()) < 1e-7 &&
          std::abs(d.real() - std::round(d.real())) < 1e-7) {
        paired[i] = paired[j] = true;
        hit = true;
        break;
      }
    }
    if (!hit) ok = false;
  }
  rep.irrational_pairs_integer_diff = ok;
  rep.pass = rep.transversal_rational && rep.tangential_half_rational &&
             rep.irrational_pairs_integer_diff && rep.transversal == rep.p;
  return rep;
}

// ---------------- germ analysis ----------------

namespace {

struct Branch {
  int eps;     // c1 = eps * i * c2
  int kappa;   // |J f| = kappa
};

Branch branch_data(int branch) {
  switch (branch) {
    case 1: return {+1, 2};
    case 2: return {-1, 2};
    case 3: return {+1, 1};
    case 4: return {-1, 1};
  }
  throw std::invalid_argument("branch must be 1..4");
}

}  // namespace

GermData germ_of(const std::array<cplx, 6>& beta, int branch, double J) {
  Branch br = branch_data(branch);
  const cplx I(0, 1);
  cplx fval = -cplx(br.eps, 0) * I * cplx(br.kappa, 0) / J;
  cplx denom = cplx(br.eps, 0) * I * beta[0] + beta[1];
  if (std::abs(denom) < 1e-12)
    throw BranchInconsistent("germ: eps*i*b1 + b2 vanishes; no consistent germ");
  GermData g;
  g.branch = branch;
  g.f = fval;
  g.fi = beta;
  g.c2hat = fval / denom;
  g.X = J * g.c2hat * beta[1];
  g.Y = J * g.c2hat * beta[0];
  return g;
}

std::array<cplx, 7> germ_charpoly(const GermData& germ) {
  Branch br = branch_data(germ.branch);
  const cplx I(0, 1);
  const cplx X = germ.X, Y = germ.Y;
  const double sigma = (br.kappa == 2) ? -1.0 : 1.0;
  cplx q = sigma * 2.0 * Y * (X * X + Y + 1.0) - 2.0 * I * X * Y * Y;
  // (w+1)(w-1)(w-2)(w-3) = w^4 - 5 w^3 + 5 w^2 + 5 w - 6
  const std::array<cplx, 5> quart = {1.0, -5.0, 5.0, 5.0, -6.0};
  const std::array<cplx, 3> quad = {1.0, -(2.0 * Y + 4.0), q};
  std::array<cplx, 7> out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) out[i + j] += quart[i] * quad[j];
  return out;
}

std::array<cplx, 7> germ_charpolys(double J, const GermData& germ, int branch) {
  if (germ.branch != branch)
    throw BranchInconsistent("germ data does not belong to the requested branch");
  (void)J;  // the polynomial is J-free once the germ is consistent
  return germ_charpoly(germ);
}

namespace {

bool near_integer(cplx v, double tol = 1e-8) {
  return std::abs(v.imag()) < tol &&
         std::abs(v.real() - std::round(v.real())) < tol;
}

std::vector<cplx> poly6_roots(const std::array<cplx, 7>& c) {
  CMat comp = CMat::Zero(6, 6);
  for (int k = 0; k < 6; ++k) comp(0, k) = -c[k + 1] / c[0];
  for (int k = 1; k < 6; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  return {es.eigenvalues().data(), es.eigenvalues().data() + 6};
}

cplx poly6_eval(const std::array<cplx, 7>& c, cplx w) {
  cplx v = 0;
  for (cplx ck : c) v = v * w + ck;
  return v;
}

}  // namespace

ClassificationVerdict classification_filter(const std::array<cplx, 6>& beta, double J) {
  ClassificationVerdict v;
  if (std::abs(beta[0]) < 1e-12 && std::abs(beta[1]) < 1e-12) {
    // pure k*z3 (or zero): a Lagrange top with shifted inertia; no z1/z2 germ
    bool gamma_free = std::abs(beta[3]) < 1e-12 && std::abs(beta[4]) < 1e-12 &&
                      std::abs(beta[5]) < 1e-12;
    v.classical_equivalent = gamma_free;
    v.qh_ok = gamma_free;
    v.pass = gamma_free;
    v.detail = gamma_free ? "no z1/z2 part: classical-equivalent (shifted Lagrange top)"
                          : "Gamma-dependent b breaks quasi-homogeneity";
    return v;
  }

  QHSystem sys = qh_field_3d(beta, J);
  QHCheck qc = check_qh(sys);
  v.qh_ok = qc.pass;
  if (!qc.pass) {
    v.pass = false;
    v.detail = "induced field is not quasi-homogeneous (worst residual " +
               std::to_string(qc.worst) + ")";
    return v;
  }

  bool all_ok = true;
  for (int br = 1; br <= 4; ++br) {
    GermData g = germ_of(beta, br, J);
    auto pch = germ_charpoly(g);
    v.pch[br - 1] = pch;
    bool ok = true;
    // integer coefficients are recorded but not gating: some counterexamples
    // keep all roots rational while losing integrality on one branch
    bool integer_coeffs = true;
    for (cplx c : pch) integer_coeffs &= near_integer(c);
    v.integer_coefficients[br - 1] = integer_coeffs;
    // J-independence of the coefficients
    for (double Jalt : {2.0 * J, 7.0 * J}) {
      auto alt = germ_charpoly(germ_of(beta, br, Jalt));
      for (int k = 0; k < 7; ++k) ok &= std::abs(alt[k] - pch[k]) < 1e-8;
    }
    // root at -1
    ok &= std::abs(poly6_eval(pch, cplx(-1, 0))) < 1e-9;
    // arithmetic conditions on the roots
    auto roots = poly6_roots(pch);
    std::vector<cplx> irr;
    for (cplx r : roots)
      if (!is_rational(r)) irr.push_back(r);
    if (2 * irr.size() > roots.size()) ok = false;
    std::vector<bool> paired(irr.size(), false);
    for (size_t i = 0; i < irr.size(); ++i) {
      if (paired[i]) continue;
      bool hit = false;
      for (size_t j = i + 1; j < irr.size(); ++j) {
        cplx d = irr[i] - irr[j];
        if (!paired[j] && std::abs(d.imag()) < 1e-7 &&
            std::abs(d.real() - std::round(d.real())) < 1e-7) {
          paired[i] = paired[j] = true;
          hit = true;
          break;
        }
      }
      if (!hit) ok = false;
    }
    if (!ok) {
      all_ok = false;
      v.failing_branches.push_back(br);
    }
  }
  v.pass = all_ok;
  if (!all_ok) {
    v.detail = "failing branches:";
    for (int b : v.failing_branches) v.detail += " " + std::to_string(b);
  }
  return v;
}

std::array<cplx, 6> parse_linear_b(const std::string& expr) {
  std::array<cplx, 6> beta{};
  std::string s;
  for (char c : expr)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+') ++pos;
    else if (s[pos] == '-') { sign = -1; ++pos; }
    size_t next = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
    pos = next == std::string::npos ? s.size() : next;
    size_t zp = term.find('z');
    if (zp == std::string::npos)
      throw std::invalid_argument("term without z variable: " + term);
    int idx = std::stoi(term.substr(zp + 1)) - 1;
    if (idx < 0 || idx > 5) throw std::invalid_argument("z index out of range");
    std::string coefs = term.substr(0, zp);
    if (!coefs.empty() && coefs.back() == '*') coefs.pop_back();
    cplx coef(1, 0);
    if (!coefs.empty()) {
      bool imag = coefs.back() == 'i' || coefs.back() == 'I';
      if (imag) coefs.pop_back();
      double mag = coefs.empty() ? 1.0 : std::stod(coefs);
      coef = imag ? cplx(0, mag) : cplx(mag, 0);
    }
    beta[idx] += double(sign) * coef;
  }
  return beta;
}

}  // namespace hesslab
