#include "hesslab/skew.hpp"

namespace hesslab {

Sym Sym::from_matrix(const Mat& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("sym: non-square");
  double dev = (a - a.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (dev > tol * scale) throw std::invalid_argument("sym: matrix is not symmetric");
  Sym s(static_cast<int>(a.rows()));
  s.m_ = 0.5 * (a + a.transpose().eval());
  return s;
}

Sym Sym::diagonal(const Vec& d) {
  Sym s(static_cast<int>(d.size()));
  s.m_ = d.asDiagonal();
  return s;
}

SkewR hat(const Vec3& v) {
  SkewR s(3);
  s.set(0, 1, -v(2));
  s.set(0, 2, v(1));
  s.set(1, 2, -v(0));
  return s;
}

Vec3 unhat(const SkewR& m) {
  if (m.n() != 3) throw DimensionMismatch("unhat: n must be 3");
  return Vec3(-m(1, 2), m(0, 2), -m(0, 1));
}

// (M+, M-) -> [[0, -M+3, M+2, -M-1], [M+3, 0, -M+1, -M-2], [-M+2, M+1, 0, -M-3], ...]
Vec3Pair split_so4(const SkewR& m) {
  if (m.n() != 4) throw DimensionMismatch("split_so4: n must be 4");
  Vec3Pair p;
  p.plus = Vec3(-m(1, 2), m(0, 2), -m(0, 1));
  p.minus = Vec3(-m(0, 3), -m(1, 3), -m(2, 3));
  return p;
}

SkewR join_so4(const Vec3Pair& p) {
  SkewR m(4);
  m.set(0, 1, -p.plus(2));
  m.set(0, 2, p.plus(1));
  m.set(1, 2, -p.plus(0));
  m.set(0, 3, -p.minus(0));
  m.set(1, 3, -p.minus(1));
  m.set(2, 3, -p.minus(2));
  return m;
}

}  // namespace hesslab
