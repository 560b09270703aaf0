#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <type_traits>

namespace hesslab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;
using cplx = std::complex<double>;

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Element of so(n), 3 <= n <= 8. Entries are kept exactly antisymmetric:
/// assignment goes through set(), which writes both (i,j) and (j,i).
template <typename Scalar>
class SkewT {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  SkewT() : m_(Matrix::Zero(3, 3)) {}
  explicit SkewT(int n) : m_(Matrix::Zero(n, n)) { check_dim(n); }

  /// Builds from a full matrix; rejects anything not exactly skew
  /// (up to tol, then symmetrizes so the invariant is exact).
  static SkewT from_matrix(const Matrix& a, double tol = 1e-12) {
    if (a.rows() != a.cols()) throw DimensionMismatch("skew: non-square");
    check_dim(static_cast<int>(a.rows()));
    double dev = (a + a.transpose()).cwiseAbs().maxCoeff();
    double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if (dev > tol * scale)
      throw std::invalid_argument("skew: matrix is not antisymmetric");
    SkewT s(static_cast<int>(a.rows()));
    s.m_ = 0.5 * (a - a.transpose().eval());
    return s;
  }

  static SkewT zero(int n) { return SkewT(n); }

  int n() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }

  Scalar operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, Scalar v) {
    m_(i, j) = v;
    m_(j, i) = -v;
    if (i == j) m_(i, i) = Scalar(0);
  }

  SkewT operator+(const SkewT& o) const { return wrap(m_ + o.m_); }
  SkewT operator-(const SkewT& o) const { return wrap(m_ - o.m_); }
  SkewT operator*(Scalar c) const { return wrap(m_ * c); }

  /// Upper-triangle entries in lexicographic (i<j) order.
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> upper() const {
    const int N = n();
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(N * (N - 1) / 2);
    int k = 0;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) v(k++) = m_(i, j);
    return v;
  }

  static SkewT from_upper(int n, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
    SkewT s(n);
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s.set(i, j, v(k++));
    return s;
  }

 private:
  static void check_dim(int n) {
    if (n < 3 || n > 8) throw DimensionMismatch("skew: dimension out of [3,8]");
  }
  static SkewT wrap(Matrix m) {
    SkewT s;
    s.m_ = std::move(m);
    return s;
  }
  Matrix m_;
};

using SkewR = SkewT<double>;
using SkewC = SkewT<cplx>;

/// Symmetric matrix with the mirror invariant enforced the same way.
class Sym {
 public:
  Sym() : m_(Mat::Zero(3, 3)) {}
  explicit Sym(int n) : m_(Mat::Zero(n, n)) {}
  static Sym from_matrix(const Mat& a, double tol = 1e-12);
  static Sym diagonal(const Vec& d);

  int n() const { return static_cast<int>(m_.rows()); }
  const Mat& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) { m_(i, j) = m_(j, i) = v; }

 private:
  Mat m_;
};

struct Vec3Pair {
  Vec3 plus;
  Vec3 minus;
};

template <typename S>
SkewT<S> commutator(const SkewT<S>& a, const SkewT<S>& b) {
  if (a.n() != b.n()) throw DimensionMismatch("commutator: dimension mismatch");
  return SkewT<S>::from_matrix(a.mat() * b.mat() - b.mat() * a.mat());
}

/// hat(v) x = v cross x
SkewR hat(const Vec3& v);
Vec3 unhat(const SkewR& m);

/// so(4) <-> R^3 x R^3 correspondence of the two so(3) factors.
Vec3Pair split_so4(const SkewR& m);
SkewR join_so4(const Vec3Pair& p);

/// Omega = J M + M J
template <typename S>
SkewT<S> inertia_map(const Sym& J, const SkewT<S>& m) {
  if (J.n() != m.n()) throw DimensionMismatch("inertia_map: dimension mismatch");
  typename SkewT<S>::Matrix Jm = J.mat().template cast<S>();
  return SkewT<S>::from_matrix(Jm * m.mat() + m.mat() * Jm);
}

/// <a,b> = sum_{i<j} a_ij b_ij = -1/2 tr(ab); equals the R^3 dot product for hats.
template <typename S>
S pair_inner(const SkewT<S>& a, const SkewT<S>& b) {
  return S(-0.5) * (a.mat() * b.mat()).trace();
}

}  // namespace hesslab
