#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conicscope {

// Exact rationals; expression templates off so the type composes with Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using MatrixXq = Matrix<Rational>;
using VectorXq = Vector<Rational>;

/// Scale-relative default tolerance used by every numerical routine.
inline constexpr double kDefaultTol = 1e-8;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

/// Dense real symmetric matrix. Only the upper triangle is ever read on
/// construction, so symmetry holds by construction.
template <typename Scalar>
class SymMat {
 public:
  SymMat() = default;
  explicit SymMat(Index dim) : m_(Matrix<Scalar>::Zero(dim, dim)) {
    if (dim < 1) throw DimensionError("SymMat dimension must be positive");
  }

  /// Builds from the upper triangle of `m`; the lower triangle is ignored.
  static SymMat fromUpper(const Matrix<Scalar>& m) {
    if (m.rows() != m.cols()) throw DimensionError("SymMat needs a square matrix");
    SymMat s(m.rows());
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i <= j; ++i) s.m_(i, j) = s.m_(j, i) = m(i, j);
    return s;
  }

  /// Builds from a full matrix that must already be symmetric.
  static SymMat fromFull(const Matrix<Scalar>& m) {
    if (m.rows() != m.cols()) throw DimensionError("SymMat needs a square matrix");
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < j; ++i)
        if constexpr (is_exact_v<Scalar>) {
          if (m(i, j) != m(j, i)) throw std::invalid_argument("matrix is not symmetric");
        }
    if constexpr (!is_exact_v<Scalar>) return fromUpper((m + m.transpose()) / Scalar(2));
    return fromUpper(m);
  }

  static SymMat zero(Index dim) { return SymMat(dim); }
  static SymMat identity(Index dim) {
    SymMat s(dim);
    s.m_.setIdentity();
    return s;
  }
  /// E_ii for i == j, E_ij + E_ji otherwise (0-based indices).
  static SymMat unit(Index dim, Index i, Index j) {
    SymMat s(dim);
    s.set(i, j, Scalar(1));
    return s;
  }
  static SymMat diagonal(const Vector<Scalar>& d) {
    SymMat s(d.size());
    s.m_.diagonal() = d;
    return s;
  }

  Index dim() const { return m_.rows(); }
  const Scalar& operator()(Index i, Index j) const { return m_(i, j); }
  void set(Index i, Index j, const Scalar& v) { m_(i, j) = m_(j, i) = v; }
  const Matrix<Scalar>& matrix() const { return m_; }

  template <typename Other>
  SymMat<Other> cast() const {
    return SymMat<Other>::fromUpper(m_.template cast<Other>());
  }

  SymMat& operator+=(const SymMat& o) {
    requireSameDim(o);
    m_ += o.m_;
    return *this;
  }
  SymMat& operator-=(const SymMat& o) {
    requireSameDim(o);
    m_ -= o.m_;
    return *this;
  }
  SymMat& operator*=(const Scalar& s) {
    m_ *= s;
    return *this;
  }
  friend SymMat operator+(SymMat a, const SymMat& b) { return a += b; }
  friend SymMat operator-(SymMat a, const SymMat& b) { return a -= b; }
  friend SymMat operator-(SymMat a) { return a *= Scalar(-1); }
  friend SymMat operator*(const Scalar& s, SymMat a) { return a *= s; }
  friend SymMat operator*(SymMat a, const Scalar& s) { return a *= s; }
  friend bool operator==(const SymMat& a, const SymMat& b) {
    return a.dim() == b.dim() && a.m_ == b.m_;
  }

  /// Congruence Qᵀ A Q.
  template <typename Derived>
  SymMat congruence(const Eigen::MatrixBase<Derived>& q) const {
    return SymMat::fromFull(q.transpose() * m_ * q);
  }

 private:
  void requireSameDim(const SymMat& o) const {
    if (o.dim() != dim()) throw DimensionError("SymMat dimension mismatch");
  }
  Matrix<Scalar> m_;
};

using SymMatd = SymMat<double>;
using SymMatq = SymMat<Rational>;

/// Trace inner product ⟨A,B⟩ = Σ a_ij b_ij.
template <typename Scalar>
Scalar inner(const SymMat<Scalar>& a, const SymMat<Scalar>& b) {
  if (a.dim() != b.dim()) throw DimensionError("inner: dimension mismatch");
  return a.matrix().cwiseProduct(b.matrix()).sum();
}

template <typename Scalar>
Scalar frobenius_sq(const SymMat<Scalar>& a) {
  return inner(a, a);
}

inline Index svec_size(Index d) { return d * (d + 1) / 2; }

/// Upper triangle in row-major order: (1,1),(1,2),…,(1,d),(2,2),…
template <typename Scalar>
Vector<Scalar> svec(const SymMat<Scalar>& a) {
  const Index d = a.dim();
  Vector<Scalar> v(svec_size(d));
  Index k = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) v(k++) = a(i, j);
  return v;
}

template <typename Scalar>
SymMat<Scalar> smat(const Vector<Scalar>& v, Index d) {
  if (v.size() != svec_size(d)) throw DimensionError("smat: length mismatch");
  SymMat<Scalar> a(d);
  Index k = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) a.set(i, j, v(k++));
  return a;
}

/// Weights making ⟨A,B⟩ = Σ_k w_k svec(A)_k svec(B)_k (1 on diagonal, 2 off).
template <typename Scalar>
Vector<Scalar> svec_weights(Index d) {
  Vector<Scalar> w(svec_size(d));
  Index k = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) w(k++) = Scalar(i == j ? 1 : 2);
  return w;
}

/// Isometric vectorization: off-diagonal entries scaled by √2.
VectorXd svec_iso(const SymMatd& a);
SymMatd smat_iso(const VectorXd& v, Index d);

template <typename Scalar>
SymMat<Scalar> block_diag(std::span<const SymMat<Scalar>> blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_diag: empty block list");
  Index total = 0;
  for (const auto& b : blocks) total += b.dim();
  Matrix<Scalar> m = Matrix<Scalar>::Zero(total, total);
  Index off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.dim(), b.dim()) = b.matrix();
    off += b.dim();
  }
  return SymMat<Scalar>::fromUpper(m);
}

template <typename Scalar>
SymMat<Scalar> block_diag(const std::vector<SymMat<Scalar>>& blocks) {
  return block_diag(std::span<const SymMat<Scalar>>(blocks));
}

struct Spectrum {
  VectorXd eigenvalues;  // ascending
  MatrixXd eigenvectors;  // column i pairs with eigenvalue i
};

/// Symmetric eigendecomposition (tridiagonalization + implicit QR).
Spectrum eig_sym(const SymMatd& a);

struct PsdCheck {
  bool psd;
  double min_eig;
};

/// PSD iff λmin ≥ −tol.
PsdCheck psd_check(const SymMatd& a, double tol);

struct ExactPsdCheck {
  bool psd;
  VectorXq witness;  // vᵀAv < 0 when !psd; empty otherwise
};

/// Exact decision via diagonally pivoted LDLᵀ over the rationals.
ExactPsdCheck psd_check_exact(const SymMatq& a);

/// Rational overload of psd_check; the tolerance is ignored.
PsdCheck psd_check(const SymMatq& a, double tol);

/// Orthonormal basis (columns) of eigenvectors with |λ| ≤ tol·max(1, ‖a‖₂).
MatrixXd kernel_basis(const SymMatd& a, double tol);

double spectral_norm(const SymMatd& a);

}  // namespace conicscope
