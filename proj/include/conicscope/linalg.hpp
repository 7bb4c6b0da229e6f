#pragma once

// Row reduction shared by the exact (rational) and floating-point paths.
// Rational inputs are reduced exactly; doubles use partial pivoting with a
// relative pivot tolerance.

#include "conicscope/symmat.hpp"

#include <optional>

namespace conicscope {

template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;     // reduced row echelon form (augmented if a rhs was given)
  std::vector<Index> pivots;  // pivot column of each nonzero row
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Reduced row echelon form of the first `ncols` columns of `m` (the rest of
/// the columns are carried along as right-hand sides).
template <typename Scalar>
RowEchelon<Scalar> rref(Matrix<Scalar> m, Index ncols, double tol = kDefaultTol) {
  RowEchelon<Scalar> out;
  const Index rows = m.rows();
  double scale = 1.0;
  if constexpr (!is_exact_v<Scalar>) scale = std::max(1.0, m.leftCols(ncols).cwiseAbs().maxCoeff());
  Index r = 0;
  for (Index c = 0; c < ncols && r < rows; ++c) {
    Index piv = -1;
    if constexpr (is_exact_v<Scalar>) {
      for (Index i = r; i < rows; ++i)
        if (m(i, c) != 0) {
          piv = i;
          break;
        }
    } else {
      double best = tol * scale;
      for (Index i = r; i < rows; ++i)
        if (std::abs(m(i, c)) > best) {
          best = std::abs(m(i, c));
          piv = i;
        }
    }
    if (piv < 0) {
      if constexpr (!is_exact_v<Scalar>)
        for (Index i = r; i < rows; ++i) m(i, c) = 0;
      continue;
    }
    m.row(r).swap(m.row(piv));
    const Scalar p = m(r, c);
    m.row(r) /= p;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      m.row(i) -= f * m.row(r);
      m(i, c) = Scalar(0);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
Index rank_of(const Matrix<Scalar>& m, double tol = kDefaultTol) {
  return rref<Scalar>(m, m.cols(), tol).rank();
}

/// Basis of {x : m x = 0}, one column per free variable (unit in that
/// variable). Exact for rationals.
template <typename Scalar>
Matrix<Scalar> nullspace_basis(const Matrix<Scalar>& m, double tol = kDefaultTol) {
  const Index n = m.cols();
  const auto e = rref<Scalar>(m, n, tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index p : e.pivots) is_pivot[p] = true;
  Matrix<Scalar> basis = Matrix<Scalar>::Zero(n, n - e.rank());
  Index col = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, col) = Scalar(1);
    for (Index r = 0; r < e.rank(); ++r) basis(e.pivots[r], col) = -e.reduced(r, f);
    ++col;
  }
  return basis;
}

/// A particular solution of m x = b with free variables set to zero, or
/// nullopt when the system is inconsistent.
template <typename Scalar>
std::optional<Vector<Scalar>> particular_solution(const Matrix<Scalar>& m, const Vector<Scalar>& b,
                                                  double tol = kDefaultTol) {
  const Index n = m.cols();
  Matrix<Scalar> aug(m.rows(), n + 1);
  aug << m, b;
  const auto e = rref<Scalar>(aug, n, tol);
  for (Index i = e.rank(); i < aug.rows(); ++i) {
    if constexpr (is_exact_v<Scalar>) {
      if (e.reduced(i, n) != 0) return std::nullopt;
    } else {
      if (std::abs(e.reduced(i, n)) > tol * (1.0 + b.cwiseAbs().maxCoeff())) return std::nullopt;
    }
  }
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  for (Index r = 0; r < e.rank(); ++r) x(e.pivots[r]) = e.reduced(r, n);
  return x;
}

}  // namespace conicscope
