#pragma once

// Problem representations: the parametric pencil A0 + Σ x_i A_i, the implicit
// form {X : ⟨M_i, X⟩ = b_i}, and projections of spectrahedra.

#include "conicscope/linalg.hpp"
#include "conicscope/symmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conicscope {

class DependentGeneratorsError : public std::invalid_argument {
 public:
  /// `index` is 1-based: the first generator that is a combination of the
  /// earlier ones.
  explicit DependentGeneratorsError(Index index, const std::string& what_kind = "generators")
      : std::invalid_argument("dependent " + what_kind + " at index " + std::to_string(index)),
        index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

class EmptyAffineSpaceError : public std::invalid_argument {
 public:
  EmptyAffineSpaceError() : std::invalid_argument("empty affine space: constraints are inconsistent") {}
};

class ImproperPencilError : public std::invalid_argument {
 public:
  ImproperPencilError()
      : std::invalid_argument("improper pencil: A0 lies in the span of the generators (0 is in L)") {}
};

namespace detail {

/// Rows are svec(A_i); returns the 1-based index of the first row dependent
/// on its predecessors, or 0.
template <typename Scalar>
Index first_dependent_row(const Matrix<Scalar>& rows, double tol) {
  for (Index i = 0; i < rows.rows(); ++i)
    if (rank_of<Scalar>(rows.topRows(i + 1).transpose(), tol) < i + 1) return i + 1;
  return 0;
}

template <typename Scalar>
Matrix<Scalar> svec_rows(const std::vector<SymMat<Scalar>>& ms, Index d) {
  Matrix<Scalar> rows(static_cast<Index>(ms.size()), svec_size(d));
  for (std::size_t i = 0; i < ms.size(); ++i) rows.row(static_cast<Index>(i)) = svec(ms[i]).transpose();
  return rows;
}

}  // namespace detail

/// Affine space L = A0 + span(A1..An) of Sym^d.
template <typename Scalar>
class Pencil {
 public:
  Pencil() = default;
  Pencil(SymMat<Scalar> a0, std::vector<SymMat<Scalar>> generators, double tol = kDefaultTol)
      : a0_(std::move(a0)), gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (g.dim() != a0_.dim()) throw DimensionError("pencil: generator dimension mismatch");
    const Matrix<Scalar> rows = detail::svec_rows(gens_, dim());
    if (const Index bad = detail::first_dependent_row<Scalar>(rows, tol)) throw DependentGeneratorsError(bad);
    Matrix<Scalar> with_a0(rows.rows() + 1, rows.cols());
    with_a0 << rows, svec(a0_).transpose();
    proper_ = rank_of<Scalar>(with_a0.transpose(), tol) == num_vars() + 1;
  }

  Index dim() const { return a0_.dim(); }
  Index num_vars() const { return static_cast<Index>(gens_.size()); }
  const SymMat<Scalar>& constant() const { return a0_; }
  const std::vector<SymMat<Scalar>>& generators() const { return gens_; }
  const SymMat<Scalar>& generator(Index i) const { return gens_.at(static_cast<std::size_t>(i)); }
  /// 0 ∉ L, i.e. A0 is not in the span of the generators.
  bool proper() const { return proper_; }

  SymMat<Scalar> evaluate(const Vector<Scalar>& x) const {
    if (x.size() != num_vars()) throw DimensionError("pencil evaluate: wrong number of variables");
    SymMat<Scalar> out = a0_;
    for (Index i = 0; i < num_vars(); ++i) out += x(i) * gens_[static_cast<std::size_t>(i)];
    return out;
  }

  /// Homogeneous evaluation x0·A0 + Σ x_i A_i.
  SymMat<Scalar> evaluate_homogeneous(const Scalar& x0, const Vector<Scalar>& x) const {
    return evaluate(x) + (x0 - Scalar(1)) * a0_;
  }

  template <typename Other>
  Pencil<Other> cast() const {
    std::vector<SymMat<Other>> g;
    g.reserve(gens_.size());
    for (const auto& m : gens_) g.push_back(m.template cast<Other>());
    return Pencil<Other>(a0_.template cast<Other>(), std::move(g));
  }

  friend bool operator==(const Pencil& a, const Pencil& b) { return a.a0_ == b.a0_ && a.gens_ == b.gens_; }

 private:
  SymMat<Scalar> a0_;
  std::vector<SymMat<Scalar>> gens_;
  bool proper_ = false;
};

using Pencild = Pencil<double>;
using Pencilq = Pencil<Rational>;

template <typename Scalar>
struct LinearConstraint {
  SymMat<Scalar> m;
  Scalar b;
};

/// Implicit form {X ∈ Sym^d : ⟨M_i, X⟩ = b_i}; the objective is carried but
/// plays no role in classification.
template <typename Scalar>
class ImplicitSdp {
 public:
  ImplicitSdp() = default;
  ImplicitSdp(Index dim, std::vector<LinearConstraint<Scalar>> constraints,
              std::optional<SymMat<Scalar>> objective = std::nullopt, double tol = kDefaultTol)
      : dim_(dim), cons_(std::move(constraints)), objective_(std::move(objective)) {
    if (dim < 1) throw DimensionError("implicit SDP: dimension must be positive");
    std::vector<SymMat<Scalar>> ms;
    for (const auto& c : cons_) {
      if (c.m.dim() != dim) throw DimensionError("implicit SDP: constraint dimension mismatch");
      ms.push_back(c.m);
    }
    if (const Index bad = detail::first_dependent_row<Scalar>(detail::svec_rows(ms, dim), tol))
      throw DependentGeneratorsError(bad, "constraints");
  }

  Index dim() const { return dim_; }
  const std::vector<LinearConstraint<Scalar>>& constraints() const { return cons_; }
  const std::optional<SymMat<Scalar>>& objective() const { return objective_; }
  /// 0 is not a solution.
  bool proper() const {
    for (const auto& c : cons_)
      if (c.b != Scalar(0)) return true;
    return false;
  }

 private:
  Index dim_ = 0;
  std::vector<LinearConstraint<Scalar>> cons_;
  std::optional<SymMat<Scalar>> objective_;
};

/// {x ∈ R^n | ∃ z ∈ R^m : A + Σ x_i B_i + Σ z_j C_j ⪰ 0}.
template <typename Scalar>
class ProjSpecRep {
 public:
  ProjSpecRep() = default;
  ProjSpecRep(SymMat<Scalar> a, std::vector<SymMat<Scalar>> b, std::vector<SymMat<Scalar>> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    for (const auto& m : b_)
      if (m.dim() != a_.dim()) throw DimensionError("projected spectrahedron: B dimension mismatch");
    for (const auto& m : c_)
      if (m.dim() != a_.dim()) throw DimensionError("projected spectrahedron: C dimension mismatch");
  }

  Index size() const { return a_.dim(); }
  Index num_x() const { return static_cast<Index>(b_.size()); }
  Index num_z() const { return static_cast<Index>(c_.size()); }
  const SymMat<Scalar>& a() const { return a_; }
  const std::vector<SymMat<Scalar>>& b() const { return b_; }
  const std::vector<SymMat<Scalar>>& c() const { return c_; }

  /// A + Σ x_i B_i.
  SymMat<Scalar> offset_at(const Vector<Scalar>& x) const {
    if (x.size() != num_x()) throw DimensionError("projected spectrahedron: point dimension mismatch");
    SymMat<Scalar> out = a_;
    for (Index i = 0; i < num_x(); ++i) out += x(i) * b_[static_cast<std::size_t>(i)];
    return out;
  }

 private:
  SymMat<Scalar> a_;
  std::vector<SymMat<Scalar>> b_;
  std::vector<SymMat<Scalar>> c_;
};

/// Rows w_k·svec(M_i) of the linear map X ↦ (⟨M_i, X⟩)_i in svec coordinates.
template <typename Scalar>
Matrix<Scalar> constraint_map(const std::vector<SymMat<Scalar>>& ms, Index d) {
  const Vector<Scalar> w = svec_weights<Scalar>(d);
  Matrix<Scalar> rows = detail::svec_rows(ms, d);
  for (Index i = 0; i < rows.rows(); ++i) rows.row(i) = rows.row(i).cwiseProduct(w.transpose());
  return rows;
}

/// Solves the constraint system: A0 is a particular solution and the
/// generators span its null space. Throws EmptyAffineSpaceError if the
/// system is inconsistent.
template <typename Scalar>
Pencil<Scalar> implicit_to_parametric(const ImplicitSdp<Scalar>& p, double tol = kDefaultTol) {
  const Index d = p.dim();
  std::vector<SymMat<Scalar>> ms;
  Vector<Scalar> b(static_cast<Index>(p.constraints().size()));
  for (std::size_t i = 0; i < p.constraints().size(); ++i) {
    ms.push_back(p.constraints()[i].m);
    b(static_cast<Index>(i)) = p.constraints()[i].b;
  }
  const Matrix<Scalar> map = ms.empty() ? Matrix<Scalar>(0, svec_size(d)) : constraint_map(ms, d);
  const auto x0 = particular_solution<Scalar>(map, b, tol);
  if (!x0) throw EmptyAffineSpaceError();
  const Matrix<Scalar> null = nullspace_basis<Scalar>(map, tol);
  std::vector<SymMat<Scalar>> gens;
  for (Index j = 0; j < null.cols(); ++j) gens.push_back(smat<Scalar>(null.col(j), d));
  return Pencil<Scalar>(smat<Scalar>(*x0, d), std::move(gens), tol);
}

/// Constraints M_j spanning span(A_i)^⊥ with b_j = ⟨M_j, A0⟩. An improper
/// pencil whose generators fill Sym^d yields an empty constraint list.
template <typename Scalar>
ImplicitSdp<Scalar> parametric_to_implicit(const Pencil<Scalar>& p, double tol = kDefaultTol) {
  const Index d = p.dim();
  const Matrix<Scalar> map = p.num_vars() == 0 ? Matrix<Scalar>(0, svec_size(d)) : constraint_map(p.generators(), d);
  const Matrix<Scalar> null = nullspace_basis<Scalar>(map, tol);
  std::vector<LinearConstraint<Scalar>> cons;
  for (Index j = 0; j < null.cols(); ++j) {
    SymMat<Scalar> m = smat<Scalar>(null.col(j), d);
    Scalar b = inner(m, p.constant());
    cons.push_back({std::move(m), std::move(b)});
  }
  return ImplicitSdp<Scalar>(d, std::move(cons), std::nullopt, tol);
}

/// Mutual containment of affine spans: same dimension and each generator /
/// offset of `a` satisfies the implicit equations of `b`.
template <typename Scalar>
bool same_affine_space(const Pencil<Scalar>& a, const Pencil<Scalar>& b, double tol = kDefaultTol) {
  if (a.dim() != b.dim() || a.num_vars() != b.num_vars()) return false;
  auto inside = [&](const Pencil<Scalar>& x, const Pencil<Scalar>& y) {
    const auto imp = parametric_to_implicit(y, tol);
    for (const auto& c : imp.constraints()) {
      const Scalar scale = Scalar(1) + abs_value(c.b);
      for (const auto& g : x.generators()) {
        const Scalar v = inner(c.m, g);
        if constexpr (is_exact_v<Scalar>) {
          if (v != 0) return false;
        } else if (std::abs(v) > tol * scale) {
          return false;
        }
      }
      const Scalar r = inner(c.m, x.constant()) - c.b;
      if constexpr (is_exact_v<Scalar>) {
        if (r != 0) return false;
      } else if (std::abs(r) > tol * scale) {
        return false;
      }
    }
    return true;
  };
  return inside(a, b) && inside(b, a);
}

}  // namespace conicscope
