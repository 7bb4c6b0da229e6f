#pragma once

// Lifting constructions: the span of L, the product-cone embedding
// Sym^d ⊕ R, the lifted LMI with 2×2 blocks, and hull representations of
// projected spectrahedra.

#include "conicscope/cone.hpp"
#include "conicscope/model.hpp"
#include "conicscope/oracle.hpp"

#include <optional>
#include <string>

namespace conicscope {

/// Homogeneous feasibility system K ∩ W with a distinguished marker
/// coordinate (the dehomogenizing x0). `generators` holds the packed
/// spanning vectors in variable order, so relint points can be expressed
/// in the original coordinates.
struct HomogeneousSystem {
  ConeShape shape;
  Subspace subspace;
  MatrixXd generators;
  std::optional<Index> marker;  // packed coordinate carrying x0
  Subspace lin_part;
  std::vector<BlockVecq> exact_generators;  // the spanning set in exact form, when known
};

/// span{A0, A1, ..., An}, packed isometrically in Sym^d.
Subspace span_lift(const Pencild& p);

/// K = Sym^d_+ × R_+, W = span{(A0,1), (A1,0), ..., (An,0)}, marker = the R coordinate.
HomogeneousSystem embed_product(const Pencild& p);

/// Homogeneous subspace of a single PSD block, no marker.
HomogeneousSystem homogeneous_system(const std::vector<SymMatd>& basis);

/// Homogeneous pencil in (x0, x1..xn, r) of block sizes {d, 2, ..., 2}:
/// first block x0·A0 + Σ x_i A_i, then [[x0, x_i], [x_i, r]] for each i.
template <typename Scalar>
struct LiftedLMI {
  Pencil<Scalar> base;
  std::vector<Index> block_sizes;
  std::vector<SymMat<Scalar>> coefficients;  // one per variable x0, x1..xn, r

  Index num_vars() const { return static_cast<Index>(coefficients.size()); }
  SymMat<Scalar> evaluate(const Scalar& x0, const Vector<Scalar>& x, const Scalar& r) const {
    SymMat<Scalar> out = x0 * coefficients.front();
    for (Index i = 0; i < x.size(); ++i) out += x(i) * coefficients[static_cast<std::size_t>(i + 1)];
    out += r * coefficients.back();
    return out;
  }
  /// The diagonal block b of an evaluated matrix.
  static SymMat<Scalar> block(const SymMat<Scalar>& m, const std::vector<Index>& sizes, Index b) {
    Index off = 0;
    for (Index i = 0; i < b; ++i) off += sizes[static_cast<std::size_t>(i)];
    const Index s = sizes[static_cast<std::size_t>(b)];
    return SymMat<Scalar>::fromUpper(m.matrix().block(off, off, s, s));
  }
};

template <typename Scalar>
LiftedLMI<Scalar> lift_full(const Pencil<Scalar>& p) {
  if (!p.proper()) throw ImproperPencilError();
  const Index n = p.num_vars(), d = p.dim();
  if (n == 0) throw std::invalid_argument("lift_full: pencil has no variables; check A0 directly");
  LiftedLMI<Scalar> out{p, {d}, {}};
  for (Index i = 0; i < n; ++i) out.block_sizes.push_back(2);
  const Index total = d + 2 * n;
  auto assemble = [&](const SymMat<Scalar>& first, auto&& fill) {
    Matrix<Scalar> m = Matrix<Scalar>::Zero(total, total);
    m.topLeftCorner(d, d) = first.matrix();
    for (Index i = 0; i < n; ++i) fill(m, d + 2 * i, i);
    return SymMat<Scalar>::fromUpper(m);
  };
  out.coefficients.push_back(assemble(p.constant(), [](Matrix<Scalar>& m, Index o, Index) { m(o, o) = 1; }));
  for (Index k = 0; k < n; ++k)
    out.coefficients.push_back(assemble(p.generator(k), [k](Matrix<Scalar>& m, Index o, Index i) {
      if (i == k) m(o, o + 1) = m(o + 1, o) = 1;
    }));
  out.coefficients.push_back(
      assemble(SymMat<Scalar>::zero(d), [](Matrix<Scalar>& m, Index o, Index) { m(o + 1, o + 1) = 1; }));
  return out;
}

/// The lifted system as a homogeneous cone problem; the marker is the
/// (1,1) entry of the first 2×2 block.
HomogeneousSystem lifted_system(const LiftedLMI<double>& lifted);

struct LiftVerdict {
  bool infeasible = false;
  bool unresolved = false;
  std::optional<VectorXd> witness;  // x with x0 rescaled to 1
  VectorXd coordinates;             // (x0, x1..xn, r) of the relint point
  Index steps = 0;
  std::string note;
};

/// Feasible iff the maximal face of the lifted solution cone has a point
/// with x0 > tol·(1 + ‖(x0, x, r)‖).
LiftVerdict infeasible_by_lift(const Pencild& p, const OracleOptions& opt = {});

/// Representation of cone(S): variables (x, λ, r, z).
ProjSpecRep<double> cone_hull_rep(const ProjSpecRep<double>& s);

/// Representation of conv(S_1 ∪ ... ∪ S_t).
ProjSpecRep<double> convex_hull_union(const std::vector<ProjSpecRep<double>>& reps);

struct MembershipResult {
  bool member = false;
  bool unresolved = false;
  std::string type;  // feasibility type of the lifting pencil
};

/// x ∈ S iff the pencil in the lifting variables at x is feasible.
MembershipResult hull_membership(const ProjSpecRep<double>& rep, const VectorXd& x, const OracleOptions& opt = {});

}  // namespace conicscope
