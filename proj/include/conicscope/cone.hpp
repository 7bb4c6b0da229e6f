#pragma once

// Product cones Sym^{d1}_+ × ... × Sym^{dp}_+ × R^s_+ and their faces.
// Orthant coordinates are handled as 1×1 PSD blocks throughout, so every
// element is a list of symmetric blocks and faces are per-block ranges.

#include "conicscope/subspace.hpp"
#include "conicscope/symmat.hpp"

#include <vector>

namespace conicscope {

struct ConeShape {
  std::vector<Index> psd;  // PSD block sizes
  Index orthant = 0;       // number of R_+ factors

  /// All block sizes, PSD first, then one 1 per orthant coordinate.
  std::vector<Index> blocks() const;
  Index num_blocks() const { return static_cast<Index>(psd.size()) + orthant; }
  /// Length of the isometric packing.
  Index packed_size() const;
  /// Sum of block sizes (trace of the identity).
  Index trace_dim() const;
  /// Offset of block b in the packing.
  Index block_offset(Index b) const;
  friend bool operator==(const ConeShape&, const ConeShape&) = default;
};

using BlockVec = std::vector<MatrixXd>;
using BlockVecq = std::vector<MatrixXq>;

/// Isometric packing: ⟨X, Y⟩ = pack(X)·pack(Y).
VectorXd pack(const ConeShape& shape, const BlockVec& x);
BlockVec unpack(const ConeShape& shape, const VectorXd& v);
VectorXd pack_blocks(const std::vector<Index>& sizes, const BlockVec& x);
BlockVec unpack_blocks(const std::vector<Index>& sizes, const VectorXd& v);
Index packed_size(const std::vector<Index>& sizes);

BlockVec identity_blocks(const std::vector<Index>& sizes);
/// Smallest eigenvalue over all blocks (+inf for an empty list).
double min_eig(const BlockVec& x);

/// Face of a product cone, encoded per block by an orthonormal basis of
/// the range (the orthogonal complement of the kernel U). A 1×1 block with
/// empty range is an orthant coordinate pinned to zero.
class FaceDescriptor {
 public:
  FaceDescriptor() = default;
  static FaceDescriptor full(const ConeShape& shape);
  static FaceDescriptor zero(const ConeShape& shape);
  /// Face {X ⪰ 0 : U_b ⊆ ker X_b} from per-block kernel bases.
  static FaceDescriptor from_kernels(const ConeShape& shape, const std::vector<MatrixXd>& kernels,
                                     double tol = kDefaultTol);
  /// Face with the given per-block ranges (columns need not be orthonormal).
  static FaceDescriptor from_ranges(const ConeShape& shape, const std::vector<MatrixXd>& ranges);
  /// Face K ∩ ℓ^⊥ exposed by a PSD functional ℓ.
  static FaceDescriptor exposed_by(const ConeShape& shape, const BlockVec& functional, double tol = kDefaultTol);

  const ConeShape& shape() const { return shape_; }
  const MatrixXd& range(Index b) const { return range_[static_cast<std::size_t>(b)]; }
  MatrixXd kernel(Index b) const;
  Index rank(Index b) const { return range(b).cols(); }
  Index total_rank() const;
  bool is_zero() const { return total_rank() == 0; }
  bool is_full() const;
  /// Orthant coordinate i is pinned to zero on this face.
  bool orthant_active(Index i) const;

  /// Sizes of the nonzero reduced blocks (ranks), in block order.
  std::vector<Index> reduced_sizes() const;
  /// Q_bᵀ X_b Q_b for every block with positive rank.
  BlockVec reduce(const BlockVec& x) const;
  VectorXd reduce_packed(const VectorXd& v) const;
  BlockVec expand(const BlockVec& y) const;
  VectorXd expand_packed(const VectorXd& w) const;
  /// Orthogonal projection onto lspan(F).
  VectorXd project_span(const VectorXd& v) const;

  /// F ∩ ℓ^⊥ for ℓ given in reduced coordinates and PSD there.
  FaceDescriptor meet_reduced(const BlockVec& functional, double tol = kDefaultTol) const;
  /// G ⊆ F (kernel containment per block).
  bool contained_in(const FaceDescriptor& other, double tol = kDefaultTol) const;

 private:
  ConeShape shape_;
  std::vector<MatrixXd> range_;
};

/// W ∩ lspan(F), with W given by orthonormal columns (packed).
Subspace intersect_span(const Subspace& w, const FaceDescriptor& f, double tol = kDefaultTol);

}  // namespace conicscope
