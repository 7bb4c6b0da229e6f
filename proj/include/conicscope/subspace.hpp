#pragma once

#include "conicscope/symmat.hpp"

namespace conicscope {

/// Linear subspace of R^N held as an orthonormal basis (columns).
/// The empty basis is the zero space.
class Subspace {
 public:
  explicit Subspace(Index ambient = 0) : basis_(ambient, 0) {}

  /// Orthonormalizes the columns of `spanning`, dropping directions whose
  /// singular value is below tol·max(1, σ_max).
  static Subspace span(const MatrixXd& spanning, double tol = kDefaultTol);
  static Subspace full(Index ambient);

  Index ambient() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  bool empty() const { return dim() == 0; }
  const MatrixXd& basis() const { return basis_; }

  VectorXd project(const VectorXd& v) const;
  bool contains(const VectorXd& v, double tol = kDefaultTol) const;

 private:
  MatrixXd basis_;
};

Subspace orthogonal_complement(const Subspace& s, double tol = kDefaultTol);
Subspace intersect(const Subspace& s, const Subspace& t, double tol = kDefaultTol);
Subspace sum(const Subspace& s, const Subspace& t, double tol = kDefaultTol);
/// S ⊆ T, tested on every basis vector of S.
bool is_subspace_of(const Subspace& s, const Subspace& t, double tol = kDefaultTol);

/// Orthonormal basis of the null space of `m` (columns), relative rank tol.
MatrixXd null_space(const MatrixXd& m, double tol = kDefaultTol);

}  // namespace conicscope
