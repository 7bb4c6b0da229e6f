#include "conicscope/subspace.hpp"

#include <Eigen/SVD>

namespace conicscope {

Subspace Subspace::span(const MatrixXd& spanning, double tol) {
  Subspace s(spanning.rows());
  if (spanning.cols() == 0 || spanning.rows() == 0) return s;
  Eigen::JacobiSVD<MatrixXd> svd(spanning, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  s.basis_ = svd.matrixU().leftCols(r);
  return s;
}

Subspace Subspace::full(Index ambient) {
  Subspace s(ambient);
  s.basis_ = MatrixXd::Identity(ambient, ambient);
  return s;
}

VectorXd Subspace::project(const VectorXd& v) const {
  if (v.size() != ambient()) throw DimensionError("Subspace::project: ambient mismatch");
  return basis_ * (basis_.transpose() * v);
}

bool Subspace::contains(const VectorXd& v, double tol) const {
  return (v - project(v)).norm() <= tol * (1.0 + v.norm());
}

MatrixXd null_space(const MatrixXd& m, double tol) {
  const Index n = m.cols();
  if (m.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return svd.matrixV().rightCols(n - r);
}

Subspace orthogonal_complement(const Subspace& s, double tol) {
  Subspace c(s.ambient());
  if (s.empty()) return Subspace::full(s.ambient());
  return Subspace::span(null_space(s.basis().transpose(), tol), tol);
}

Subspace sum(const Subspace& s, const Subspace& t, double tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("sum: ambient mismatch");
  MatrixXd both(s.ambient(), s.dim() + t.dim());
  both << s.basis(), t.basis();
  return Subspace::span(both, tol);
}

Subspace intersect(const Subspace& s, const Subspace& t, double tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("intersect: ambient mismatch");
  // x ∈ S∩T  ⇔  x is orthogonal to S^⊥ and to T^⊥.
  const Subspace sc = orthogonal_complement(s, tol);
  const Subspace tc = orthogonal_complement(t, tol);
  MatrixXd stacked(sc.dim() + tc.dim(), s.ambient());
  stacked << sc.basis().transpose(), tc.basis().transpose();
  return Subspace::span(null_space(stacked, tol), tol);
}

bool is_subspace_of(const Subspace& s, const Subspace& t, double tol) {
  if (s.ambient() != t.ambient()) throw DimensionError("is_subspace_of: ambient mismatch");
  for (Index j = 0; j < s.dim(); ++j)
    if (!t.contains(s.basis().col(j), tol)) return false;
  return true;
}

}  // namespace conicscope
