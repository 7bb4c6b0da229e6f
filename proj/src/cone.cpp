#include "conicscope/cone.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace conicscope {

namespace {

const double kSqrt2 = std::sqrt(2.0);

void pack_into(const MatrixXd& x, VectorXd& v, Index& k) {
  const Index d = x.rows();
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) v(k++) = i == j ? x(i, j) : kSqrt2 * 0.5 * (x(i, j) + x(j, i));
}

MatrixXd unpack_from(const VectorXd& v, Index d, Index& k) {
  MatrixXd x(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j, ++k) x(i, j) = x(j, i) = i == j ? v(k) : v(k) / kSqrt2;
  return x;
}

// Orthonormal basis of the complement of span(cols) in R^n.
MatrixXd complement_basis(const MatrixXd& cols, Index n, double tol) {
  if (cols.cols() == 0) return MatrixXd::Identity(n, n);
  return null_space(cols.transpose(), tol);
}

}  // namespace

std::vector<Index> ConeShape::blocks() const {
  std::vector<Index> out = psd;
  out.insert(out.end(), static_cast<std::size_t>(orthant), Index{1});
  return out;
}

Index ConeShape::packed_size() const { return conicscope::packed_size(blocks()); }

Index ConeShape::trace_dim() const {
  Index t = orthant;
  for (Index b : psd) t += b;
  return t;
}

Index ConeShape::block_offset(Index b) const {
  Index off = 0;
  const auto sizes = blocks();
  for (Index i = 0; i < b; ++i) off += svec_size(sizes[static_cast<std::size_t>(i)]);
  return off;
}

Index packed_size(const std::vector<Index>& sizes) {
  Index n = 0;
  for (Index s : sizes) n += svec_size(s);
  return n;
}

VectorXd pack_blocks(const std::vector<Index>& sizes, const BlockVec& x) {
  if (x.size() != sizes.size()) throw DimensionError("pack: block count mismatch");
  VectorXd v(packed_size(sizes));
  Index k = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (x[b].rows() != sizes[b] || x[b].cols() != sizes[b]) throw DimensionError("pack: block size mismatch");
    pack_into(x[b], v, k);
  }
  return v;
}

BlockVec unpack_blocks(const std::vector<Index>& sizes, const VectorXd& v) {
  if (v.size() != packed_size(sizes)) throw DimensionError("unpack: length mismatch");
  BlockVec x;
  x.reserve(sizes.size());
  Index k = 0;
  for (Index s : sizes) x.push_back(unpack_from(v, s, k));
  return x;
}

VectorXd pack(const ConeShape& shape, const BlockVec& x) { return pack_blocks(shape.blocks(), x); }
BlockVec unpack(const ConeShape& shape, const VectorXd& v) { return unpack_blocks(shape.blocks(), v); }

BlockVec identity_blocks(const std::vector<Index>& sizes) {
  BlockVec out;
  for (Index s : sizes) out.push_back(MatrixXd::Identity(s, s));
  return out;
}

double min_eig(const BlockVec& x) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& b : x) {
    if (b.rows() == 0) continue;
    if (b.rows() == 1) {
      lo = std::min(lo, b(0, 0));
      continue;
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(b, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues()(0));
  }
  return lo;
}

FaceDescriptor FaceDescriptor::full(const ConeShape& shape) {
  FaceDescriptor f;
  f.shape_ = shape;
  for (Index s : shape.blocks()) f.range_.push_back(MatrixXd::Identity(s, s));
  return f;
}

FaceDescriptor FaceDescriptor::zero(const ConeShape& shape) {
  FaceDescriptor f;
  f.shape_ = shape;
  for (Index s : shape.blocks()) f.range_.push_back(MatrixXd(s, 0));
  return f;
}

FaceDescriptor FaceDescriptor::from_kernels(const ConeShape& shape, const std::vector<MatrixXd>& kernels,
                                            double tol) {
  const auto sizes = shape.blocks();
  if (kernels.size() != sizes.size()) throw DimensionError("face: kernel count mismatch");
  FaceDescriptor f;
  f.shape_ = shape;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (kernels[b].rows() != sizes[b]) throw DimensionError("face: kernel dimension mismatch");
    const MatrixXd u = Subspace::span(kernels[b], tol).basis();
    f.range_.push_back(complement_basis(u, sizes[b], tol));
  }
  return f;
}

FaceDescriptor FaceDescriptor::from_ranges(const ConeShape& shape, const std::vector<MatrixXd>& ranges) {
  const auto sizes = shape.blocks();
  if (ranges.size() != sizes.size()) throw DimensionError("face: range count mismatch");
  FaceDescriptor f;
  f.shape_ = shape;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    if (ranges[b].rows() != sizes[b]) throw DimensionError("face: range dimension mismatch");
    f.range_.push_back(ranges[b].cols() ? Subspace::span(ranges[b], 1e-12).basis() : MatrixXd(sizes[b], 0));
  }
  return f;
}

FaceDescriptor FaceDescriptor::exposed_by(const ConeShape& shape, const BlockVec& functional, double tol) {
  return full(shape).meet_reduced(functional, tol);
}

MatrixXd FaceDescriptor::kernel(Index b) const {
  const MatrixXd& q = range(b);
  return complement_basis(q, q.rows(), kDefaultTol);
}

Index FaceDescriptor::total_rank() const {
  Index r = 0;
  for (const auto& q : range_) r += q.cols();
  return r;
}

bool FaceDescriptor::is_full() const {
  for (const auto& q : range_)
    if (q.cols() != q.rows()) return false;
  return true;
}

bool FaceDescriptor::orthant_active(Index i) const {
  if (i < 0 || i >= shape_.orthant) throw std::out_of_range("orthant index");
  return rank(static_cast<Index>(shape_.psd.size()) + i) == 0;
}

std::vector<Index> FaceDescriptor::reduced_sizes() const {
  std::vector<Index> out;
  for (const auto& q : range_)
    if (q.cols() > 0) out.push_back(q.cols());
  return out;
}

BlockVec FaceDescriptor::reduce(const BlockVec& x) const {
  if (x.size() != range_.size()) throw DimensionError("reduce: block count mismatch");
  BlockVec out;
  for (std::size_t b = 0; b < range_.size(); ++b) {
    const MatrixXd& q = range_[b];
    if (q.cols() == 0) continue;
    out.push_back(q.transpose() * x[b] * q);
  }
  return out;
}

VectorXd FaceDescriptor::reduce_packed(const VectorXd& v) const {
  return pack_blocks(reduced_sizes(), reduce(unpack(shape_, v)));
}

BlockVec FaceDescriptor::expand(const BlockVec& y) const {
  BlockVec out;
  std::size_t k = 0;
  for (const auto& q : range_) {
    if (q.cols() == 0) {
      out.push_back(MatrixXd::Zero(q.rows(), q.rows()));
      continue;
    }
    if (k >= y.size()) throw DimensionError("expand: block count mismatch");
    out.push_back(q * y[k++] * q.transpose());
  }
  if (k != y.size()) throw DimensionError("expand: block count mismatch");
  return out;
}

VectorXd FaceDescriptor::expand_packed(const VectorXd& w) const {
  return pack(shape_, expand(unpack_blocks(reduced_sizes(), w)));
}

VectorXd FaceDescriptor::project_span(const VectorXd& v) const {
  BlockVec x = unpack(shape_, v);
  for (std::size_t b = 0; b < range_.size(); ++b) {
    const MatrixXd p = range_[b] * range_[b].transpose();
    x[b] = p * x[b] * p;
  }
  return pack(shape_, x);
}

FaceDescriptor FaceDescriptor::meet_reduced(const BlockVec& functional, double tol) const {
  FaceDescriptor f = *this;
  std::size_t k = 0;
  for (auto& q : f.range_) {
    if (q.cols() == 0) continue;
    if (k >= functional.size()) throw DimensionError("meet: block count mismatch");
    const MatrixXd& l = functional[k++];
    const SymMatd ls = SymMatd::fromFull(l);
    const MatrixXd ker = kernel_basis(ls, tol);
    q = q * ker;
  }
  if (k != functional.size()) throw DimensionError("meet: block count mismatch");
  return f;
}

bool FaceDescriptor::contained_in(const FaceDescriptor& other, double tol) const {
  if (!(shape_ == other.shape_)) return false;
  for (std::size_t b = 0; b < range_.size(); ++b) {
    // range(G) ⊆ range(F)
    const MatrixXd& q = range_[b];
    const MatrixXd& p = other.range_[b];
    if (q.cols() == 0) continue;
    const MatrixXd resid = q - p * (p.transpose() * q);
    if (resid.norm() > tol * std::sqrt(static_cast<double>(q.cols()))) return false;
  }
  return true;
}

Subspace intersect_span(const Subspace& w, const FaceDescriptor& f, double tol) {
  if (w.empty()) return w;
  const MatrixXd& b = w.basis();
  MatrixXd resid(b.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) resid.col(j) = b.col(j) - f.project_span(b.col(j));
  const MatrixXd alpha = null_space(resid, tol);
  if (alpha.cols() == 0) return Subspace(w.ambient());
  // Project the survivors onto the span exactly so later reductions are isometric.
  MatrixXd inside = b * alpha;
  for (Index j = 0; j < inside.cols(); ++j) inside.col(j) = f.project_span(inside.col(j));
  return Subspace::span(inside, tol);
}

}  // namespace conicscope
