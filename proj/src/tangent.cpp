#include "conicscope/tangent.hpp"

namespace conicscope {

std::string to_string(Separability s) { return s == Separability::SingleCut ? "SingleCut" : "NeedsChain"; }

namespace {

void require_single_block(const FaceDescriptor& f) {
  if (f.shape().psd.size() != 1 || f.shape().orthant != 0)
    throw std::invalid_argument("tangent cone utilities expect a single PSD block");
}

// Linear map svec_iso(X) ↦ svec_iso(UᵀXU).
MatrixXd compression_map(const MatrixXd& u, Index d) {
  const Index len = svec_size(d), k = u.cols();
  MatrixXd map(svec_size(k), len);
  for (Index j = 0; j < len; ++j) {
    VectorXd e = VectorXd::Unit(len, j);
    map.col(j) = svec_iso(SymMatd::fromFull(u.transpose() * smat_iso(e, d).matrix() * u));
  }
  return map;
}

bool in_relint(const FaceDescriptor& f, const SymMatd& m, double tol) {
  const MatrixXd ker = kernel_basis(m, tol);
  const MatrixXd u = f.kernel(0);
  if (ker.cols() != u.cols()) return false;
  if (u.cols() == 0) return true;
  return (u - ker * (ker.transpose() * u)).norm() <= std::sqrt(tol);
}

}  // namespace

Subspace tangent_cone_lineality(const FaceDescriptor& f, const SymMatd& m, double tol) {
  require_single_block(f);
  const Index d = f.shape().psd[0];
  if (m.dim() != d) throw DimensionError("tangent_cone_lineality: dimension mismatch");
  const MatrixXd u = f.kernel(0);
  if (u.cols() == 0) throw std::invalid_argument("tangent_cone_lineality: the face is the whole cone");
  if (!psd_check(m, tol).psd || !in_relint(f, m, tol))
    throw std::invalid_argument("tangent_cone_lineality: m is not in the relative interior of the face");
  const MatrixXd lin = null_space(compression_map(u, d), 1e-12);
  return lin.cols() ? Subspace::span(lin, 1e-12) : Subspace(svec_size(d));
}

SeparabilityResult separability_at_face(const Subspace& w, const FaceDescriptor& f, const SymMatd& m,
                                        const OracleOptions& opt) {
  require_single_block(f);
  SeparabilityResult out;
  const Index d = f.shape().psd[0];
  if (w.ambient() != svec_size(d)) throw DimensionError("separability_at_face: dimension mismatch");

  // Preconditions: m ∈ W ∩ relint F, and F is minimal (W ∩ lspan F meets relint F).
  if (!w.contains(svec_iso(m), 1e-7) || !psd_check(m, opt.tol).psd || !in_relint(f, m, opt.tol)) {
    out.precondition_ok = false;
    out.note = "m is not a relative interior point of F inside W";
  } else if (!f.is_zero()) {
    const auto o = relint_or_support(intersect_span(w, f, opt.tol), f, opt);
    if (o.kind != OutcomeKind::Interior) {
      out.precondition_ok = false;
      out.note = "F is not the minimal face containing the intersection";
    }
  }

  const MatrixXd u = f.kernel(0);
  if (u.cols() == 0) {
    out.verdict = Separability::SingleCut;
    return out;
  }
  const MatrixXd image = compression_map(u, d) * w.basis();
  const Index k = u.cols();
  const Subspace img = image.cols() ? Subspace::span(image, 1e-10) : Subspace(svec_size(k));
  const ConeShape shape{{k}, 0};
  const auto o = relint_or_support(img, FaceDescriptor::full(shape), opt);
  switch (o.kind) {
    case OutcomeKind::ZeroOnly: out.verdict = Separability::SingleCut; break;
    case OutcomeKind::Interior:
    case OutcomeKind::Support: out.verdict = Separability::NeedsChain; break;
    case OutcomeKind::Unresolved:
      out.verdict = Separability::NeedsChain;
      out.note += (out.note.empty() ? "" : "; ") + std::string("tangent cone test unresolved: ") + o.note;
      break;
  }
  return out;
}

}  // namespace conicscope
