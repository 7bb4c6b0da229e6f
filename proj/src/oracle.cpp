#include "conicscope/oracle.hpp"

#include "conicscope/certify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace conicscope {

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Interior: return "Interior";
    case OutcomeKind::Support: return "Support";
    case OutcomeKind::ZeroOnly: return "ZeroOnly";
    case OutcomeKind::Unresolved: return "Unresolved";
  }
  return "?";
}

namespace {

struct EigEntry {
  double value;
  std::size_t block;
  Index col;
};

double max_abs_inner(const MatrixXd& basis, const VectorXd& v) {
  return basis.cols() ? (basis.transpose() * v).cwiseAbs().maxCoeff() : 0.0;
}

double max_eig(const BlockVec& x) {
  double hi = 0;
  for (const auto& b : x) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(b, Eigen::EigenvaluesOnly);
    hi = std::max(hi, es.eigenvalues()(b.rows() - 1));
  }
  return hi;
}

OracleOutcome relint_impl(const Subspace& w, const FaceDescriptor& f, const OracleOptions& opt, int depth);

// Turns an approximate dual optimum Z into an exact supporting functional.
// Near-singular auxiliary problems pin the range of Z only to about √μ, so
// its top eigenvectors cannot be used directly. Instead, for a spectral cut
// S (the eigenvectors kept), the functionals V Y Vᵀ orthogonal to W form a
// subspace N computed by linear algebra, and a PSD element of N is found by
// facial reduction on the smaller system (N, Sym^S_+).
std::optional<BlockVec> purify(const std::vector<Index>& sizes, const MatrixXd& wbasis, const BlockVec& zraw,
                               const OracleOptions& opt, int depth) {
  if (depth > 8) return std::nullopt;
  auto project_out = [&](VectorXd v) {
    v -= wbasis * (wbasis.transpose() * v);
    return v;
  };
  const BlockVec z = unpack_blocks(sizes, project_out(pack_blocks(sizes, zraw)));

  std::vector<Eigen::SelfAdjointEigenSolver<MatrixXd>> eig;
  std::vector<EigEntry> all;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    eig.emplace_back(z[b]);
    for (Index i = 0; i < sizes[b]; ++i) all.push_back({eig.back().eigenvalues()(i), b, i});
  }
  std::sort(all.begin(), all.end(), [](const EigEntry& a, const EigEntry& b) { return a.value > b.value; });
  if (all.empty() || all.front().value <= 0) return std::nullopt;
  const double top = all.front().value;

  std::vector<std::pair<double, std::size_t>> cuts;  // (log gap, number kept)
  for (std::size_t j = 1; j < all.size(); ++j) {
    const double kept = all[j - 1].value, dropped = all[j].value;
    if (dropped > 1e-3 * top || kept <= 1e2 * std::max(dropped, 0.0)) continue;
    cuts.emplace_back(std::log(kept / std::max(std::abs(dropped), 1e-300 * top)), j);
  }
  std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (cuts.size() > 4) cuts.resize(4);

  for (const auto& cut : cuts) {
    std::vector<Index> cnt(sizes.size(), 0);
    for (std::size_t j = 0; j < cut.second; ++j) ++cnt[all[j].block];
    std::vector<MatrixXd> v(sizes.size());
    for (std::size_t b = 0; b < sizes.size(); ++b) v[b] = MatrixXd(sizes[b], cnt[b]);
    std::vector<Index> fill(sizes.size(), 0);
    for (std::size_t j = 0; j < cut.second; ++j) {
      const auto& e = all[j];
      v[e.block].col(fill[e.block]++) = eig[e.block].eigenvectors().col(e.col);
    }
    std::vector<Index> rsizes;
    for (std::size_t b = 0; b < sizes.size(); ++b)
      if (cnt[b] > 0) rsizes.push_back(cnt[b]);
    auto restrict_to = [&](const BlockVec& x) {
      BlockVec out;
      for (std::size_t b = 0; b < sizes.size(); ++b)
        if (cnt[b] > 0) out.push_back(v[b].transpose() * x[b] * v[b]);
      return pack_blocks(rsizes, out);
    };
    const Index rlen = packed_size(rsizes);
    MatrixXd g(wbasis.cols(), rlen);
    for (Index k = 0; k < wbasis.cols(); ++k) g.row(k) = restrict_to(unpack_blocks(sizes, wbasis.col(k))).transpose();
    const MatrixXd ns = g.rows() ? null_space(g, 1e-9) : MatrixXd(MatrixXd::Identity(rlen, rlen));
    if (ns.cols() == 0) continue;

    // Relative interior point of N ∩ Sym^S_+.
    const ConeShape sub{rsizes, 0};
    FaceDescriptor face = FaceDescriptor::full(sub);
    Subspace wn = Subspace::span(ns, 1e-12);
    std::optional<VectorXd> point;
    for (Index step = 0; step <= sub.trace_dim() && !point; ++step) {
      const OracleOutcome o = relint_impl(wn, face, opt, depth + 1);
      if (o.kind == OutcomeKind::Interior) {
        point = o.point;
      } else if (o.kind == OutcomeKind::Support) {
        FaceDescriptor next = face.meet_reduced(o.reduced_functional, opt.tol);
        if (next.total_rank() >= face.total_rank()) break;
        face = std::move(next);
        wn = intersect_span(wn, face, opt.tol);
      } else {
        break;
      }
    }
    if (!point) continue;

    const BlockVec yb = unpack_blocks(rsizes, *point);
    BlockVec ell(sizes.size());
    std::size_t k = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b)
      ell[b] = cnt[b] ? MatrixXd(v[b] * yb[k++] * v[b].transpose()) : MatrixXd(MatrixXd::Zero(sizes[b], sizes[b]));
    const BlockVec lb = unpack_blocks(sizes, project_out(pack_blocks(sizes, ell)));
    const double lo = min_eig(lb), hi = max_eig(lb);
    if (!(hi > 0) || lo < -1e-9 * hi) continue;
    BlockVec out = lb;
    for (auto& b : out) b = ((0.5 / hi) * (b + b.transpose())).eval();
    return out;
  }
  return std::nullopt;
}

}  // namespace

OracleOutcome relint_or_support(const Subspace& w, const FaceDescriptor& f, const OracleOptions& opt) {
  return relint_impl(w, f, opt, 0);
}

namespace {

OracleOutcome relint_impl(const Subspace& w, const FaceDescriptor& f, const OracleOptions& opt, int depth) {
  OracleOutcome out;
  const double tol = opt.tol;
  const auto sizes = f.reduced_sizes();
  if (sizes.empty()) {
    out.kind = OutcomeKind::ZeroOnly;
    out.functional = VectorXd::Zero(f.shape().packed_size());
    out.note = "zero face";
    return out;
  }
  if (w.ambient() != f.shape().packed_size()) throw DimensionError("relint_or_support: ambient mismatch");

  const Subspace wf = intersect_span(w, f, tol);
  MatrixXd basis(packed_size(sizes), wf.dim());
  for (Index j = 0; j < wf.dim(); ++j) basis.col(j) = f.reduce_packed(wf.basis().col(j));
  basis = Subspace::span(basis, tol).basis();
  const Index m = basis.cols();
  const VectorXd eye = pack_blocks(sizes, identity_blocks(sizes));

  auto zero_only_identity = [&](const std::string& why) {
    out.kind = OutcomeKind::ZeroOnly;
    out.reduced_functional = identity_blocks(sizes);
    out.functional = f.expand_packed(eye);
    out.residual = max_abs_inner(basis, eye);
    out.note = why;
    return out;
  };
  if (m == 0) return zero_only_identity("W meets lspan(F) only at 0");

  const VectorXd tau = basis.transpose() * eye;
  if (tau.norm() <= tol) return zero_only_identity("empty trace slice");

  // Rotate the basis: w1 has trace one, the rest are traceless.
  const VectorXd w1 = basis * tau / tau.squaredNorm();
  const MatrixXd rot = null_space(tau.transpose(), 1e-14);
  const MatrixXd wrest = basis * rot;

  SdpProblem prob;
  prob.blocks = sizes;
  prob.c = unpack_blocks(sizes, w1);
  prob.a.push_back(identity_blocks(sizes));
  for (Index j = 0; j < wrest.cols(); ++j) prob.a.push_back(unpack_blocks(sizes, wrest.col(j)));
  prob.b = VectorXd::Zero(static_cast<Index>(prob.a.size()));
  prob.b(0) = 1;

  SdpOptions so;
  so.gap_tol = std::min(1e-11, 1e-3 * tol);
  so.feas_tol = std::min(1e-11, 1e-3 * tol);
  so.max_iters = opt.max_iters;
  const SdpResult r = aux_sdp_solve(prob, so);
  out.iterations = r.iterations;

  // Dual side: X = w1 − Σ y_j w'_j lies in W by construction.
  VectorXd xw = w1;
  for (Index j = 0; j < wrest.cols(); ++j) xw -= r.y(j + 1) * wrest.col(j);
  const BlockVec xb = unpack_blocks(sizes, xw);
  const double lam = min_eig(xb);
  out.lambda = r.converged() ? r.dual_obj : lam;

  if (lam > tol) {
    out.kind = OutcomeKind::Interior;
    out.lambda = lam;
    out.point = f.expand_packed(xw);
    return out;
  }

  // Primal side: Z ⪰ 0, tr Z = 1, Z ⊥ w'_j, value ⟨w1, Z⟩.
  VectorXd zp = pack_blocks(sizes, r.x);
  const double pval = w1.dot(zp);
  out.dual_estimate = f.expand_packed(zp - basis * (basis.transpose() * zp));
  if (pval < -tol) {
    VectorXd ell = zp - pval * eye;
    ell -= basis * (basis.transpose() * ell);
    const BlockVec lb = unpack_blocks(sizes, ell);
    const double lo = min_eig(lb), hi = max_eig(lb);
    if (lo > tol * std::max(1.0, hi)) {
      out.kind = OutcomeKind::ZeroOnly;
      out.lambda = pval;
      BlockVec scaled = lb;
      for (auto& b : scaled) b /= hi;
      out.reduced_functional = scaled;
      out.functional = f.expand_packed(pack_blocks(sizes, scaled));
      out.residual = max_abs_inner(basis, pack_blocks(sizes, scaled));
      return out;
    }
  }

  if (auto ell = purify(sizes, basis, r.x, opt, depth)) {
    out.kind = OutcomeKind::Support;
    out.reduced_functional = *ell;
    const VectorXd packed = pack_blocks(sizes, *ell);
    out.functional = f.expand_packed(packed);
    out.residual = max_abs_inner(basis, packed);
    if (!r.converged()) out.note = "solver " + to_string(r.status) + "; functional verified after purification";
    return out;
  }

  out.kind = OutcomeKind::Unresolved;
  out.note = "unresolved margin: solver " + to_string(r.status) + ", lambda_min(X)=" + std::to_string(lam) +
             ", primal value=" + std::to_string(pval) + ", no clean spectral gap in the dual multiplier";
  return out;
}

}  // namespace

namespace {

// Largest certificate trace a floating-point candidate is trusted at: the
// separation problem is solved to about 1e-10, so near-certificates of a
// weakly infeasible pencil reach margins near the square root of that.
constexpr double kResolvableTrace = 1e4;

}  // namespace

SeparationResult strong_separation(const Pencild& p, double rho, const OracleOptions& opt) {
  SeparationResult out;
  const Index d = p.dim();
  SdpProblem prob;
  prob.blocks = {d};
  prob.c = {p.constant().matrix()};
  prob.a.push_back({MatrixXd::Identity(d, d)});
  for (const auto& g : p.generators()) prob.a.push_back({g.matrix()});
  prob.b = VectorXd::Zero(static_cast<Index>(prob.a.size()));
  prob.b(0) = 1;
  SdpOptions so;
  so.gap_tol = std::min(1e-10, 1e-2 * opt.tol);
  so.feas_tol = std::min(1e-10, 1e-2 * opt.tol);
  so.max_iters = opt.max_iters;
  const SdpResult r = aux_sdp_solve(prob, so);
  out.optimal_value = r.dual_obj;
  out.solver_trouble = !r.converged();
  if (out.solver_trouble) out.note = "solver " + to_string(r.status);

  // Project onto {⟨A_i,·⟩ = 0} so the linear conditions hold to rounding.
  VectorXd c = svec_iso(SymMatd::fromFull(r.x[0]));
  if (p.num_vars() > 0) {
    MatrixXd g(c.size(), p.num_vars());
    for (Index i = 0; i < p.num_vars(); ++i) g.col(i) = svec_iso(p.generator(i));
    const Subspace span = Subspace::span(g, 1e-14);
    c -= span.basis() * (span.basis().transpose() * c);
  }
  SymMatd cm = smat_iso(c, d);

  // An exactly verified rational certificate settles the question; the
  // solver's own candidate is trusted only at a trace it can resolve, since
  // weakly infeasible pencils admit near-certificates whose violations sit
  // below any fixed tolerance once the trace is large.
  const RationalizeResult rr = rationalize_certificate(p.cast<Rational>(), cm, 10000);
  if (rr.ok) {
    SymMatq cq = rr.certificate->c;
    cq *= Rational(-1) / rr.certificate->value;
    const double tr = cq.matrix().trace().convert_to<double>();
    if (tr <= rho) {
      out.found = true;
      out.certificate = AffineCertificated{cq.cast<double>(), -1.0, 1.0 / tr};
      out.note += (out.note.empty() ? "" : "; ") + std::string("exact rational certificate");
      return out;
    }
  }
  const double v = inner(cm, p.constant());
  if (!(v < 0)) return out;
  cm *= -1.0 / v;
  const double tr = cm.matrix().trace();
  if (tr > std::min(rho, kResolvableTrace)) return out;
  AffineCertificated cert{cm, -1.0, 1.0 / tr};
  const auto ver = verify_affine(p, cert, opt.tol);
  if (!ver.valid) {
    out.note += (out.note.empty() ? "" : "; ") + std::string("candidate failed verification: ") + ver.message;
    return out;
  }
  out.found = true;
  out.certificate = cert;
  return out;
}

}  // namespace conicscope
