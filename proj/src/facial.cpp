#include "conicscope/facial.hpp"

#include "conicscope/certify.hpp"
#include "conicscope/linalg.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace conicscope {

std::string to_string(FeasibilityType t) {
  switch (t) {
    case FeasibilityType::StronglyFeasible: return "StronglyFeasible";
    case FeasibilityType::WeaklyFeasible: return "WeaklyFeasible";
    case FeasibilityType::WeaklyInfeasible: return "WeaklyInfeasible";
    case FeasibilityType::StronglyInfeasible: return "StronglyInfeasible";
  }
  return "?";
}

FeasibilityType feasibility_type_from_string(const std::string& s) {
  for (auto t : {FeasibilityType::StronglyFeasible, FeasibilityType::WeaklyFeasible,
                 FeasibilityType::WeaklyInfeasible, FeasibilityType::StronglyInfeasible})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown feasibility type: " + s);
}

void assert_chain_bound(Index k, Index d, Index n) {
  if (k > std::min(d, 1 + n))
    throw ChainBoundError("certificate chain of length " + std::to_string(k) + " exceeds min{d, 1+n} = " +
                          std::to_string(std::min(d, 1 + n)));
}

namespace {

MatrixXd to_double(const MatrixXq& m) {
  return m.unaryExpr([](const Rational& x) { return x.convert_to<double>(); });
}

BlockVec to_double(const BlockVecq& x) {
  BlockVec out;
  for (const auto& b : x) out.push_back(to_double(b));
  return out;
}

// Exact state of the reduction: per-block range bases of the current face
// and a basis of W ∩ lspan(F).
struct ExactState {
  std::vector<MatrixXq> range;
  std::vector<BlockVecq> w;
};

FaceDescriptor numeric_face(const ConeShape& shape, const ExactState& s) {
  std::vector<MatrixXd> ranges;
  for (const auto& r : s.range) ranges.push_back(to_double(r));
  return FaceDescriptor::from_ranges(shape, ranges);
}

Subspace numeric_span(const ConeShape& shape, const std::vector<BlockVecq>& w) {
  if (w.empty()) return Subspace(shape.packed_size());
  MatrixXd g(shape.packed_size(), static_cast<Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) g.col(static_cast<Index>(j)) = pack(shape, to_double(w[j]));
  return Subspace::span(g, 1e-12);
}

// Keeps a linearly independent subset of nonzero block vectors.
std::vector<BlockVecq> independent(const std::vector<BlockVecq>& w) {
  if (w.empty()) return w;
  Index len = 0;
  for (const auto& b : w.front()) len += b.size();
  MatrixXq m(len, static_cast<Index>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) {
    Index k = 0;
    for (const auto& b : w[j])
      for (Index e = 0; e < b.size(); ++e) m(k++, static_cast<Index>(j)) = b(e);
  }
  std::vector<BlockVecq> out;
  for (Index c : rref<Rational>(m, m.cols()).pivots) out.push_back(w[static_cast<std::size_t>(c)]);
  return out;
}

struct Snapped {
  BlockVecq ambient;  // ℓ in the full cone
  Index rank = 0;
  bool definite = false;
};

constexpr long long kDenominators[] = {1, 2, 3, 4, 6, 8, 10, 12, 16, 24, 32, 60, 64, 100, 128, 360, 1000};

MatrixXq upper_to_sym(const VectorXq& y, Index off, Index r) {
  MatrixXq m(r, r);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i <= j; ++i) m(i, j) = m(j, i) = y(off++);
  return m;
}

// Exact PSD functionals ℓ_b = P_b M_b P_bᵀ vanishing on W, rounded from the
// numerical blocks `target`: coordinates are taken in an exact basis of the
// admissible M, normalized, and rounded with growing denominators. The
// candidate of largest exact rank wins.
std::optional<Snapped> snap_in(const ExactState& s, const std::vector<MatrixXq>& p, const BlockVec& target) {
  const std::size_t nb = p.size();
  std::vector<Index> off(nb + 1, 0);
  for (std::size_t b = 0; b < nb; ++b) off[b + 1] = off[b] + svec_size(p[b].cols());
  const Index nu = off.back();
  if (nu == 0) return std::nullopt;
  Index max_rank = 0;
  for (const auto& pb : p) max_rank += pb.cols();

  MatrixXq basis;
  if (s.w.empty()) {
    basis = MatrixXq::Identity(nu, nu);
  } else {
    MatrixXq c = MatrixXq::Zero(static_cast<Index>(s.w.size()), nu);
    for (std::size_t j = 0; j < s.w.size(); ++j)
      for (std::size_t b = 0; b < nb; ++b) {
        if (p[b].cols() == 0) continue;
        const MatrixXq m = p[b].transpose() * s.w[j][b] * p[b];
        Index k = off[b];
        for (Index jj = 0; jj < m.cols(); ++jj)
          for (Index i = 0; i <= jj; ++i) c(static_cast<Index>(j), k++) = i == jj ? m(i, i) : Rational(2) * m(i, jj);
      }
    basis = nullspace_basis<Rational>(c);
  }
  if (basis.cols() == 0) return std::nullopt;

  VectorXd y(nu);
  for (std::size_t b = 0; b < nb; ++b) {
    if (p[b].cols() == 0) continue;
    const MatrixXd pinv = to_double(p[b]).completeOrthogonalDecomposition().pseudoInverse();
    const MatrixXd yb = pinv * target[b] * pinv.transpose();
    Index k = off[b];
    for (Index j = 0; j < yb.cols(); ++j)
      for (Index i = 0; i <= j; ++i) y(k++) = 0.5 * (yb(i, j) + yb(j, i));
  }
  VectorXd alpha = to_double(basis).colPivHouseholderQr().solve(y);
  const double amax = alpha.size() ? alpha.cwiseAbs().maxCoeff() : 0.0;
  if (!(amax > 0) || !alpha.allFinite()) return std::nullopt;
  alpha /= amax;

  std::optional<Snapped> best;
  for (long long den : kDenominators) {
    VectorXq aq(alpha.size());
    for (Index j = 0; j < alpha.size(); ++j) aq(j) = best_rational(alpha(j), den);
    const VectorXq yq = basis * aq;
    Snapped c;
    bool ok = true;
    std::vector<MatrixXq> mb(nb);
    for (std::size_t b = 0; b < nb && ok; ++b) {
      const Index r = p[b].cols();
      if (r == 0) continue;
      mb[b] = upper_to_sym(yq, off[b], r);
      ok = psd_check_exact(SymMatq::fromUpper(mb[b])).psd;
      c.rank += rank_of<Rational>(mb[b]);
    }
    if (!ok || c.rank == 0 || (best && c.rank <= best->rank)) continue;
    Rational scale = 0;
    for (std::size_t b = 0; b < nb; ++b) {
      const Index sz = p[b].rows();
      c.ambient.push_back(p[b].cols() ? MatrixXq(p[b] * mb[b] * p[b].transpose()) : MatrixXq(MatrixXq::Zero(sz, sz)));
      for (Index e = 0; e < c.ambient.back().size(); ++e) scale = std::max(scale, abs_value(c.ambient.back()(e)));
    }
    for (auto& b : c.ambient) b /= scale;
    best = std::move(c);
    if (best->rank == max_rank) break;
  }
  return best;
}

// Exact basis of the column span of a numerical basis v, read off its
// rounded reduced row echelon form.
std::optional<MatrixXq> snap_range(const MatrixXd& v, long long den) {
  const auto e = rref<double>(MatrixXd(v.transpose()), v.rows(), 1e-6);
  if (e.rank() != v.cols()) return std::nullopt;
  MatrixXq rows(e.rank(), v.rows());
  for (Index i = 0; i < e.rank(); ++i)
    for (Index j = 0; j < v.rows(); ++j) rows(i, j) = best_rational(e.reduced(i, j), den);
  return MatrixXq(rows.transpose());
}

// Rounds a numerical functional (packed, full cone) to an exact one. First
// in the coordinates of the whole face; failing full rank, inside the
// rounded range of the functional's leading eigenvectors, which keeps the
// rounding from leaving the linear span of the admissible set.
std::optional<Snapped> snap(const ExactState& s, const ConeShape& shape, const VectorXd& candidate) {
  if (candidate.size() != shape.packed_size()) return std::nullopt;
  const std::size_t nb = s.range.size();
  const BlockVec target = unpack(shape, candidate);
  Index face_rank = 0;
  for (const auto& r : s.range) face_rank += r.cols();

  std::optional<Snapped> best = snap_in(s, s.range, target);
  auto consider = [&](std::optional<Snapped> c) {
    if (c && (!best || c->rank > best->rank)) best = std::move(c);
  };

  // Leading eigenvectors per block, in face coordinates.
  struct Eig {
    double value;
    std::size_t block;
    Index col;
  };
  std::vector<Eigen::SelfAdjointEigenSolver<MatrixXd>> es(nb);
  std::vector<Eig> all;
  for (std::size_t b = 0; b < nb; ++b) {
    if (s.range[b].cols() == 0) continue;
    const MatrixXd pinv = to_double(s.range[b]).completeOrthogonalDecomposition().pseudoInverse();
    es[b].compute(MatrixXd(pinv * target[b] * pinv.transpose()));
    for (Index i = 0; i < es[b].eigenvalues().size(); ++i) all.push_back({es[b].eigenvalues()(i), b, i});
  }
  std::sort(all.begin(), all.end(), [](const Eig& a, const Eig& b) { return a.value > b.value; });
  if (all.empty() || !(all.front().value > 0)) return best;
  const double top = all.front().value;
  std::vector<std::pair<double, std::size_t>> cuts;
  for (std::size_t j = 1; j <= all.size(); ++j) {
    const double kept = all[j - 1].value, dropped = j < all.size() ? std::max(all[j].value, 0.0) : 0.0;
    if (dropped > 1e-3 * top || kept <= 1e2 * dropped || kept <= 1e-6 * top) continue;
    cuts.emplace_back(dropped > 0 ? kept / dropped : 1e300, j);
  }
  std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  if (cuts.size() > 3) cuts.resize(3);

  for (const auto& cut : cuts) {
    if (best && best->rank >= static_cast<Index>(cut.second)) continue;
    std::vector<MatrixXd> v(nb);
    for (std::size_t b = 0; b < nb; ++b) v[b] = MatrixXd(s.range[b].cols(), 0);
    for (std::size_t j = 0; j < cut.second; ++j) {
      const Eig& e = all[j];
      v[e.block].conservativeResize(Eigen::NoChange, v[e.block].cols() + 1);
      v[e.block].col(v[e.block].cols() - 1) = es[e.block].eigenvectors().col(e.col);
    }
    std::vector<MatrixXq> last;
    for (long long den : kDenominators) {
      std::vector<MatrixXq> p(nb);
      bool ok = true;
      for (std::size_t b = 0; b < nb && ok; ++b) {
        if (v[b].cols() == 0) {
          p[b] = MatrixXq(s.range[b].rows(), 0);
          continue;
        }
        const auto q = snap_range(v[b], den);
        ok = q.has_value();
        if (ok) p[b] = s.range[b] * *q;
      }
      if (!ok || p == last) continue;
      consider(snap_in(s, p, target));
      last = p;
      if (best && best->rank >= static_cast<Index>(cut.second)) break;
    }
  }
  if (best) best->definite = best->rank == face_rank;
  return best;
}

// F ∩ ℓ^⊥ and W ∩ lspan(F ∩ ℓ^⊥), exactly.
ExactState advance(const ExactState& s, const Snapped& ell) {
  ExactState next;
  for (std::size_t b = 0; b < s.range.size(); ++b) {
    const MatrixXq& r = s.range[b];
    next.range.push_back(r.cols() ? MatrixXq(r * nullspace_basis<Rational>(MatrixXq(ell.ambient[b] * r))) : r);
  }
  if (s.w.empty()) return next;
  std::vector<MatrixXq> rows;
  for (std::size_t b = 0; b < s.range.size(); ++b) {
    const MatrixXq& r = next.range[b];
    const Index sz = r.rows();
    if (r.cols() == sz) continue;
    const MatrixXq k = r.cols() ? nullspace_basis<Rational>(MatrixXq(r.transpose())) : MatrixXq(MatrixXq::Identity(sz, sz));
    MatrixXq e(k.cols() * sz, static_cast<Index>(s.w.size()));
    for (std::size_t j = 0; j < s.w.size(); ++j) {
      const MatrixXq kx = k.transpose() * s.w[j][b];
      e.col(static_cast<Index>(j)) = Eigen::Map<const VectorXq>(kx.data(), kx.size());
    }
    rows.push_back(std::move(e));
  }
  Index total = 0;
  for (const auto& e : rows) total += e.rows();
  MatrixXq all(total, static_cast<Index>(s.w.size()));
  Index at = 0;
  for (const auto& e : rows) {
    all.middleRows(at, e.rows()) = e;
    at += e.rows();
  }
  const MatrixXq coef = total ? nullspace_basis<Rational>(all) : MatrixXq(MatrixXq::Identity(all.cols(), all.cols()));
  std::vector<BlockVecq> w;
  for (Index c = 0; c < coef.cols(); ++c) {
    BlockVecq v;
    for (std::size_t b = 0; b < s.range.size(); ++b) {
      MatrixXq m = MatrixXq::Zero(s.w.front()[b].rows(), s.w.front()[b].cols());
      for (std::size_t j = 0; j < s.w.size(); ++j)
        if (coef(static_cast<Index>(j), c) != 0) m += coef(static_cast<Index>(j), c) * s.w[j][b];
      v.push_back(std::move(m));
    }
    w.push_back(std::move(v));
  }
  next.w = independent(w);
  return next;
}

// W ∩ lspan(F ∩ ℓ^⊥) as {w ∈ W : ℓ w = 0 blockwise}. The products weigh
// each kernel direction by the functional's eigenvalues, so directions
// that ℓ barely sees do not tilt the test the way an eigenvector cut does.
Subspace annihilated(const Subspace& w, const FaceDescriptor& face, const BlockVec& ell, const FaceDescriptor& next,
                     double tol) {
  if (w.empty()) return w;
  const auto sizes = face.reduced_sizes();
  double scale = 0;
  for (const auto& b : ell) scale = std::max(scale, b.cwiseAbs().maxCoeff());
  Index rows = 0;
  for (Index s : sizes) rows += s * s;
  MatrixXd resid(rows, w.dim());
  for (Index j = 0; j < w.dim(); ++j) {
    const BlockVec y = unpack_blocks(sizes, face.reduce_packed(w.basis().col(j)));
    Index at = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      const MatrixXd p = ell[b] * y[b] / scale;
      resid.col(j).segment(at, p.size()) = Eigen::Map<const VectorXd>(p.data(), p.size());
      at += p.size();
    }
  }
  const MatrixXd alpha = null_space(resid, tol);
  if (alpha.cols() == 0) return Subspace(w.ambient());
  MatrixXd inside = w.basis() * alpha;
  for (Index j = 0; j < inside.cols(); ++j) inside.col(j) = next.project_span(inside.col(j));
  return Subspace::span(inside, tol);
}

void numeric_reduce(FacialResult& res, const ConeShape& shape, FaceDescriptor face, Subspace w, VectorXd cumulative,
                    const OracleOptions& opt) {
  const Index max_steps = shape.trace_dim() + 1;
  while (res.length() <= max_steps) {
    const OracleOutcome o = relint_or_support(w, face, opt);
    res.steps.push_back({o.kind, w.dim(), face.total_rank(), o.lambda, o.residual, o.iterations});
    switch (o.kind) {
      case OutcomeKind::Interior:
        res.terminal = OutcomeKind::Interior;
        res.relint_point = o.point;
        return;
      case OutcomeKind::ZeroOnly:
        cumulative += o.functional;
        res.chain.push_back(cumulative);
        res.faces.push_back(FaceDescriptor::zero(shape));
        res.terminal = OutcomeKind::ZeroOnly;
        return;
      case OutcomeKind::Support: {
        FaceDescriptor next = face.meet_reduced(o.reduced_functional, opt.tol);
        if (next.total_rank() >= face.total_rank()) {
          res.terminal = OutcomeKind::Unresolved;
          res.note = "support functional did not shrink the face";
          return;
        }
        cumulative += o.functional;
        res.chain.push_back(cumulative);
        res.faces.push_back(next);
        w = annihilated(w, face, o.reduced_functional, next, std::max(opt.tol, 1e-5));
        face = std::move(next);
        break;
      }
      case OutcomeKind::Unresolved:
        res.terminal = OutcomeKind::Unresolved;
        res.note = o.note;
        return;
    }
  }
  res.terminal = OutcomeKind::Unresolved;
  res.note = "facial reduction did not terminate";
}

}  // namespace

FacialResult facial_reduce(const HomogeneousSystem& h, const OracleOptions& opt) {
  FacialResult res;
  const ConeShape& shape = h.shape;
  res.faces.push_back(FaceDescriptor::full(shape));
  if (h.exact_generators.empty()) {
    numeric_reduce(res, shape, res.faces.back(), h.subspace, VectorXd::Zero(shape.packed_size()), opt);
    return res;
  }

  // Numerical steps guided into exact arithmetic: each exposing functional
  // is snapped to a rational one, so faces and W stay exact and errors do
  // not compound along the chain.
  ExactState st;
  for (Index s : shape.blocks()) st.range.push_back(MatrixXq::Identity(s, s));
  st.w = independent(h.exact_generators);
  BlockVecq cum;
  for (Index s : shape.blocks()) cum.push_back(MatrixXq::Zero(s, s));
  const Index max_steps = shape.trace_dim() + 1;
  for (Index step = 1; step <= max_steps; ++step) {
    const FaceDescriptor face = numeric_face(shape, st);
    const Subspace w = numeric_span(shape, st.w);
    const OracleOutcome o = relint_or_support(w, face, opt);
    if (o.kind == OutcomeKind::Interior) {
      res.steps.push_back({o.kind, w.dim(), face.total_rank(), o.lambda, o.residual, o.iterations});
      res.terminal = OutcomeKind::Interior;
      res.relint_point = o.point;
      res.exact = true;
      return res;
    }
    std::optional<Snapped> ell;
    for (const VectorXd* c : {&o.dual_estimate, &o.functional}) {
      auto t = snap(st, shape, *c);
      if (t && (!ell || t->rank > ell->rank)) ell = std::move(t);
    }
    if (!ell) {
      numeric_reduce(res, shape, face, w, pack(shape, to_double(cum)), opt);
      return res;
    }
    const OutcomeKind kind = ell->definite ? OutcomeKind::ZeroOnly : OutcomeKind::Support;
    res.steps.push_back({kind, w.dim(), face.total_rank(), o.lambda, 0.0, o.iterations});
    for (std::size_t b = 0; b < cum.size(); ++b) cum[b] += ell->ambient[b];
    res.exact_chain.push_back(cum);
    res.chain.push_back(pack(shape, to_double(cum)));
    if (ell->definite) {
      res.faces.push_back(FaceDescriptor::zero(shape));
      res.terminal = OutcomeKind::ZeroOnly;
      res.exact = true;
      return res;
    }
    st = advance(st, *ell);
    res.faces.push_back(numeric_face(shape, st));
  }
  res.terminal = OutcomeKind::Unresolved;
  res.note = "facial reduction did not terminate";
  return res;
}

CertificateChain to_certificate_chain(const HomogeneousSystem& h, const FacialResult& r) {
  if (h.shape.psd.size() != 1 || h.shape.orthant != 1) throw std::invalid_argument("not a product embedding");
  CertificateChain chain;
  for (const auto& v : r.chain) {
    const BlockVec b = unpack(h.shape, v);
    chain.links.push_back({SymMatd::fromFull(b[0]), b[1](0, 0)});
  }
  return chain;
}

namespace {

// Pencil coordinates of a point (X, t) of the embedding: X = t·A0 + Σ x_i A_i.
VectorXd witness_from_point(const Pencild& p, const SymMatd& x, double t) {
  const Index n = p.num_vars();
  if (n == 0) return VectorXd();
  MatrixXd g(svec_size(p.dim()), n);
  for (Index i = 0; i < n; ++i) g.col(i) = svec_iso(p.generator(i));
  const VectorXd rhs = svec_iso(x) - t * svec_iso(p.constant());
  return VectorXd(g.colPivHouseholderQr().solve(rhs)) / t;
}

}  // namespace

FeasibilityReport classify(const Pencild& p, const ClassifyOptions& opt) {
  if (!p.proper()) throw ImproperPencilError();
  const double tol = opt.oracle.tol;
  FeasibilityReport rep;
  Diagnostics& diag = rep.diagnostics;
  diag.tol = tol;
  diag.rho = opt.rho;
  const Index d = p.dim(), n = p.num_vars();

  // No variables: the spectrahedron is {A0} or empty.
  if (n == 0) {
    const auto chk = psd_check(p.constant(), tol);
    if (chk.psd) {
      rep.type = chk.min_eig > tol ? FeasibilityType::StronglyFeasible : FeasibilityType::WeaklyFeasible;
      rep.witness = VectorXd();
      diag.witness_min_eig = chk.min_eig;
      return rep;
    }
  }

  const HomogeneousSystem h = embed_product(p);
  const FacialResult fr = facial_reduce(h, opt.oracle);
  diag.steps = fr.steps;
  for (const auto& s : fr.steps) diag.iterations += s.iterations;
  if (fr.terminal == OutcomeKind::Unresolved) throw UnresolvedError("unresolved: " + fr.note, diag);
  assert_chain_bound(fr.length(), d, n);

  bool infeasible = false;
  if (fr.terminal == OutcomeKind::ZeroOnly) {
    infeasible = true;
  } else {
    const VectorXd& pt = fr.relint_point;
    const double marker = pt(*h.marker);
    diag.marker = marker;
    const bool pinned = fr.terminal_face().orthant_active(0);
    infeasible = marker <= tol * (1.0 + pt.norm());
    if (infeasible != pinned) {
      diag.notes.push_back("unresolved margin: marker " + std::to_string(marker) + " disagrees with the face");
      throw UnresolvedError("unresolved margin at the marker coordinate", diag);
    }
    if (!infeasible) {
      const BlockVec b = unpack(h.shape, pt);
      const SymMatd x = SymMatd::fromFull(b[0]);
      rep.witness = witness_from_point(p, x, marker);
      diag.witness_min_eig = psd_check(p.evaluate(*rep.witness), tol).min_eig;
      rep.type = fr.length() == 0 ? FeasibilityType::StronglyFeasible : FeasibilityType::WeaklyFeasible;
    }
  }

  if (infeasible) {
    rep.chain = to_certificate_chain(h, fr);
    const auto vr = verify_chain(p, *rep.chain, tol);
    if (!vr.valid) {
      diag.notes.push_back("emitted chain failed verification: " + vr.message);
      throw UnresolvedError("certificate chain did not verify", diag);
    }
    // A single element (C, c) with c > 0 vanishes on (A0, 1), so C/c is an
    // affine certificate with ⟨C, A0⟩ = −1.
    const ChainLink& first = rep.chain->links.front();
    const bool single = fr.length() == 1 && first.c > 0;
    auto chain_cert = [&] {
      AffineCertificated cert;
      cert.c = (1.0 / first.c) * first.c_mat;
      cert.value = inner(cert.c, p.constant());
      cert.margin = -cert.value / cert.c.matrix().trace();
      return cert;
    };
    if (single && fr.terminal == OutcomeKind::ZeroOnly) {
      rep.type = FeasibilityType::StronglyInfeasible;
      rep.stable = true;
      rep.affine_cert = chain_cert();
    } else {
      const auto sep = strong_separation(p, opt.rho, opt.oracle);
      diag.separation_value = sep.optimal_value;
      diag.separation_trouble = sep.solver_trouble;
      if (!sep.note.empty()) diag.notes.push_back("separation: " + sep.note);
      if (sep.found) {
        rep.type = FeasibilityType::StronglyInfeasible;
        rep.affine_cert = sep.certificate;
      } else if (single) {
        rep.type = FeasibilityType::StronglyInfeasible;
        rep.affine_cert = chain_cert();
        diag.notes.push_back("affine certificate taken from the single chain element");
      } else {
        rep.type = FeasibilityType::WeaklyInfeasible;
        diag.notes.push_back("no affine certificate with trace <= rho; weak infeasibility is relative to this cap");
      }
    }
  }

  if (opt.cross_check && n >= 1) {
    const LiftVerdict lv = infeasible_by_lift(p, opt.oracle);
    if (lv.unresolved) {
      diag.notes.push_back("lift cross-check unresolved: " + lv.note);
    } else {
      diag.lift_agrees = lv.infeasible == infeasible;
      if (!*diag.lift_agrees) diag.notes.push_back("lift cross-check disagrees with facial reduction");
    }
  }
  return rep;
}

}  // namespace conicscope
