#include "conicscope/homogenize.hpp"

#include "conicscope/facial.hpp"

#include <Eigen/QR>

namespace conicscope {

namespace {

VectorXd pack_with_marker(const SymMatd& a, double t) {
  const VectorXd s = svec_iso(a);
  VectorXd v(s.size() + 1);
  v << s, t;
  return v;
}

MatrixXq exact(const MatrixXd& m) { return m.cast<Rational>(); }

Subspace span_of_columns(const MatrixXd& cols, Index ambient, Index from) {
  if (cols.cols() - from <= 0) return Subspace(ambient);
  return Subspace::span(cols.rightCols(cols.cols() - from), 1e-12);
}

}  // namespace

Subspace span_lift(const Pencild& p) {
  if (!p.proper()) throw ImproperPencilError();
  MatrixXd g(svec_size(p.dim()), p.num_vars() + 1);
  g.col(0) = svec_iso(p.constant());
  for (Index i = 0; i < p.num_vars(); ++i) g.col(i + 1) = svec_iso(p.generator(i));
  return Subspace::span(g, 1e-12);
}

HomogeneousSystem embed_product(const Pencild& p) {
  if (!p.proper()) throw ImproperPencilError();
  HomogeneousSystem h;
  h.shape = ConeShape{{p.dim()}, 1};
  const Index len = h.shape.packed_size();
  h.generators = MatrixXd(len, p.num_vars() + 1);
  h.generators.col(0) = pack_with_marker(p.constant(), 1.0);
  for (Index i = 0; i < p.num_vars(); ++i) h.generators.col(i + 1) = pack_with_marker(p.generator(i), 0.0);
  h.subspace = Subspace::span(h.generators, 1e-12);
  h.marker = len - 1;
  h.lin_part = span_of_columns(h.generators, len, 1);
  h.exact_generators.push_back({exact(p.constant().matrix()), MatrixXq::Constant(1, 1, Rational(1))});
  for (const auto& g : p.generators()) h.exact_generators.push_back({exact(g.matrix()), MatrixXq::Zero(1, 1)});
  return h;
}

HomogeneousSystem homogeneous_system(const std::vector<SymMatd>& basis) {
  if (basis.empty()) throw std::invalid_argument("homogeneous_system: empty basis");
  HomogeneousSystem h;
  h.shape = ConeShape{{basis.front().dim()}, 0};
  h.generators = MatrixXd(h.shape.packed_size(), static_cast<Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) h.generators.col(static_cast<Index>(i)) = svec_iso(basis[i]);
  h.subspace = Subspace::span(h.generators, 1e-12);
  h.lin_part = h.subspace;
  for (const auto& b : basis) h.exact_generators.push_back({exact(b.matrix())});
  return h;
}

HomogeneousSystem lifted_system(const LiftedLMI<double>& lifted) {
  HomogeneousSystem h;
  h.shape = ConeShape{lifted.block_sizes, 0};
  const Index len = h.shape.packed_size();
  h.generators = MatrixXd(len, lifted.num_vars());
  for (Index v = 0; v < lifted.num_vars(); ++v) {
    BlockVec blocks;
    for (Index b = 0; b < static_cast<Index>(lifted.block_sizes.size()); ++b)
      blocks.push_back(LiftedLMI<double>::block(lifted.coefficients[static_cast<std::size_t>(v)], lifted.block_sizes, b)
                           .matrix());
    h.generators.col(v) = pack(h.shape, blocks);
    BlockVecq eb;
    for (const auto& b : blocks) eb.push_back(exact(b));
    h.exact_generators.push_back(std::move(eb));
  }
  h.subspace = Subspace::span(h.generators, 1e-12);
  h.marker = h.shape.block_offset(1);
  h.lin_part = span_of_columns(h.generators, len, 1);
  return h;
}

LiftVerdict infeasible_by_lift(const Pencild& p, const OracleOptions& opt) {
  const LiftedLMI<double> lifted = lift_full(p);
  const HomogeneousSystem h = lifted_system(lifted);
  const FacialResult fr = facial_reduce(h, opt);
  LiftVerdict v;
  v.steps = fr.length();
  if (fr.terminal != OutcomeKind::Interior) {
    v.unresolved = true;
    v.note = "lifted facial reduction ended with " + to_string(fr.terminal) + (fr.note.empty() ? "" : ": " + fr.note);
    return v;
  }
  v.coordinates = h.generators.colPivHouseholderQr().solve(fr.relint_point);
  const double x0 = v.coordinates(0);
  // Kernel directions of numerically reduced faces carry tilts near 1e-8,
  // which leak into x0; the marker is read at a coarser scale.
  if (x0 > std::max(opt.tol, 1e-6) * (1.0 + v.coordinates.norm())) {
    v.infeasible = false;
    v.witness = v.coordinates.segment(1, p.num_vars()) / x0;
  } else {
    v.infeasible = true;
  }
  return v;
}

ProjSpecRep<double> cone_hull_rep(const ProjSpecRep<double>& s) {
  const Index k = s.size(), n = s.num_x(), total = k + 2 * n;
  auto embed = [&](const SymMatd& top, auto&& fill) {
    MatrixXd m = MatrixXd::Zero(total, total);
    m.topLeftCorner(k, k) = top.matrix();
    for (Index i = 0; i < n; ++i) fill(m, k + 2 * i, i);
    return SymMatd::fromUpper(m);
  };
  const SymMatd zero_top = SymMatd::zero(k);
  std::vector<SymMatd> b, c;
  for (Index i = 0; i < n; ++i)
    b.push_back(embed(s.b()[static_cast<std::size_t>(i)], [i](MatrixXd& m, Index o, Index j) {
      if (i == j) m(o, o + 1) = m(o + 1, o) = 1;
    }));
  c.push_back(embed(s.a(), [](MatrixXd& m, Index o, Index) { m(o, o) = 1; }));          // λ
  c.push_back(embed(zero_top, [](MatrixXd& m, Index o, Index) { m(o + 1, o + 1) = 1; }));  // r
  for (const auto& cj : s.c()) c.push_back(embed(cj, [](MatrixXd&, Index, Index) {}));
  return ProjSpecRep<double>(SymMatd::zero(total), std::move(b), std::move(c));
}

ProjSpecRep<double> convex_hull_union(const std::vector<ProjSpecRep<double>>& reps) {
  if (reps.empty()) throw std::invalid_argument("convex_hull_union: no sets");
  const Index n = reps.front().num_x();
  for (const auto& r : reps)
    if (r.num_x() != n) throw DimensionError("convex_hull_union: mixed dimensions");

  // K_i = cone(S_i × {1}) in R^{n+1}.
  std::vector<ProjSpecRep<double>> cones;
  for (const auto& r : reps) {
    const Index k = r.size();
    auto pad = [&](const SymMatd& m, double e1, double e2) {
      MatrixXd out = MatrixXd::Zero(k + 2, k + 2);
      out.topLeftCorner(k, k) = m.matrix();
      out(k, k) = e1;
      out(k + 1, k + 1) = e2;
      return SymMatd::fromUpper(out);
    };
    std::vector<SymMatd> b, c;
    for (const auto& bi : r.b()) b.push_back(pad(bi, 0, 0));
    b.push_back(pad(SymMatd::zero(k), 1, -1));
    for (const auto& cj : r.c()) c.push_back(pad(cj, 0, 0));
    cones.push_back(cone_hull_rep(ProjSpecRep<double>(pad(r.a(), -1, 1), std::move(b), std::move(c))));
  }

  // Minkowski sum: u_1 = X − Σ_{i≥2} u_i, block-diagonal over the summands.
  std::vector<Index> sizes, offsets;
  Index total = 0;
  for (const auto& kc : cones) {
    offsets.push_back(total);
    sizes.push_back(kc.size());
    total += kc.size();
  }
  auto place = [&](std::size_t i, const SymMatd& m, double scale, MatrixXd& into) {
    into.block(offsets[i], offsets[i], sizes[i], sizes[i]) += scale * m.matrix();
  };
  std::vector<MatrixXd> bx(static_cast<std::size_t>(n + 1), MatrixXd::Zero(total, total));
  for (Index j = 0; j <= n; ++j) place(0, cones[0].b()[static_cast<std::size_t>(j)], 1.0, bx[static_cast<std::size_t>(j)]);
  std::vector<SymMatd> lift;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    if (i > 0) {
      for (Index j = 0; j <= n; ++j) {
        MatrixXd m = MatrixXd::Zero(total, total);
        place(0, cones[0].b()[static_cast<std::size_t>(j)], -1.0, m);
        place(i, cones[i].b()[static_cast<std::size_t>(j)], 1.0, m);
        lift.push_back(SymMatd::fromUpper(m));
      }
    }
    for (const auto& cz : cones[i].c()) {
      MatrixXd m = MatrixXd::Zero(total, total);
      place(i, cz, 1.0, m);
      lift.push_back(SymMatd::fromUpper(m));
    }
  }
  // Slice at the last coordinate = 1.
  std::vector<SymMatd> b;
  for (Index j = 0; j < n; ++j) b.push_back(SymMatd::fromUpper(bx[static_cast<std::size_t>(j)]));
  return ProjSpecRep<double>(SymMatd::fromUpper(bx[static_cast<std::size_t>(n)]), std::move(b), std::move(lift));
}

MembershipResult hull_membership(const ProjSpecRep<double>& rep, const VectorXd& x, const OracleOptions& opt) {
  MembershipResult out;
  const SymMatd a = rep.offset_at(x);
  // Keep an independent subset of the lifting directions; dropping the
  // dependent ones leaves the affine space unchanged.
  std::vector<SymMatd> gens;
  MatrixXd cols(svec_size(a.dim()), 0);
  for (const auto& c : rep.c()) {
    MatrixXd trial(cols.rows(), cols.cols() + 1);
    trial << cols, svec(c);
    if (rank_of<double>(trial, 1e-10) == trial.cols()) {
      cols = trial;
      gens.push_back(c);
    }
  }
  const Pencild p(a, gens, 1e-10);
  if (!p.proper()) {
    out.member = true;  // 0 ∈ L
    out.type = "Improper";
    return out;
  }
  try {
    ClassifyOptions co;
    co.oracle = opt;
    co.cross_check = false;
    const auto rep_type = classify(p, co);
    out.type = to_string(rep_type.type);
    out.member = is_feasible(rep_type.type);
  } catch (const UnresolvedError&) {
    out.unresolved = true;
    out.type = "Unresolved";
  }
  return out;
}

}  // namespace conicscope
