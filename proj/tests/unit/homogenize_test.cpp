#include "conicscope/homogenize.hpp"
#include "conicscope/oracle.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace conicscope;
using test::sym;
using test::vec;

namespace {

const Pencild kStandard(sym({{0, 1}, {1, 0}}), {sym({{0, 0}, {0, 1}})});

const Pencild kKlep(sym({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}), {sym({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}),
                                                             sym({{0, 0, 0}, {0, 1, 0}, {0, 0, 0}})});

}  // namespace

TEST_CASE("span of the affine space") {
  CHECK(span_lift(kStandard).dim() == 2);
  CHECK(span_lift(Pencild(SymMatd::identity(2), {})).dim() == 1);
  CHECK_THROWS_AS(span_lift(Pencild(sym({{1, 0}, {0, 0}}), {sym({{1, 0}, {0, 0}})})), ImproperPencilError);
}

TEST_CASE("product embedding") {
  const HomogeneousSystem h = embed_product(kStandard);
  CHECK(h.shape.psd == std::vector<Index>{2});
  CHECK(h.shape.orthant == 1);
  CHECK(h.subspace.dim() == 2);
  REQUIRE(h.marker.has_value());

  const HomogeneousSystem id = embed_product(Pencild(SymMatd::identity(2), {}));
  REQUIRE(id.subspace.dim() == 1);
  VectorXd v = pack(id.shape, {MatrixXd::Identity(2, 2), MatrixXd::Ones(1, 1)});
  CHECK(id.subspace.contains(v / v.norm()));
}

TEST_CASE("stably infeasible embedding meets the cone only at zero") {
  // A_i ⊥ I and ⟨I, A0⟩ < 0.
  const Pencild p(sym({{-1, 0}, {0, -1}}), {sym({{0, 1}, {1, 0}})});
  const HomogeneousSystem h = embed_product(p);
  const OracleOutcome o = relint_or_support(h.subspace, FaceDescriptor::full(h.shape));
  CHECK(o.kind == OutcomeKind::ZeroOnly);
}

TEST_CASE("lifted LMI of the standard example") {
  const LiftedLMI<double> l = lift_full(kStandard);
  CHECK(l.block_sizes == std::vector<Index>{2, 2});
  // A^(h)(x0, x1, r) = [[0,x0],[x0,x1]] ⊕ [[x0,x1],[x1,r]].
  const SymMatd at = l.evaluate(2.0, vec({3}), 5.0);
  CHECK(LiftedLMI<double>::block(at, l.block_sizes, 0) == sym({{0, 2}, {2, 3}}));
  CHECK(LiftedLMI<double>::block(at, l.block_sizes, 1) == sym({{2, 3}, {3, 5}}));
  CHECK(at(0, 2) == 0.0);
}

TEST_CASE("lifted LMI of the Klep-Schweighofer pencil") {
  const LiftedLMI<double> l = lift_full(kKlep);
  CHECK(l.block_sizes == std::vector<Index>{3, 2, 2});
  const SymMatd at = l.evaluate(7.0, vec({2, 3}), 11.0);
  CHECK(LiftedLMI<double>::block(at, l.block_sizes, 0) == sym({{0, 2, 0}, {2, 3, 7}, {0, 7, 2}}));
  CHECK(LiftedLMI<double>::block(at, l.block_sizes, 1) == sym({{7, 2}, {2, 11}}));
  CHECK(LiftedLMI<double>::block(at, l.block_sizes, 2) == sym({{7, 3}, {3, 11}}));
}

TEST_CASE("lift verdicts") {
  CHECK(infeasible_by_lift(kStandard).infeasible);
  const LiftVerdict k = infeasible_by_lift(kKlep);
  CHECK(k.infeasible);
  REQUIRE(k.coordinates.size() == 4);
  CHECK(k.coordinates.head(3).cwiseAbs().maxCoeff() <= 1e-6 * k.coordinates.norm());
  CHECK(k.coordinates(3) > 0);

  const LiftVerdict f = infeasible_by_lift(Pencild(SymMatd::identity(2), {sym({{1, 0}, {0, 0}})}));
  CHECK_FALSE(f.infeasible);
  REQUIRE(f.witness.has_value());
  CHECK(psd_check(Pencild(SymMatd::identity(2), {sym({{1, 0}, {0, 0}})}).evaluate(*f.witness), 1e-8).psd);

  // diag(x − 1, 1) ⪰ 0 is feasible only for x ≥ 1.
  const LiftVerdict one = infeasible_by_lift(Pencild(sym({{-1, 0}, {0, 1}}), {sym({{1, 0}, {0, 0}})}));
  CHECK_FALSE(one.infeasible);
  REQUIRE(one.witness.has_value());
  CHECK((*one.witness)(0) >= 1 - 1e-6);
}

namespace {

ProjSpecRep<double> hyperbola() {
  return ProjSpecRep<double>(sym({{0, 1}, {1, 0}}), {sym({{1, 0}, {0, 0}}), sym({{0, 0}, {0, 1}})}, {});
}

ProjSpecRep<double> point(double a, double b) {
  // diag(x − a, a − x, y − b, b − y) ⪰ 0.
  return ProjSpecRep<double>(SymMatd::diagonal(vec({-a, a, -b, b})),
                             {SymMatd::diagonal(vec({1, -1, 0, 0})), SymMatd::diagonal(vec({0, 0, 1, -1}))}, {});
}

}  // namespace

TEST_CASE("conic hull representation") {
  const auto cone = cone_hull_rep(hyperbola());
  CHECK(hull_membership(cone, vec({0, 0})).member);
  CHECK(hull_membership(cone, vec({2, 2})).member);
  CHECK_FALSE(hull_membership(cone, vec({-1, 0})).member);
}

TEST_CASE("convex hull of a union") {
  const auto rep = convex_hull_union({hyperbola(), point(0, 0)});
  CHECK(hull_membership(rep, vec({1, 1})).member);
  CHECK(hull_membership(rep, vec({0, 0})).member);
  CHECK_FALSE(hull_membership(rep, vec({-1, -1})).member);

  const auto seg = convex_hull_union({point(0, 0), point(2, 0)});
  CHECK(hull_membership(seg, vec({1, 0})).member);
  CHECK_FALSE(hull_membership(seg, vec({3, 0})).member);

  const auto single = convex_hull_union({hyperbola()});
  CHECK(hull_membership(single, vec({1, 1})).member);
  CHECK(hull_membership(single, vec({4, 0.5})).member);
  CHECK_FALSE(hull_membership(single, vec({0.5, 0.5})).member);
}
