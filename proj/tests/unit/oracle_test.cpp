#include "conicscope/oracle.hpp"
#include "conicscope/sdp_solver.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace conicscope;
using test::sym;

namespace {

Subspace span_of(std::initializer_list<SymMatd> ms) {
  const Index d = ms.begin()->dim();
  MatrixXd cols(svec_size(d), static_cast<Index>(ms.size()));
  Index j = 0;
  for (const auto& m : ms) cols.col(j++) = svec_iso(m);
  return Subspace::span(cols);
}

ConeShape psd(Index d) { return ConeShape{{d}, 0}; }

}  // namespace

TEST_CASE("aux SDP: closed-form instances") {
  // min ⟨I,X⟩ s.t. ⟨E11,X⟩ = 1.
  SdpProblem p;
  p.blocks = {2};
  p.c = {MatrixXd::Identity(2, 2)};
  p.a = {{(MatrixXd(2, 2) << 1, 0, 0, 0).finished()}};
  p.b = VectorXd::Ones(1);
  const SdpResult r = aux_sdp_solve(p);
  REQUIRE(r.converged());
  CHECK(r.primal_obj == doctest::Approx(1).epsilon(1e-7));
  CHECK((r.x[0] - (MatrixXd(2, 2) << 1, 0, 0, 0).finished()).norm() < 1e-5);

  // max λ s.t. I − λI ⪰ 0, i.e. min ⟨I,X⟩ with tr X = 1 in the dual.
  SdpProblem q;
  q.blocks = {3};
  q.c = {MatrixXd::Identity(3, 3)};
  q.a = {{MatrixXd::Identity(3, 3)}};
  q.b = VectorXd::Ones(1);
  const SdpResult s = aux_sdp_solve(q);
  REQUIRE(s.converged());
  CHECK(s.y(0) == doctest::Approx(1).epsilon(1e-7));
}

TEST_CASE("aux SDP: infeasible input is reported, not crashed") {
  // ⟨I,X⟩ = −1 has no PSD solution.
  SdpProblem p;
  p.blocks = {2};
  p.c = {MatrixXd::Zero(2, 2)};
  p.a = {{MatrixXd::Identity(2, 2)}};
  p.b = -VectorXd::Ones(1);
  SdpOptions o;
  o.max_iters = 50;
  const SdpResult r = aux_sdp_solve(p, o);
  CHECK_FALSE(r.converged());
}

TEST_CASE("relint or support: trivial subspaces") {
  const FaceDescriptor full = FaceDescriptor::full(psd(2));

  const OracleOutcome a = relint_or_support(span_of({SymMatd::identity(2)}), full);
  REQUIRE(a.kind == OutcomeKind::Interior);
  const BlockVec pa = unpack(psd(2), a.point);
  CHECK((pa[0] - 0.5 * MatrixXd::Identity(2, 2)).norm() < 1e-6);
  CHECK(a.lambda == doctest::Approx(0.5).epsilon(1e-6));

  const OracleOutcome b = relint_or_support(span_of({sym({{1, 0}, {0, 0}})}), full);
  REQUIRE(b.kind == OutcomeKind::Support);
  const BlockVec fb = unpack(psd(2), b.functional);
  CHECK(std::abs(fb[0](0, 0)) < 1e-6);
  CHECK(std::abs(fb[0](0, 1)) < 1e-6);
  CHECK(fb[0](1, 1) > 0);

  const OracleOutcome c = relint_or_support(span_of({sym({{1, 0}, {0, -1}})}), full);
  REQUIRE(c.kind == OutcomeKind::ZeroOnly);
  const BlockVec fc = unpack(psd(2), c.functional);
  CHECK(min_eig(fc) > 0);
}

TEST_CASE("relint or support: the unique supporting hyperplane") {
  // span{E11, [[0,0,-1],[0,1,0],[-1,0,0]]} in Sym^3 is exposed only by E33.
  const Subspace w = span_of({SymMatd::unit(3, 0, 0), sym({{0, 0, -1}, {0, 1, 0}, {-1, 0, 0}})});
  const OracleOutcome o = relint_or_support(w, FaceDescriptor::full(psd(3)));
  REQUIRE(o.kind == OutcomeKind::Support);
  MatrixXd f = unpack(psd(3), o.functional)[0];
  f /= f(2, 2);
  MatrixXd e33 = MatrixXd::Zero(3, 3);
  e33(2, 2) = 1;
  CHECK((f - e33).norm() < 1e-5);
}

TEST_CASE("strong separation") {
  const Pencild p(sym({{-1, 0}, {0, -1}}), {sym({{0, 1}, {1, 0}})});
  const SeparationResult s = strong_separation(p);
  REQUIRE(s.found);
  const SymMatd& c = s.certificate->c;
  CHECK(std::abs(c(0, 1)) < 1e-8);
  CHECK(c(0, 0) == doctest::Approx(c(1, 1)));
  CHECK(s.certificate->value == doctest::Approx(-1));

  CHECK_FALSE(strong_separation(Pencild(sym({{0, 1}, {1, 0}}), {sym({{0, 0}, {0, 1}})})).found);
  CHECK_FALSE(strong_separation(Pencild(SymMatd::identity(2), {sym({{0, 1}, {1, 0}})})).found);
}
