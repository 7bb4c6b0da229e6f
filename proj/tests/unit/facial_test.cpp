#include "conicscope/certify.hpp"
#include "conicscope/corpus.hpp"
#include "conicscope/facial.hpp"
#include "conicscope/generator.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace conicscope;
using test::sym;

namespace {

const Pencild kStandard(sym({{0, 1}, {1, 0}}), {sym({{0, 0}, {0, 1}})});

HomogeneousSystem subspace_system(const std::vector<SymMatq>& basis) {
  std::vector<SymMatd> b;
  for (const auto& m : basis) b.push_back(m.cast<double>());
  return homogeneous_system(b);
}

}  // namespace

TEST_CASE("facial reduction on the bigger-face subspace") {
  const CorpusEntry e = corpus_get("biggerface");
  const FacialResult r = facial_reduce(subspace_system(e.subspace));
  REQUIRE(r.length() == 2);
  MatrixXd c1 = unpack(FaceDescriptor::full(r.faces.front().shape()).shape(), r.chain.front())[0];
  c1 /= c1.cwiseAbs().maxCoeff();
  MatrixXd e33 = MatrixXd::Zero(3, 3);
  e33(2, 2) = 1;
  CHECK((c1 - e33).norm() < 1e-8);
}

TEST_CASE("facial reduction chain length on the longest chain") {
  for (Index d = 3; d <= 5; ++d) {
    const FacialResult r = facial_reduce(subspace_system(corpus_get("longest_chain", d).subspace));
    CHECK(r.length() == d - 1);
  }
}

TEST_CASE("stably infeasible instance needs one step") {
  const auto g = generate_ground_truth(InstanceKind::StableInfeas, 4, 3, 7);
  const FacialResult r = facial_reduce(embed_product(g.pencil));
  CHECK(r.terminal == OutcomeKind::ZeroOnly);
  CHECK(r.length() == 1);
}

TEST_CASE("classify the standard weakly infeasible pencil") {
  const FeasibilityReport r = classify(kStandard);
  CHECK(r.type == FeasibilityType::WeaklyInfeasible);
  CHECK_FALSE(r.stable);
  REQUIRE(r.chain.has_value());
  CHECK(r.chain->length() == 2);
  CHECK(verify_chain(kStandard, *r.chain).valid);
  CHECK_FALSE(r.affine_cert.has_value());
  REQUIRE(r.diagnostics.lift_agrees.has_value());
  CHECK(*r.diagnostics.lift_agrees);
}

TEST_CASE("classify Klep-Schweighofer") {
  const FeasibilityReport r = classify(corpus_get("klep_schweighofer").pencil.cast<double>());
  CHECK(r.type == FeasibilityType::WeaklyInfeasible);
}

TEST_CASE("classify strongly feasible pencils") {
  for (Index d = 2; d <= 4; ++d) {
    std::vector<SymMatd> gens{SymMatd::unit(d, 0, 1), SymMatd::unit(d, d - 1, d - 1)};
    const Pencild p(SymMatd::identity(d), gens);
    const FeasibilityReport r = classify(p);
    CHECK(r.type == FeasibilityType::StronglyFeasible);
    REQUIRE(r.witness.has_value());
    CHECK(psd_check(p.evaluate(*r.witness), 0).min_eig > 0);
  }
}

TEST_CASE("classify a weakly feasible pencil") {
  // [[x, 0], [0, 0]] + E22·0 ... feasible only on the boundary: diag(x, 0).
  const Pencild p(sym({{1, 0}, {0, 0}}), {sym({{0, 1}, {1, 0}})});
  const FeasibilityReport r = classify(p);
  CHECK(r.type == FeasibilityType::WeaklyFeasible);
  REQUIRE(r.witness.has_value());
  CHECK(psd_check(p.evaluate(*r.witness), 1e-7).psd);
}

TEST_CASE("classify a constructed stable instance") {
  const auto g = generate_ground_truth(InstanceKind::StableInfeas, 4, 3, 7);
  const FeasibilityReport r = classify(g.pencil);
  CHECK(r.type == FeasibilityType::StronglyInfeasible);
  CHECK(r.stable);
  REQUIRE(r.affine_cert.has_value());
  CHECK(verify_affine(g.pencil, *r.affine_cert).valid);
}

TEST_CASE("chain bound") {
  CHECK_NOTHROW(assert_chain_bound(2, 2, 1));
  CHECK_NOTHROW(assert_chain_bound(3, 4, 2));
  CHECK_THROWS_AS(assert_chain_bound(3, 2, 5), ChainBoundError);
  CHECK_THROWS_AS(assert_chain_bound(3, 5, 1), ChainBoundError);
}

TEST_CASE("improper pencils are rejected") {
  CHECK_THROWS_AS(classify(Pencild(sym({{0, 0}, {0, 1}}), {sym({{0, 0}, {0, 1}})})), ImproperPencilError);
}

TEST_CASE("generator kinds classify as constructed") {
  for (auto kind : {InstanceKind::StrongFeas, InstanceKind::WeakFeas, InstanceKind::StableInfeas,
                    InstanceKind::StrongUnstableInfeas, InstanceKind::WeakInfeas}) {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const Index d = 2 + static_cast<Index>(seed % 4);
      const auto g = generate_ground_truth(kind, d, std::min<Index>(2, max_vars(kind, d)), seed);
      const FeasibilityReport r = classify(g.pencil);
      CAPTURE(to_string(kind));
      CAPTURE(seed);
      CHECK(r.type == g.expected.type);
      CHECK(r.stable == g.expected.stable);
    }
  }
}

TEST_CASE("generator examples") {
  const auto sf = generate_ground_truth(InstanceKind::StrongFeas, 3, 2, 1);
  CHECK(classify(sf.pencil).type == FeasibilityType::StronglyFeasible);
  const auto w = generate_ground_truth(InstanceKind::WeakInfeas, 2, 1, 0);
  CHECK(w.pencil == kStandard);
  CHECK_THROWS(generate_ground_truth(InstanceKind::WeakInfeas, 2, 5, 0));
}

TEST_CASE("unstable strongly infeasible instances carry a verified affine certificate") {
  for (std::uint64_t seed : {139u, 404u}) {
    const Index n = seed == 139 ? 2 : 3;
    const auto g = generate_ground_truth(InstanceKind::StrongUnstableInfeas, 6, n, seed);
    const FeasibilityReport r = classify(g.pencil);
    CAPTURE(seed);
    CHECK(r.type == FeasibilityType::StronglyInfeasible);
    CHECK_FALSE(r.stable);
    REQUIRE(r.affine_cert.has_value());
    CHECK(verify_affine(g.pencil, *r.affine_cert).valid);
  }
}
