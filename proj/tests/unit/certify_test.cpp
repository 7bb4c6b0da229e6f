#include "conicscope/certify.hpp"
#include "conicscope/corpus.hpp"
#include "conicscope/generator.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace conicscope;
using test::sym;

namespace {

const Pencild kStandard(sym({{0, 1}, {1, 0}}), {sym({{0, 0}, {0, 1}})});
const Pencild kNegId(sym({{-1, 0}, {0, -1}}), {sym({{0, 1}, {1, 0}})});

}  // namespace

TEST_CASE("verify an emitted chain and its tamperings") {
  const CertificateChain chain = *classify(kStandard).chain;
  CHECK(verify_chain(kStandard, chain).valid);

  CertificateChain truncated = chain;
  truncated.links.pop_back();
  const auto t = verify_chain(kStandard, truncated);
  CHECK_FALSE(t.valid);
  CHECK(t.failed_check == FailedCheck::TerminalNotAtInfinity);

  CertificateChain indefinite = chain;
  indefinite.links.front().c_mat = SymMatd::diagonal(test::vec({1, -1}));
  const auto n = verify_chain(kStandard, indefinite);
  CHECK_FALSE(n.valid);
  CHECK(n.failed_check == FailedCheck::NotPSD);
  CHECK(n.index == 1);

  CertificateChain off = chain;
  off.links.front().c += 1;
  const auto s = verify_chain(kStandard, off);
  CHECK_FALSE(s.valid);
  CHECK(s.failed_check == FailedCheck::SpanStep);
}

TEST_CASE("a single non-nested chain element is caught") {
  // E22 then E11: the second face is not inside the first.
  CertificateChain c;
  c.links.push_back({SymMatd::unit(2, 0, 0), 0.0});
  c.links.push_back({SymMatd::unit(2, 1, 1), 1.0});
  const auto v = verify_chain(kStandard, c);
  CHECK_FALSE(v.valid);
}

TEST_CASE("affine certificates in float and exact mode") {
  AffineCertificated good{SymMatd::identity(2), -2.0, 1.0};
  CHECK(verify_affine(kNegId, good).valid);
  AffineCertificated bad{SymMatd::diagonal(test::vec({1, -1})), 0.0, 0.0};
  const auto b = verify_affine(kNegId, bad);
  CHECK_FALSE(b.valid);
  CHECK(b.failed_check == FailedCheck::NotPSD);

  const Pencilq exact = kNegId.cast<Rational>();
  CHECK(verify_affine(exact, AffineCertificateq{SymMatq::identity(2), Rational(-2), Rational(1)}).valid);
  CHECK_FALSE(verify_affine(exact, AffineCertificateq{SymMatq::unit(2, 0, 1), Rational(0), Rational(0)}).valid);
}

TEST_CASE("rationalize certificates") {
  const Pencilq exact = kNegId.cast<Rational>();
  const auto r = rationalize_certificate(exact, SymMatd::identity(2), 10);
  REQUIRE(r.ok);
  CHECK(verify_affine(exact, *r.certificate).valid);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = generate_stable_rational(3, 2, seed);
    const auto rep = classify(g.pencil.cast<double>());
    REQUIRE(rep.affine_cert.has_value());
    const auto rr = rationalize_certificate(g.pencil, rep.affine_cert->c, 10000);
    CHECK(rr.ok);
    if (rr.ok) CHECK(verify_affine(g.pencil, *rr.certificate).valid);
  }
}

TEST_CASE("scheiderer admits no small rational certificate") {
  const CorpusEntry e = corpus_get("scheiderer");
  const auto rep = classify(e.pencil.cast<double>());
  REQUIRE(rep.affine_cert.has_value());
  CHECK_FALSE(rationalize_certificate(e.pencil, rep.affine_cert->c, 1000000).ok);
}

TEST_CASE("best rational approximation") {
  CHECK(best_rational(0.333333333, 100) == Rational(1, 3));
  CHECK(best_rational(3.14159265358979, 1000) == Rational(355, 113));
  CHECK(best_rational(-2.0, 5) == Rational(-2));
}

TEST_CASE("perturbation probe") {
  ProbeOptions po;
  po.radius = 1e-4;
  po.samples = 100;
  const auto g = generate_ground_truth(InstanceKind::StableInfeas, 3, 2, 1);
  const ProbeCounts s = perturbation_probe(g.pencil, po);
  CHECK(s.feasible == 0);

  po.samples = 200;
  const ProbeCounts w = perturbation_probe(kStandard, po);
  CHECK(w.feasible > 0);
  CHECK(w.infeasible > 0);

  po.radius = 0;
  po.samples = 5;
  const ProbeCounts z = perturbation_probe(kNegId, po);
  CHECK(z.infeasible == 5);

  // Threads do not change the counts.
  po.radius = 1e-4;
  po.samples = 40;
  po.seed = 3;
  const ProbeCounts one = perturbation_probe(kStandard, po);
  po.threads = 4;
  const ProbeCounts four = perturbation_probe(kStandard, po);
  CHECK(one.feasible == four.feasible);
  CHECK(one.infeasible == four.infeasible);
}
