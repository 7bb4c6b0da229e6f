#include "conicscope/io.hpp"
#include "conicscope/model.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace conicscope;
using test::sym;

TEST_CASE("pencil construction and properness") {
  const Pencild p(sym({{0, 1}, {1, 0}}), {sym({{0, 0}, {0, 1}})});
  CHECK(p.dim() == 2);
  CHECK(p.num_vars() == 1);
  CHECK(p.proper());
  CHECK(p.evaluate(test::vec({3})) == sym({{0, 1}, {1, 3}}));
  CHECK_FALSE(Pencild(sym({{0, 0}, {0, 1}}), {sym({{0, 0}, {0, 1}})}).proper());
  CHECK_THROWS_AS(Pencild(SymMatd::identity(2), {sym({{1, 0}, {0, 0}}), sym({{1, 0}, {0, 0}})}),
                  DependentGeneratorsError);
}

TEST_CASE("JSON pencil parsing") {
  const auto parsed = parse_problem(R"({"d":2,"A0":[[0,1],[1,0]],"A":[[[0,0],[0,1]]]})", InputFormat::Json);
  const LoadedProblem lp = to_parametric(parsed);
  CHECK(lp.pencil.constant() == sym({{0, 1}, {1, 0}}));
  CHECK(lp.pencil.generator(0) == sym({{0, 0}, {0, 1}}));
  // Untagged integer data parses exactly.
  REQUIRE(lp.exact.has_value());
  CHECK(lp.exact->generator(0) == sym<Rational>({{0, 0}, {0, 1}}));

  try {
    parse_problem(R"({"d":2,"A0":[[1,0],[0,1]],"A":[[[1,0],[0,0]],[[1,0],[0,0]]]})", InputFormat::Json);
    FAIL("dependent generators accepted");
  } catch (const DependentGeneratorsError& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_problem(R"({"d":2,"A0":[[1,0],[0)", InputFormat::Json), ParseError);
}

TEST_CASE("rational literals") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(parse_rational("-1.25e-3") == Rational(-1, 800));
  CHECK(format_rational(Rational(-6, 4)) == "-3/2");
}

TEST_CASE("SDPA single block") {
  const std::string text =
      "1\n"
      "1\n"
      "2\n"
      "1.0\n"
      "0 1 1 1 1.0\n"
      "1 1 1 1 1.0\n";
  const auto parsed = parse_problem(text, InputFormat::Sdpa);
  REQUIRE(std::holds_alternative<ImplicitSdp<Rational>>(parsed));
  const auto& imp = std::get<ImplicitSdp<Rational>>(parsed);
  CHECK(imp.constraints().size() == 1);
  CHECK(imp.constraints()[0].m == SymMatq::unit(2, 0, 0));
  CHECK(imp.constraints()[0].b == Rational(1));
}

TEST_CASE("implicit to parametric") {
  const ImplicitSdp<Rational> one(2, {{SymMatq::unit(2, 0, 0), Rational(1)}});
  const Pencilq p = implicit_to_parametric(one);
  CHECK(p.num_vars() == 2);
  CHECK(inner(SymMatq::unit(2, 0, 0), p.constant()) == Rational(1));
  for (const auto& g : p.generators()) CHECK(g(0, 0) == Rational(0));

  const ImplicitSdp<Rational> two(2, {{SymMatq::identity(2), Rational(0)}, {SymMatq::unit(2, 0, 0), Rational(1)}});
  const Pencilq q = implicit_to_parametric(two);
  REQUIRE(q.num_vars() == 1);
  CHECK(q.constant()(0, 0) == Rational(1));
  CHECK(q.constant()(1, 1) == Rational(-1));
  CHECK(q.generator(0)(0, 0) == Rational(0));
  CHECK(q.generator(0)(1, 1) == Rational(0));
  CHECK(q.generator(0)(0, 1) != Rational(0));

  CHECK_THROWS(implicit_to_parametric(ImplicitSdp<Rational>(
      2, {{SymMatq::unit(2, 0, 0), Rational(1)}, {SymMatq::unit(2, 0, 0), Rational(2)}})));
}

TEST_CASE("parametric to implicit round trip") {
  const Pencilq ex(sym<Rational>({{0, 1}, {1, 0}}), {sym<Rational>({{0, 0}, {0, 1}})});
  const auto imp = parametric_to_implicit(ex);
  CHECK(imp.constraints().size() == 2);
  for (const auto& c : imp.constraints()) CHECK(inner(c.m, ex.generator(0)) == Rational(0));
  CHECK(same_affine_space(implicit_to_parametric(imp), ex));

  const Pencilq r(sym<Rational>({{1, 2, 0}, {2, -1, 3}, {0, 3, 2}}),
                  {sym<Rational>({{0, 1, 1}, {1, 2, 0}, {1, 0, -1}}), sym<Rational>({{5, 0, 1}, {0, 0, 2}, {1, 2, 1}})});
  CHECK(same_affine_space(implicit_to_parametric(parametric_to_implicit(r)), r));
}

TEST_CASE("pencil JSON round trip") {
  const Pencilq p(sym<Rational>({{1, 0}, {0, 2}}), {SymMatq::unit(2, 0, 1)});
  const auto back = to_parametric(parse_problem(pencil_to_json(p).dump(), InputFormat::Json));
  REQUIRE(back.exact.has_value());
  CHECK(*back.exact == p);
}
