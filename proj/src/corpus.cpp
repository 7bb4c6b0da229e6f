#include "conicscope/corpus.hpp"

#include <algorithm>

namespace conicscope {

namespace {

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

int degree(const Monomial& m) {
  int s = 0;
  for (int e : m) s += e;
  return s;
}

bool grlex_less(const Monomial& a, const Monomial& b) {
  if (degree(a) != degree(b)) return degree(a) < degree(b);
  return a > b;  // lex with x1 highest
}

SymMatq from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  const Index d = static_cast<Index>(rows.size());
  MatrixXq m(d, d);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (int v : r) m(i, j++) = Rational(v);
    ++i;
  }
  return SymMatq::fromUpper(m);
}

// Generator A_i of the chain family (1-based i in 2..d-1): (i,i) = 1 and
// (1,i+1) = -1.
SymMatq chain_generator(Index d, Index i) {
  SymMatq a(d);
  a.set(i - 1, i - 1, Rational(1));
  a.set(0, i, Rational(-1));
  return a;
}

CorpusEntry ex_standard() {
  CorpusEntry e;
  e.name = "ex_standard";
  e.pencil = Pencilq(from_ints({{0, 1}, {1, 0}}), {SymMatq::unit(2, 1, 1)});
  e.expected_type = FeasibilityType::WeaklyInfeasible;
  e.expected_infeasible = true;
  e.provenance = "canonical weakly infeasible 2x2 pencil: the zero (1,1) entry forces a zero first row";
  return e;
}

CorpusEntry longest_chain(Index d, const std::string& name) {
  if (d < 3) throw std::invalid_argument("longest_chain needs d >= 3");
  CorpusEntry e;
  e.name = name;
  e.subspace.push_back(SymMatq::unit(d, 0, 0));
  for (Index i = 2; i <= d - 1; ++i) e.subspace.push_back(chain_generator(d, i));
  // Proper wrapper: A0 = A_2, generators E11, A_3, ..., A_{d-1}.
  std::vector<SymMatq> gens{SymMatq::unit(d, 0, 0)};
  for (Index i = 3; i <= d - 1; ++i) gens.push_back(chain_generator(d, i));
  e.pencil = Pencilq(chain_generator(d, 2), gens);
  e.expected_type = FeasibilityType::WeaklyInfeasible;
  e.expected_infeasible = true;
  e.expected_chain_length = d - 1;
  e.provenance = "span{E11, A_2, ..., A_{d-1}} with a unique supporting hyperplane at every step; the chain needs d-1 "
                 "elements. Pencil wrapper offsets by A_2.";
  return e;
}

CorpusEntry klep_schweighofer() {
  CorpusEntry e;
  e.name = "klep_schweighofer";
  e.pencil = Pencilq(from_ints({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}}),
                     {from_ints({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), SymMatq::unit(3, 1, 1)});
  e.expected_type = FeasibilityType::WeaklyInfeasible;
  e.expected_infeasible = true;
  e.provenance = "3x3 pencil [[0,x1,0],[x1,x2,1],[0,1,x1]]: weakly infeasible without a linear certificate; the lifted "
                 "solution cone is the half-line (0,0,0,r)";
  return e;
}

CorpusEntry scheiderer() {
  CorpusEntry e;
  e.name = "scheiderer";
  const Pencilq gram = implicit_to_parametric(gram_constraints(scheiderer_monomials(), scheiderer_quartic()));
  e.subspace.push_back(gram.constant());
  for (const auto& g : gram.generators()) e.subspace.push_back(g);
  // L = (L′)^⊥ − I.
  const MatrixXq perp = nullspace_basis<Rational>(constraint_map(e.subspace, 6));
  std::vector<SymMatq> gens;
  for (Index j = 0; j < perp.cols(); ++j) gens.push_back(smat<Rational>(VectorXq(perp.col(j)), 6));
  e.pencil = Pencilq(Rational(-1) * SymMatq::identity(6), gens);
  e.expected_type = FeasibilityType::StronglyInfeasible;
  e.expected_infeasible = true;
  e.expected_stable = false;
  e.expect_rationalization_failure = true;
  e.provenance = "Gram subspace L' of a positive ternary quartic with no rational SOS decomposition; L = (L')^perp - I "
                 "is strongly infeasible without rational certificates";
  return e;
}

CorpusEntry motzkin_sos() {
  CorpusEntry e;
  e.name = "motzkin_sos";
  // f − λ = vᵀGv with λ free: the constant-monomial equation only fixes λ.
  const auto v = monomials_grlex(2, 3);
  const ImplicitSdp<Rational> sys = gram_constraints(v, motzkin_polynomial(), {Monomial{0, 0}});
  e.pencil = implicit_to_parametric(sys);
  e.expected_infeasible = true;
  e.provenance = "Gram LMI for f - lambda with f the Motzkin sextic, monomials of degree <= 3 in grlex order; infeasible "
                 "for every lambda, sub-type recorded as observed";
  return e;
}

}  // namespace

std::vector<Monomial> monomials_grlex(int nvars, int max_deg, int min_deg) {
  std::vector<Monomial> out;
  Monomial m(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      m[static_cast<std::size_t>(var)] = left;
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[static_cast<std::size_t>(var)] = e;
      self(self, var + 1, left - e);
    }
  };
  for (int deg = min_deg; deg <= max_deg; ++deg) rec(rec, 0, deg);
  return out;
}

Polynomial gram_polynomial(const std::vector<Monomial>& v, const SymMatq& m) {
  Polynomial p;
  const Index k = static_cast<Index>(v.size());
  if (m.dim() != k) throw DimensionError("gram_polynomial: dimension mismatch");
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      if (m(i, j) == 0) continue;
      p[add(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)])] += m(i, j);
    }
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

ImplicitSdp<Rational> gram_constraints(const std::vector<Monomial>& v, const Polynomial& target,
                                       const std::vector<Monomial>& skip) {
  const Index k = static_cast<Index>(v.size());
  std::map<Monomial, std::vector<std::pair<Index, Index>>, decltype(&grlex_less)> support(&grlex_less);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j)
      support[add(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)])].emplace_back(i, j);
  for (const auto& [mono, c] : target)
    if (c != 0 && !support.contains(mono)) throw EmptyAffineSpaceError();
  std::vector<LinearConstraint<Rational>> cons;
  for (const auto& [mono, pairs] : support) {
    if (std::find(skip.begin(), skip.end(), mono) != skip.end()) continue;
    SymMatq m(k);
    for (const auto& [i, j] : pairs) m.set(i, j, Rational(1));
    const auto it = target.find(mono);
    cons.push_back({m, it == target.end() ? Rational(0) : it->second});
  }
  return ImplicitSdp<Rational>(k, std::move(cons));
}

Polynomial scheiderer_quartic() {
  // x^4 + xy^3 + y^4 - 3x^2yz - 4xy^2z + 2x^2z^2 + xz^3 + yz^3 + z^4
  return {{{4, 0, 0}, 1}, {{1, 3, 0}, 1}, {{0, 4, 0}, 1},  {{2, 1, 1}, -3}, {{1, 2, 1}, -4},
          {{2, 0, 2}, 2}, {{1, 0, 3}, 1}, {{0, 1, 3}, 1}, {{0, 0, 4}, 1}};
}

std::vector<Monomial> scheiderer_monomials() {
  return {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
}

Polynomial motzkin_polynomial() {
  // x1^4 x2^2 + x1^2 x2^4 + 1 - 3 x1^2 x2^2
  return {{{4, 2}, 1}, {{2, 4}, 1}, {{0, 0}, 1}, {{2, 2}, -3}};
}

std::vector<CorpusEntry> corpus_list() {
  return {ex_standard(),       longest_chain(3, "biggerface"), longest_chain(4, "longest_chain"),
          klep_schweighofer(), scheiderer(),                    motzkin_sos()};
}

CorpusEntry corpus_get(const std::string& name, Index d) {
  if (name == "ex_standard") return ex_standard();
  if (name == "biggerface") {
    CorpusEntry e = longest_chain(3, "biggerface");
    e.expected_chain_length = 2;
    return e;
  }
  if (name == "longest_chain") return longest_chain(d == 0 ? 4 : d, "longest_chain");
  if (name == "klep_schweighofer") return klep_schweighofer();
  if (name == "scheiderer") return scheiderer();
  if (name == "motzkin_sos") return motzkin_sos();
  throw std::invalid_argument("unknown corpus entry: " + name);
}

}  // namespace conicscope
