#pragma once

// Worked examples with their expected classifications.

#include "conicscope/facial.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conicscope {

struct CorpusEntry {
  std::string name;
  Pencilq pencil;
  std::optional<FeasibilityType> expected_type;  // empty when only infeasibility is pinned
  bool expected_infeasible = false;
  bool expected_stable = false;
  std::optional<Index> expected_chain_length;
  bool expect_rationalization_failure = false;
  /// Homogeneous subspace the entry is built around (biggerface,
  /// longest_chain) or the Gram subspace L′ (scheiderer).
  std::vector<SymMatq> subspace;
  std::string provenance;
};

/// The six entries with default parameters (longest_chain at d = 4).
std::vector<CorpusEntry> corpus_list();
/// `d` is used by longest_chain only (d ≥ 3); 0 selects the default.
CorpusEntry corpus_get(const std::string& name, Index d = 0);

/// Exponent vector; polynomials map monomials to rational coefficients.
using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, Rational>;

/// Monomials in `nvars` variables of degree in [min_deg, max_deg], graded
/// lexicographic (x1 highest).
std::vector<Monomial> monomials_grlex(int nvars, int max_deg, int min_deg = 0);

/// vᵀMv for a monomial vector v.
Polynomial gram_polynomial(const std::vector<Monomial>& v, const SymMatq& m);

/// Coefficient-matching constraints ⟨M_α, G⟩ = target_α, one per monomial α
/// of the products v_i v_j, in grlex order.
ImplicitSdp<Rational> gram_constraints(const std::vector<Monomial>& v, const Polynomial& target,
                                       const std::vector<Monomial>& skip = {});

/// The displayed ternary quartic and sextic used by the Gram entries.
Polynomial scheiderer_quartic();
Polynomial motzkin_polynomial();
std::vector<Monomial> scheiderer_monomials();

}  // namespace conicscope
