#pragma once

// Seeded instances whose feasibility type holds by construction.

#include "conicscope/facial.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace conicscope {

enum class InstanceKind { StrongFeas, WeakFeas, StableInfeas, StrongUnstableInfeas, WeakInfeas };

std::string to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& s);

struct ExpectedReport {
  FeasibilityType type = FeasibilityType::StronglyFeasible;
  bool stable = false;
  std::optional<Index> chain_length;
};

template <typename Scalar>
struct GroundTruth {
  Pencil<Scalar> pencil;
  ExpectedReport expected;
};

/// Largest admissible n for a kind at dimension d (at least 1 when d ≥ 2).
Index max_vars(InstanceKind kind, Index d);

GroundTruth<double> generate_ground_truth(InstanceKind kind, Index d, Index n, std::uint64_t seed);

/// Stable infeasible instance with small integer data: A_i ⊥ C ≻ 0 and
/// ⟨C, A0⟩ < 0 exactly.
GroundTruth<Rational> generate_stable_rational(Index d, Index n, std::uint64_t seed);

}  // namespace conicscope
