#pragma once

// Exact Farkas oracle for {x ≥ 0 : Ax = b} over the rationals.

#include "conicscope/symmat.hpp"

#include <stdexcept>
#include <variant>

namespace conicscope {

struct LpFeasible {
  VectorXq x;  // Ax = b, x ≥ 0
};

/// Aᵀy ≥ 0 and bᵀy < 0; λ ∈ (0, r) with r = −bᵀy.
struct LpCertificate {
  VectorXq y;
  Rational lambda;
};

using LpFarkasResult = std::variant<LpFeasible, LpCertificate>;

class RankDeficientError : public std::invalid_argument {
 public:
  RankDeficientError() : std::invalid_argument("lp_farkas_rational: A must have full row rank") {}
};

/// Phase-one simplex in exact arithmetic with Bland's rule.
LpFarkasResult lp_farkas_rational(const MatrixXq& a, const VectorXq& b);

/// Exact re-substitution of either outcome.
bool lp_farkas_check(const MatrixXq& a, const VectorXq& b, const LpFarkasResult& r);

}  // namespace conicscope
