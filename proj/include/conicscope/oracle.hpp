#pragma once

#include "conicscope/cone.hpp"
#include "conicscope/model.hpp"
#include "conicscope/sdp_solver.hpp"

#include <optional>
#include <string>

namespace conicscope {

struct OracleOptions {
  double tol = kDefaultTol;
  int max_iters = 200;
};

enum class OutcomeKind { Interior, Support, ZeroOnly, Unresolved };

std::string to_string(OutcomeKind k);

/// Result of one rank-maximization step on W ∩ F.
/// Interior: `point` is in relint(F ∩ W), trace one on F, with λmin = lambda.
/// Support: `functional` is PSD, vanishes on W ∩ lspan(F), nonzero on lspan(F).
/// ZeroOnly: `functional` is positive definite on lspan(F) and vanishes on W.
/// Vectors are packed in the full cone; `reduced_functional` lives on F.
struct OracleOutcome {
  OutcomeKind kind = OutcomeKind::Unresolved;
  VectorXd point;
  VectorXd functional;
  BlockVec reduced_functional;
  VectorXd dual_estimate;  // solver's Z projected onto W^⊥, full cone; empty if no solve ran
  double lambda = 0;     // optimal value of the auxiliary problem
  double residual = 0;   // max |⟨functional, w⟩| over the W basis
  int iterations = 0;
  std::string note;      // diagnostic for Unresolved / borderline margins
};

OracleOutcome relint_or_support(const Subspace& w, const FaceDescriptor& f, const OracleOptions& opt = {});

template <typename Scalar>
struct AffineCertificate {
  SymMat<Scalar> c;
  Scalar value{};   // ⟨c, A0⟩
  Scalar margin{};  // −⟨c, A0⟩ / tr(c)
};

using AffineCertificated = AffineCertificate<double>;
using AffineCertificateq = AffineCertificate<Rational>;

struct SeparationResult {
  bool found = false;
  std::optional<AffineCertificated> certificate;
  double optimal_value = 0;  // sup_x λmin(A(x)) as estimated by the solver
  bool solver_trouble = false;
  std::string note;
};

/// Searches for C ⪰ 0 with ⟨C,A_i⟩ = 0, ⟨C,A0⟩ ≤ −1, tr C ≤ ρ.
SeparationResult strong_separation(const Pencild& p, double rho = 1e6, const OracleOptions& opt = {});

}  // namespace conicscope
