#pragma once

// Facial reduction on homogenized systems and the feasibility-type
// classifier built on it.

#include "conicscope/chain.hpp"
#include "conicscope/homogenize.hpp"
#include "conicscope/oracle.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace conicscope {

enum class FeasibilityType { StronglyFeasible, WeaklyFeasible, WeaklyInfeasible, StronglyInfeasible };

std::string to_string(FeasibilityType t);
FeasibilityType feasibility_type_from_string(const std::string& s);
inline bool is_feasible(FeasibilityType t) {
  return t == FeasibilityType::StronglyFeasible || t == FeasibilityType::WeaklyFeasible;
}

struct FacialStep {
  OutcomeKind kind = OutcomeKind::Unresolved;
  Index w_dim = 0;      // dim W_i
  Index face_rank = 0;  // Σ block ranks of F_{i-1}
  double lambda = 0;
  double residual = 0;
  int iterations = 0;
};

struct FacialResult {
  std::vector<VectorXd> chain;  // cumulative functionals, packed in the full cone
  std::vector<FaceDescriptor> faces;  // F_0 = K, F_1, ..., F_k
  OutcomeKind terminal = OutcomeKind::Unresolved;
  VectorXd relint_point;  // valid when terminal == Interior
  std::vector<FacialStep> steps;
  std::string note;
  // Exact cumulative functionals; filled while every step snapped to a
  // rational functional, in which case `exact` is set.
  std::vector<BlockVecq> exact_chain;
  bool exact = false;
  Index length() const { return static_cast<Index>(chain.size()); }
  const FaceDescriptor& terminal_face() const { return faces.back(); }
};

FacialResult facial_reduce(const HomogeneousSystem& h, const OracleOptions& opt = {});

/// Product-embedding chain in (C_i, c_i) form.
CertificateChain to_certificate_chain(const HomogeneousSystem& h, const FacialResult& r);

struct ClassifyOptions {
  OracleOptions oracle{};
  double rho = 1e6;
  bool cross_check = true;  // compare with infeasible_by_lift
};

struct Diagnostics {
  double tol = kDefaultTol;
  double rho = 1e6;
  int iterations = 0;
  std::vector<FacialStep> steps;
  double marker = 0;              // marker coordinate of the terminal relint point
  double witness_min_eig = 0;     // λmin(A(witness)) for feasible types
  double separation_value = 0;    // sup λmin(A(x)) estimate from the separation oracle
  bool separation_trouble = false;
  std::optional<bool> lift_agrees;
  std::vector<std::string> notes;
};

struct FeasibilityReport {
  FeasibilityType type = FeasibilityType::StronglyFeasible;
  bool stable = false;
  std::optional<VectorXd> witness;
  std::optional<CertificateChain> chain;
  std::optional<AffineCertificated> affine_cert;
  Diagnostics diagnostics;
};

class UnresolvedError : public std::runtime_error {
 public:
  UnresolvedError(const std::string& what, Diagnostics diag) : std::runtime_error(what), diag_(std::move(diag)) {}
  const Diagnostics& diagnostics() const { return diag_; }

 private:
  Diagnostics diag_;
};

class ChainBoundError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// k ≤ min{d, 1 + n}; throws ChainBoundError otherwise.
void assert_chain_bound(Index k, Index d, Index n);

FeasibilityReport classify(const Pencild& p, const ClassifyOptions& opt = {});

}  // namespace conicscope
