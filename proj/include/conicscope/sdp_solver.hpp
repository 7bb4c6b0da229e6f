#pragma once

// Small dense block-diagonal SDP in standard form
//   min ⟨C,X⟩  s.t.  ⟨A_k,X⟩ = b_k,  X ⪰ 0
//   max bᵀy    s.t.  Z = C − Σ y_k A_k ⪰ 0
// solved by an infeasible-start primal-dual path-following method
// (HKM direction, Mehrotra predictor-corrector).

#include "conicscope/cone.hpp"

#include <string>

namespace conicscope {

struct SdpProblem {
  std::vector<Index> blocks;
  BlockVec c;
  std::vector<BlockVec> a;
  VectorXd b;
};

enum class SdpStatus { Optimal, IterationLimit, PrimalInfeasible, DualInfeasible, NumericalFailure };

std::string to_string(SdpStatus s);

struct SdpOptions {
  double gap_tol = 1e-11;   // relative complementarity target
  double feas_tol = 1e-11;  // relative residual target
  int max_iters = 200;
  Index max_total_dim = 400;
};

struct SdpResult {
  SdpStatus status = SdpStatus::IterationLimit;
  BlockVec x, z;
  VectorXd y;
  double primal_obj = 0, dual_obj = 0;
  double gap = 0;         // ⟨X,Z⟩
  double rel_gap = 0;
  double primal_res = 0;  // ‖b − A(X)‖ / (1 + ‖b‖)
  double dual_res = 0;    // ‖C − Aᵀy − Z‖ / (1 + ‖C‖)
  int iterations = 0;
  bool converged() const { return status == SdpStatus::Optimal; }
};

SdpResult aux_sdp_solve(const SdpProblem& problem, const SdpOptions& options = {});

// Block-list helpers shared with the oracle.
double inner(const BlockVec& a, const BlockVec& b);
BlockVec axpy(double alpha, const BlockVec& x, const BlockVec& y);  // αx + y

}  // namespace conicscope
