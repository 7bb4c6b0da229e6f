#pragma once

// Certificate checking: iterated chains (float), affine certificates (float
// or exact), rational rounding, and the perturbation probe.

#include "conicscope/chain.hpp"
#include "conicscope/model.hpp"
#include "conicscope/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace conicscope {

enum class FailedCheck { None, NotPSD, FaceNotNested, SpanStep, TerminalNotAtInfinity, AffineSignFail };

std::string to_string(FailedCheck c);

struct VerificationResult {
  bool valid = true;
  FailedCheck failed_check = FailedCheck::None;
  Index index = 0;               // 1-based position of the first failing element (0 when not applicable)
  std::vector<double> residuals; // one per checked quantity, for audit
  std::string message;

  static VerificationResult fail(FailedCheck c, Index i, std::string msg) {
    VerificationResult r;
    r.valid = false;
    r.failed_check = c;
    r.index = i;
    r.message = std::move(msg);
    return r;
  }
};

VerificationResult verify_chain(const Pencild& p, const CertificateChain& chain, double tol = kDefaultTol);

/// Float mode, scale-relative tolerance.
VerificationResult verify_affine(const Pencild& p, const AffineCertificated& cert, double tol = kDefaultTol);
/// Exact mode, zero tolerance.
VerificationResult verify_affine(const Pencilq& p, const AffineCertificateq& cert);

struct RationalizeResult {
  bool ok = false;
  std::optional<AffineCertificateq> certificate;
  long long denominator_bound = 0;  // bound at which exact verification passed
  double best_residual = 0;         // smallest float λmin among exact-PSD failures
  std::string message;
};

/// Best rational approximation with denominator ≤ max_den.
Rational best_rational(double x, long long max_den);

RationalizeResult rationalize_certificate(const Pencilq& p, const SymMatd& c_float, long long max_den);

struct ProbeCounts {
  int feasible = 0;
  int infeasible = 0;
  int unresolved = 0;
};

struct ProbeOptions {
  double radius = 1e-4;
  int samples = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  OracleOptions oracle{};
};

ProbeCounts perturbation_probe(const Pencild& p, const ProbeOptions& opt);

}  // namespace conicscope
