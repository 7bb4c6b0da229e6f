#include "conicscope/certify.hpp"

#include "conicscope/homogenize.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <random>
#include <thread>

namespace conicscope {

std::string to_string(FailedCheck c) {
  switch (c) {
    case FailedCheck::None: return "None";
    case FailedCheck::NotPSD: return "NotPSD";
    case FailedCheck::FaceNotNested: return "FaceNotNested";
    case FailedCheck::SpanStep: return "SpanStep";
    case FailedCheck::TerminalNotAtInfinity: return "TerminalNotAtInfinity";
    case FailedCheck::AffineSignFail: return "AffineSignFail";
  }
  return "?";
}

namespace {

VectorXd pack_marker(const SymMatd& a, double t) {
  const VectorXd s = svec_iso(a);
  VectorXd v(s.size() + 1);
  v << s, t;
  return v;
}

// Orthonormal basis of span(cols) with relative cut.
MatrixXd orthonormal(const MatrixXd& cols, double tol) { return Subspace::span(cols, tol).basis(); }

}  // namespace

VerificationResult verify_chain(const Pencild& p, const CertificateChain& chain, double tol) {
  const Index d = p.dim(), n = p.num_vars();
  for (const auto& l : chain.links)
    if (l.c_mat.dim() != d) throw DimensionError("verify_chain: chain dimension does not match the pencil");
  if (chain.empty()) return VerificationResult::fail(FailedCheck::TerminalNotAtInfinity, 0, "empty chain");

  const Index len = svec_size(d) + 1;
  MatrixXd gens(len, n + 1);
  gens.col(0) = pack_marker(p.constant(), 1.0);
  for (Index i = 0; i < n; ++i) gens.col(i + 1) = pack_marker(p.generator(i), 0.0);
  MatrixXd w = orthonormal(gens, 1e-12);

  const double nest_tol = std::max(1e-6, 100 * tol);
  MatrixXd prev_ker = MatrixXd::Identity(d, d);
  bool prev_active = false;
  VerificationResult ok;
  for (Index i = 0; i < chain.length(); ++i) {
    const Index idx = i + 1;
    const auto& link = chain.links[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(link.c_mat.matrix());
    const VectorXd& ev = es.eigenvalues();
    const double scale = std::max({1.0, ev.cwiseAbs().maxCoeff(), std::abs(link.c)});
    ok.residuals.push_back(ev(0));
    if (ev(0) < -tol * scale || link.c < -tol * scale)
      return VerificationResult::fail(FailedCheck::NotPSD, idx,
                                      "element " + std::to_string(idx) + " is not in the dual cone (min eigenvalue " +
                                          std::to_string(ev(0)) + ", scalar " + std::to_string(link.c) + ")");

    std::vector<Index> kc;
    for (Index j = 0; j < d; ++j)
      if (std::abs(ev(j)) <= tol * scale) kc.push_back(j);
    MatrixXd ker(d, static_cast<Index>(kc.size()));
    for (std::size_t j = 0; j < kc.size(); ++j) ker.col(static_cast<Index>(j)) = es.eigenvectors().col(kc[j]);
    const bool active = link.c > tol * scale;

    // F_i ⊆ F_{i-1}: ker C_i ⊆ ker C_{i-1}, and a pinned marker stays pinned.
    const double leak = ker.cols() ? (ker - prev_ker * (prev_ker.transpose() * ker)).norm() : 0.0;
    ok.residuals.push_back(leak);
    if (leak > nest_tol || (prev_active && !active))
      return VerificationResult::fail(FailedCheck::FaceNotNested, idx,
                                      "face " + std::to_string(idx) + " is not contained in the previous face");

    // The element vanishes on W_i.
    const VectorXd cv = pack_marker(link.c_mat, link.c);
    const double vanish = w.cols() ? (w.transpose() * cv).cwiseAbs().maxCoeff() : 0.0;
    ok.residuals.push_back(vanish);
    if (vanish > 10 * tol * scale)
      return VerificationResult::fail(FailedCheck::SpanStep, idx,
                                      "element " + std::to_string(idx) + " does not vanish on W_" + std::to_string(idx) +
                                          " (residual " + std::to_string(vanish) + ")");
    // ...and cuts: the face strictly shrinks.
    if (!(ker.cols() < prev_ker.cols() || (active && !prev_active)))
      return VerificationResult::fail(FailedCheck::SpanStep, idx,
                                      "element " + std::to_string(idx) + " does not cut the previous face");

    // W_{i+1} = W_i ∩ lspan(F_i).
    if (w.cols() > 0) {
      const MatrixXd proj = ker * ker.transpose();
      MatrixXd inside(len, w.cols()), resid(len, w.cols());
      for (Index j = 0; j < w.cols(); ++j) {
        const SymMatd x = smat_iso(w.col(j).head(len - 1), d);
        const SymMatd px = SymMatd::fromFull(proj * x.matrix() * proj);
        inside.col(j) = pack_marker(px, active ? 0.0 : w(len - 1, j));
        resid.col(j) = w.col(j) - inside.col(j);
      }
      const MatrixXd alpha = null_space(resid, nest_tol);
      w = alpha.cols() ? orthonormal(inside * alpha, 1e-12) : MatrixXd(len, 0);
    }
    prev_ker = ker;
    prev_active = active;
  }
  if (!prev_active)
    return VerificationResult::fail(FailedCheck::TerminalNotAtInfinity, chain.length(),
                                    "terminal face does not pin the marker coordinate to zero");
  return ok;
}

VerificationResult verify_affine(const Pencild& p, const AffineCertificated& cert, double tol) {
  if (cert.c.dim() != p.dim()) throw DimensionError("verify_affine: dimension mismatch");
  VerificationResult ok;
  const double cn = std::sqrt(frobenius_sq(cert.c));
  const double scale = std::max(1.0, spectral_norm(cert.c));
  const auto chk = psd_check(cert.c, tol * scale);
  ok.residuals.push_back(chk.min_eig);
  if (!chk.psd)
    return VerificationResult::fail(FailedCheck::NotPSD, 1, "certificate is not PSD (min eigenvalue " +
                                                                std::to_string(chk.min_eig) + ")");
  for (Index i = 0; i < p.num_vars(); ++i) {
    const double v = inner(cert.c, p.generator(i));
    ok.residuals.push_back(v);
    if (std::abs(v) > tol * std::max(1.0, cn) * std::max(1.0, std::sqrt(frobenius_sq(p.generator(i)))))
      return VerificationResult::fail(FailedCheck::SpanStep, i + 1,
                                      "<C, A_" + std::to_string(i + 1) + "> = " + std::to_string(v) + " is not zero");
  }
  const double v0 = inner(cert.c, p.constant());
  ok.residuals.push_back(v0);
  if (!(v0 < -tol * std::max(1.0, cn) * std::max(1.0, std::sqrt(frobenius_sq(p.constant())))))
    return VerificationResult::fail(FailedCheck::AffineSignFail, 0, "<C, A0> is not negative");
  return ok;
}

VerificationResult verify_affine(const Pencilq& p, const AffineCertificateq& cert) {
  if (cert.c.dim() != p.dim()) throw DimensionError("verify_affine: dimension mismatch");
  VerificationResult ok;
  const auto chk = psd_check_exact(cert.c);
  if (!chk.psd) {
    const Rational q = chk.witness.dot(cert.c.matrix() * chk.witness);
    return VerificationResult::fail(FailedCheck::NotPSD, 1,
                                    "certificate is not PSD (exact witness gives " + q.str() + ")");
  }
  for (Index i = 0; i < p.num_vars(); ++i) {
    const Rational v = inner(cert.c, p.generator(i));
    if (v != 0)
      return VerificationResult::fail(FailedCheck::SpanStep, i + 1,
                                      "<C, A_" + std::to_string(i + 1) + "> = " + v.str() + " is not zero");
  }
  const Rational v0 = inner(cert.c, p.constant());
  if (!(v0 < 0)) return VerificationResult::fail(FailedCheck::AffineSignFail, 0, "<C, A0> = " + v0.str());
  return ok;
}

Rational best_rational(double x, long long max_den) {
  using boost::multiprecision::mpz_int;
  if (max_den < 1) throw std::invalid_argument("best_rational: max_den must be positive");
  if (!std::isfinite(x)) throw std::domain_error("best_rational: non-finite input");
  const Rational exact(x);
  const bool neg = exact < 0;
  const Rational ax = neg ? Rational(-exact) : exact;
  mpz_int num = boost::multiprecision::numerator(ax), den = boost::multiprecision::denominator(ax);
  if (den <= max_den) return exact;
  mpz_int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  while (den != 0) {
    const mpz_int a = num / den;
    const mpz_int q2 = q0 + a * q1;
    if (q2 > max_den) break;
    const mpz_int p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const mpz_int r = num - a * den;
    num = den;
    den = r;
  }
  const mpz_int k = (mpz_int(max_den) - q0) / q1;
  const Rational b1(mpz_int(p0 + k * p1), mpz_int(q0 + k * q1));
  const Rational b2(p1, q1);
  const Rational d1 = abs(b1 - ax), d2 = abs(b2 - ax);
  const Rational best = d2 <= d1 ? b2 : b1;
  return neg ? Rational(-best) : best;
}

RationalizeResult rationalize_certificate(const Pencilq& p, const SymMatd& c_float, long long max_den) {
  RationalizeResult out;
  const Index d = p.dim();
  if (c_float.dim() != d) throw DimensionError("rationalize_certificate: dimension mismatch");
  // Exact basis of {C : ⟨C, A_i⟩ = 0}, in svec coordinates.
  const MatrixXq basis = p.num_vars() == 0 ? MatrixXq(MatrixXq::Identity(svec_size(d), svec_size(d)))
                                           : nullspace_basis<Rational>(constraint_map(p.generators(), d));
  if (basis.cols() == 0) {
    out.message = "no nonzero functional vanishes on the generators";
    return out;
  }
  const MatrixXd bd = basis.cast<double>();
  SymMatd c = c_float;
  const double norm = spectral_norm(c);
  if (norm > 0) c *= 1.0 / norm;
  const VectorXd alpha = bd.colPivHouseholderQr().solve(svec(c));

  out.best_residual = -std::numeric_limits<double>::infinity();
  std::vector<long long> bounds;
  for (long long den = 10; den < max_den; den *= 10) bounds.push_back(den);
  bounds.push_back(max_den);
  for (long long den : bounds) {
    VectorXq aq(alpha.size());
    for (Index j = 0; j < alpha.size(); ++j) aq(j) = best_rational(alpha(j), den);
    const SymMatq cq = smat<Rational>(basis * aq, d);
    AffineCertificateq cert{cq, inner(cq, p.constant()), Rational(0)};
    const auto vr = verify_affine(p, cert);
    if (vr.valid) {
      const Rational tr = cq.matrix().trace();
      cert.margin = tr > 0 ? Rational(-cert.value / tr) : Rational(0);
      out.ok = true;
      out.certificate = cert;
      out.denominator_bound = den;
      out.message = "exact verification passed";
      return out;
    }
    out.best_residual = std::max(out.best_residual, psd_check(cq.cast<double>(), 0.0).min_eig);
    out.message = "exact verification failed: " + vr.message;
  }
  return out;
}

ProbeCounts perturbation_probe(const Pencild& p, const ProbeOptions& opt) {
  if (opt.radius < 0) throw std::invalid_argument("perturbation_probe: negative radius");
  if (opt.samples < 1) throw std::invalid_argument("perturbation_probe: need at least one sample");
  const Index d = p.dim(), n = p.num_vars();
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-opt.radius, opt.radius);
  auto noise = [&] {
    SymMatd e(d);
    for (Index i = 0; i < d; ++i)
      for (Index j = i; j < d; ++j) e.set(i, j, opt.radius > 0 ? unif(rng) : 0.0);
    return e;
  };
  // Draw all perturbations up front so the result does not depend on threading.
  std::vector<Pencild> samples;
  std::vector<int> outcome(static_cast<std::size_t>(opt.samples), 2);
  std::vector<bool> valid;
  for (int s = 0; s < opt.samples; ++s) {
    SymMatd a0 = p.constant() + noise();
    std::vector<SymMatd> gens;
    for (Index i = 0; i < n; ++i) gens.push_back(p.generator(i) + noise());
    try {
      samples.emplace_back(a0, gens);
      valid.push_back(true);
    } catch (const std::invalid_argument&) {
      samples.emplace_back();
      valid.push_back(false);
    }
  }
  auto run = [&](std::size_t s) {
    if (!valid[s]) return;
    try {
      if (n == 0) {
        outcome[s] = psd_check(samples[s].constant(), opt.oracle.tol).psd ? 0 : 1;
        return;
      }
      const LiftVerdict v = infeasible_by_lift(samples[s], opt.oracle);
      outcome[s] = v.unresolved ? 2 : (v.infeasible ? 1 : 0);
    } catch (const std::exception&) {
      outcome[s] = 2;
    }
  };
  const int threads = std::max(1, opt.threads);
  if (threads == 1) {
    for (std::size_t s = 0; s < samples.size(); ++s) run(s);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t s = static_cast<std::size_t>(t); s < samples.size(); s += static_cast<std::size_t>(threads))
          run(s);
      });
    for (auto& th : pool) th.join();
  }
  ProbeCounts c;
  for (int o : outcome) (o == 0 ? c.feasible : o == 1 ? c.infeasible : c.unresolved)++;
  return c;
}

}  // namespace conicscope
