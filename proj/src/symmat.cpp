#include "conicscope/symmat.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace conicscope {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

VectorXd svec_iso(const SymMatd& a) {
  const Index d = a.dim();
  VectorXd v(svec_size(d));
  Index k = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) v(k++) = i == j ? a(i, j) : kSqrt2 * a(i, j);
  return v;
}

SymMatd smat_iso(const VectorXd& v, Index d) {
  if (v.size() != svec_size(d)) throw DimensionError("smat_iso: length mismatch");
  SymMatd a(d);
  Index k = 0;
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j, ++k) a.set(i, j, i == j ? v(k) : v(k) / kSqrt2);
  return a;
}

Spectrum eig_sym(const SymMatd& a) {
  if (!a.matrix().allFinite()) throw std::domain_error("eig_sym: non-finite entries");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a.matrix(), Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) throw std::runtime_error("eig_sym: QR iteration did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

double spectral_norm(const SymMatd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

PsdCheck psd_check(const SymMatd& a, double tol) {
  if (tol < 0) throw std::invalid_argument("psd_check: negative tolerance");
  if (!a.matrix().allFinite()) throw std::domain_error("psd_check: non-finite entries");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a.matrix(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues()(0);
  return {lo >= -tol, lo};
}

ExactPsdCheck psd_check_exact(const SymMatq& a) {
  const Index n = a.dim();
  MatrixXq work = a.matrix();
  // Column i of `basis` is the original-coordinate vector whose quadratic
  // form equals the current Schur complement's i-th coordinate form.
  MatrixXq basis = MatrixXq::Identity(n, n);
  std::vector<bool> active(static_cast<std::size_t>(n), true);

  auto witness_from = [&](const VectorXq& u) -> VectorXq { return basis * u; };

  for (Index step = 0; step < n; ++step) {
    Index piv = -1;
    Rational best(0);
    for (Index i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (work(i, i) < 0) {
        VectorXq u = VectorXq::Zero(n);
        u(i) = 1;
        return {false, witness_from(u)};
      }
      if (work(i, i) > best) {
        best = work(i, i);
        piv = i;
      }
    }
    if (piv < 0) {
      // Zero diagonal on the remaining block: any nonzero off-diagonal entry
      // makes it indefinite.
      for (Index i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (Index j = i + 1; j < n; ++j) {
          if (!active[j] || work(i, j) == 0) continue;
          VectorXq u = VectorXq::Zero(n);
          u(i) = 1;
          u(j) = work(i, j) > 0 ? Rational(-1) : Rational(1);
          return {false, witness_from(u)};
        }
      }
      return {true, {}};
    }
    active[piv] = false;
    const Rational p = work(piv, piv);
    for (Index i = 0; i < n; ++i) {
      if (!active[i] || work(i, piv) == 0) continue;
      const Rational l = work(i, piv) / p;
      for (Index j = 0; j < n; ++j)
        if (active[j]) work(i, j) -= l * work(piv, j);
      basis.col(i) -= l * basis.col(piv);
    }
    for (Index i = 0; i < n; ++i)
      if (active[i]) work(piv, i) = work(i, piv) = 0;
  }
  return {true, {}};
}

PsdCheck psd_check(const SymMatq& a, double /*tol*/) {
  const auto r = psd_check_exact(a);
  double lo = 0.0;
  // Report a float estimate of λmin for diagnostics only.
  const auto spec = eig_sym(a.cast<double>());
  lo = spec.eigenvalues(0);
  return {r.psd, lo};
}

MatrixXd kernel_basis(const SymMatd& a, double tol) {
  const auto spec = eig_sym(a);
  const double scale = std::max(1.0, spec.eigenvalues.cwiseAbs().maxCoeff());
  std::vector<Index> keep;
  for (Index i = 0; i < spec.eigenvalues.size(); ++i)
    if (std::abs(spec.eigenvalues(i)) <= tol * scale) keep.push_back(i);
  MatrixXd k(a.dim(), static_cast<Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) k.col(static_cast<Index>(c)) = spec.eigenvectors.col(keep[c]);
  return k;
}

}  // namespace conicscope
