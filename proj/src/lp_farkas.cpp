#include "conicscope/lp_farkas.hpp"

#include "conicscope/linalg.hpp"

namespace conicscope {

LpFarkasResult lp_farkas_rational(const MatrixXq& a, const VectorXq& b) {
  const Index m = a.rows(), n = a.cols();
  if (b.size() != m) throw DimensionError("lp_farkas_rational: b has the wrong length");
  if (m == 0) return LpFeasible{VectorXq::Zero(n)};
  if (rank_of<Rational>(a) < m) throw RankDeficientError();

  // Rows flipped so that b ≥ 0; artificial columns n..n+m-1 start basic.
  VectorXq sign(m);
  MatrixXq t = MatrixXq::Zero(m, n + m + 1);
  for (Index i = 0; i < m; ++i) {
    sign(i) = b(i) < 0 ? Rational(-1) : Rational(1);
    t.row(i).head(n) = sign(i) * a.row(i);
    t(i, n + i) = 1;
    t(i, n + m) = sign(i) * b(i);
  }
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;
  auto cost = [n](Index j) { return j >= n ? Rational(1) : Rational(0); };

  for (;;) {
    Index enter = -1;
    for (Index j = 0; j < n + m && enter < 0; ++j) {
      Rational r = cost(j);
      for (Index i = 0; i < m; ++i) r -= cost(basis[static_cast<std::size_t>(i)]) * t(i, j);
      if (r < 0) enter = j;
    }
    if (enter < 0) break;
    Index leave = -1;
    Rational best;
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      const Rational ratio = t(i, n + m) / t(i, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so a leaving row always exists.
    const Rational piv = t(leave, enter);
    t.row(leave) /= piv;
    for (Index i = 0; i < m; ++i)
      if (i != leave && t(i, enter) != 0) t.row(i) -= t(i, enter) * t.row(leave);
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Rational obj = 0;
  for (Index i = 0; i < m; ++i) obj += cost(basis[static_cast<std::size_t>(i)]) * t(i, n + m);
  if (obj == 0) {
    VectorXq x = VectorXq::Zero(n);
    for (Index i = 0; i < m; ++i)
      if (basis[static_cast<std::size_t>(i)] < n) x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
    return LpFeasible{x};
  }
  // Phase-one duals: ŷ_k = c_Bᵀ B⁻¹ e_k, read off the artificial columns.
  VectorXq y(m);
  for (Index k = 0; k < m; ++k) {
    Rational v = 0;
    for (Index i = 0; i < m; ++i) v += cost(basis[static_cast<std::size_t>(i)]) * t(i, n + k);
    y(k) = -sign(k) * v;
  }
  const Rational r = -b.dot(y);
  return LpCertificate{y, r / 2};
}

bool lp_farkas_check(const MatrixXq& a, const VectorXq& b, const LpFarkasResult& r) {
  if (const auto* f = std::get_if<LpFeasible>(&r)) {
    if (f->x.size() != a.cols()) return false;
    for (Index j = 0; j < f->x.size(); ++j)
      if (f->x(j) < 0) return false;
    const VectorXq res = a * f->x - b;
    for (Index i = 0; i < res.size(); ++i)
      if (res(i) != 0) return false;
    return true;
  }
  const auto& c = std::get<LpCertificate>(r);
  if (c.y.size() != a.rows()) return false;
  const VectorXq aty = a.transpose() * c.y;
  for (Index j = 0; j < aty.size(); ++j)
    if (aty(j) < 0) return false;
  const Rational rr = -b.dot(c.y);
  return rr > 0 && c.lambda > 0 && c.lambda < rr;
}

}  // namespace conicscope
