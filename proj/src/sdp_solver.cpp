#include "conicscope/sdp_solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace conicscope {

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::IterationLimit: return "IterationLimit";
    case SdpStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SdpStatus::DualInfeasible: return "DualInfeasible";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

double inner(const BlockVec& a, const BlockVec& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].cwiseProduct(b[i]).sum();
  return s;
}

BlockVec axpy(double alpha, const BlockVec& x, const BlockVec& y) {
  BlockVec out = y;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
  return out;
}

namespace {

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

struct Factor {
  std::vector<Eigen::LLT<MatrixXd>> llt;
  bool ok = true;
};

Factor factor(const BlockVec& x) {
  Factor f;
  for (const auto& b : x) {
    f.llt.emplace_back(b);
    if (f.llt.back().info() != Eigen::Success) f.ok = false;
  }
  return f;
}

// Largest α with X + α dX ⪰ 0 given the Cholesky factors of X.
double max_step(const Factor& fx, const BlockVec& dx) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < dx.size(); ++b) {
    const Index n = dx[b].rows();
    if (n == 0) continue;
    const auto& l = fx.llt[b].matrixL();
    MatrixXd t = l.solve(dx[b]);
    t = MatrixXd(l.solve(t.transpose())).transpose();
    double lo;
    if (n == 1) {
      lo = t(0, 0);
    } else {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(t), Eigen::EigenvaluesOnly);
      lo = es.eigenvalues()(0);
    }
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
  }
  return alpha;
}

double frob(const BlockVec& a) { return std::sqrt(inner(a, a)); }

}  // namespace

SdpResult aux_sdp_solve(const SdpProblem& p, const SdpOptions& o) {
  const std::size_t nb = p.blocks.size();
  const Index m = static_cast<Index>(p.a.size());
  Index total = 0;
  for (Index s : p.blocks) total += s;
  if (total > o.max_total_dim) throw DimensionError("aux_sdp_solve: total block dimension exceeds cap");
  if (p.c.size() != nb || p.b.size() != m) throw DimensionError("aux_sdp_solve: inconsistent problem data");
  for (const auto& ak : p.a)
    if (ak.size() != nb) throw DimensionError("aux_sdp_solve: constraint block count mismatch");

  const double n = static_cast<double>(total);
  const double norm_c = frob(p.c);
  const double norm_b = p.b.norm();
  std::vector<double> norm_a(static_cast<std::size_t>(m));
  double max_a = 0, ratio = 0;
  for (Index k = 0; k < m; ++k) {
    norm_a[k] = frob(p.a[k]);
    max_a = std::max(max_a, norm_a[k]);
    ratio = std::max(ratio, (1 + std::abs(p.b(k))) / (1 + norm_a[k]));
  }
  // Gram matrix of the constraints, for projecting X back onto A(X) = b.
  MatrixXd gram(m, m);
  for (Index k = 0; k < m; ++k)
    for (Index l = 0; l <= k; ++l) gram(k, l) = gram(l, k) = inner(p.a[k], p.a[l]);
  const Eigen::LDLT<MatrixXd> gram_ldlt(gram);

  const double xi = std::max({10.0, std::sqrt(n), n * ratio});
  const double eta = std::max({10.0, std::sqrt(n), max_a, norm_c});

  SdpResult res;
  BlockVec x, z;
  for (Index s : p.blocks) {
    x.push_back(xi * MatrixXd::Identity(s, s));
    z.push_back(eta * MatrixXd::Identity(s, s));
  }
  VectorXd y = VectorXd::Zero(m);

  SdpResult best;
  double best_score = std::numeric_limits<double>::infinity();
  auto record = [&](SdpStatus st, int it, double pobj, double dobj, double gap, double rg, double pr, double dr) {
    const double score = std::max({rg, pr, dr});
    if (score <= best_score || st == SdpStatus::Optimal) {
      best_score = score;
      best.status = st;
      best.x = x;
      best.z = z;
      best.y = y;
      best.primal_obj = pobj;
      best.dual_obj = dobj;
      best.gap = gap;
      best.rel_gap = rg;
      best.primal_res = pr;
      best.dual_res = dr;
      best.iterations = it;
    }
  };

  int stalls = 0;
  for (int it = 0; it <= o.max_iters; ++it) {
    VectorXd rp(m);
    for (Index k = 0; k < m; ++k) rp(k) = p.b(k) - inner(p.a[k], x);
    BlockVec rd = p.c;
    for (std::size_t b = 0; b < nb; ++b) {
      for (Index k = 0; k < m; ++k) rd[b] -= y(k) * p.a[k][b];
      rd[b] -= z[b];
    }
    const double pobj = inner(p.c, x);
    const double dobj = m ? p.b.dot(y) : 0.0;
    const double gap = inner(x, z);
    const double rg = std::max(gap, std::abs(pobj - dobj)) / (1 + std::abs(pobj) + std::abs(dobj));
    const double pr = m ? rp.norm() / (1 + norm_b) : 0.0;
    const double dr = frob(rd) / (1 + norm_c);

    if (rg <= o.gap_tol && pr <= o.feas_tol && dr <= o.feas_tol) {
      record(SdpStatus::Optimal, it, pobj, dobj, gap, rg, pr, dr);
      return best;
    }
    record(SdpStatus::IterationLimit, it, pobj, dobj, gap, rg, pr, dr);
    if (it == o.max_iters) break;

    // Divergence means one side has no solution.
    if (frob(x) > 1e13 * xi) {
      best.status = SdpStatus::DualInfeasible;
      return best;
    }
    if (frob(z) > 1e13 * eta || (m && y.cwiseAbs().maxCoeff() > 1e13 * eta)) {
      best.status = SdpStatus::PrimalInfeasible;
      return best;
    }

    const Factor fx = factor(x), fz = factor(z);
    if (!fx.ok || !fz.ok) {
      best.status = SdpStatus::NumericalFailure;
      return best;
    }
    BlockVec zinv(nb);
    for (std::size_t b = 0; b < nb; ++b)
      zinv[b] = fz.llt[b].solve(MatrixXd::Identity(p.blocks[b], p.blocks[b]));

    // Schur complement M_kl = ⟨A_k, X A_l Z⁻¹⟩.
    MatrixXd schur(m, m);
    for (Index l = 0; l < m; ++l) {
      BlockVec g(nb);
      for (std::size_t b = 0; b < nb; ++b) g[b] = x[b] * p.a[l][b] * zinv[b];
      for (Index k = 0; k < m; ++k) schur(k, l) = inner(p.a[k], g);
    }
    schur = sym(schur);
    Eigen::LDLT<MatrixXd> ldlt;
    if (m) {
      ldlt.compute(schur);
      if (ldlt.info() != Eigen::Success) {
        best.status = SdpStatus::NumericalFailure;
        return best;
      }
    }

    auto direction = [&](const BlockVec& rc, BlockVec& dx, VectorXd& dy, BlockVec& dz) {
      VectorXd rhs = rp;
      BlockVec t(nb);
      for (std::size_t b = 0; b < nb; ++b) t[b] = (rc[b] - x[b] * rd[b]) * zinv[b];
      for (Index k = 0; k < m; ++k) rhs(k) -= inner(p.a[k], t);
      dy = m ? VectorXd(ldlt.solve(rhs)) : VectorXd();
      auto recover = [&] {
        dz = rd;
        dx.resize(nb);
        for (std::size_t b = 0; b < nb; ++b) {
          for (Index k = 0; k < m; ++k) dz[b] -= dy(k) * p.a[k][b];
          dx[b] = sym((rc[b] - x[b] * dz[b]) * zinv[b]);
        }
      };
      recover();
      // Iterative refinement on A(dX) = r_p; the Schur complement loses
      // accuracy as Z approaches the boundary.
      for (int round = 0; round < 2 && m; ++round) {
        VectorXd e(m);
        for (Index k = 0; k < m; ++k) e(k) = rp(k) - inner(p.a[k], dx);
        if (e.norm() <= 1e-15 * (1 + rp.norm())) break;
        dy += ldlt.solve(e);
        recover();
      }
    };

    const double mu = gap / n;
    BlockVec rc(nb);
    for (std::size_t b = 0; b < nb; ++b) rc[b] = -x[b] * z[b];
    BlockVec dxa, dza;
    VectorXd dya;
    direction(rc, dxa, dya, dza);
    const double ap_aff = std::min(1.0, max_step(fx, dxa));
    const double ad_aff = std::min(1.0, max_step(fz, dza));
    const double mu_aff = inner(axpy(ap_aff, dxa, x), axpy(ad_aff, dza, z)) / n;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    for (std::size_t b = 0; b < nb; ++b)
      rc[b] = sigma * mu * MatrixXd::Identity(p.blocks[b], p.blocks[b]) - x[b] * z[b] - dxa[b] * dza[b];
    BlockVec dx, dz;
    VectorXd dy;
    direction(rc, dx, dy, dz);

    const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
    double ap = std::min(1.0, gamma * max_step(fx, dx));
    double ad = std::min(1.0, gamma * max_step(fz, dz));

    BlockVec xn = axpy(ap, dx, x), zn = axpy(ad, dz, z);
    // Guard against losing definiteness to rounding.
    for (int tries = 0; tries < 20 && !(factor(xn).ok && factor(zn).ok); ++tries) {
      ap *= 0.8;
      ad *= 0.8;
      xn = axpy(ap, dx, x);
      zn = axpy(ad, dz, z);
    }
    // The Schur complement degrades near the boundary and A(X) drifts
    // from b; undo the drift by a least-norm correction when X stays ⪰ 0.
    if (m) {
      VectorXd e(m);
      for (Index k = 0; k < m; ++k) e(k) = p.b(k) - inner(p.a[k], xn);
      if (e.norm() > 1e-10 * (1 + norm_b)) {
        const VectorXd coef = gram_ldlt.solve(e);
        BlockVec xc = xn;
        for (Index k = 0; k < m; ++k)
          for (std::size_t b = 0; b < nb; ++b) xc[b] += coef(k) * p.a[k][b];
        if (factor(xc).ok) xn = std::move(xc);
      }
    }
    x = std::move(xn);
    z = std::move(zn);
    if (m) y += ad * dy;

    if (ap < 1e-10 && ad < 1e-10) {
      if (++stalls >= 3) {
        best.status = SdpStatus::NumericalFailure;
        return best;
      }
    } else {
      stalls = 0;
    }
  }
  best.status = SdpStatus::IterationLimit;
  return best;
}

}  // namespace conicscope
