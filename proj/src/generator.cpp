#include "conicscope/generator.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <random>

namespace conicscope {

std::string to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::StrongFeas: return "strong_feas";
    case InstanceKind::WeakFeas: return "weak_feas";
    case InstanceKind::StableInfeas: return "stable_infeas";
    case InstanceKind::StrongUnstableInfeas: return "strong_unstable_infeas";
    case InstanceKind::WeakInfeas: return "weak_infeas";
  }
  return "?";
}

InstanceKind instance_kind_from_string(const std::string& s) {
  for (auto k : {InstanceKind::StrongFeas, InstanceKind::WeakFeas, InstanceKind::StableInfeas,
                 InstanceKind::StrongUnstableInfeas, InstanceKind::WeakInfeas})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown instance kind: " + s);
}

Index max_vars(InstanceKind kind, Index d) {
  const Index full = svec_size(d);
  switch (kind) {
    case InstanceKind::StrongFeas:
    case InstanceKind::StableInfeas:
    case InstanceKind::StrongUnstableInfeas: return full - 1;
    case InstanceKind::WeakFeas: return full - 2;
    case InstanceKind::WeakInfeas: return d * (d - 1) / 2;
  }
  return 0;
}

namespace {

using Rng = std::mt19937_64;

// Integer data throughout, so every instance is exactly representable and
// its faces are rational subspaces.
SymMatd int_sym(Index d, int lo, int hi, Rng& rng) {
  std::uniform_int_distribution<int> g(lo, hi);
  SymMatd s(d);
  for (Index i = 0; i < d; ++i)
    for (Index j = i; j < d; ++j) s.set(i, j, g(rng));
  return s;
}

MatrixXd int_matrix(Index r, Index c, int lo, int hi, Rng& rng) {
  std::uniform_int_distribution<int> g(lo, hi);
  MatrixXd m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = g(rng);
  return m;
}

// Unimodular integer matrix (product of unit triangular factors with
// entries in {−1, 0, 1}); congruence by it is an automorphism of the cone
// that keeps integer data integral.
MatrixXd unimodular(Index d, Rng& rng) {
  MatrixXd l = MatrixXd::Identity(d, d), u = MatrixXd::Identity(d, d);
  std::uniform_int_distribution<int> g(-1, 1);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < i; ++j) {
      l(i, j) = g(rng);
      u(j, i) = g(rng);
    }
  std::vector<Index> perm(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  MatrixXd p = MatrixXd::Zero(d, d);
  for (Index i = 0; i < d; ++i) p(i, perm[static_cast<std::size_t>(i)]) = 1;
  return p * l * u;
}

// Positive definite integer matrix G Gᵀ + lo·I.
SymMatd int_spd(Index d, int lo, Rng& rng) {
  const MatrixXd g = int_matrix(d, d, -1, 1, rng);
  return SymMatd::fromFull(g * g.transpose() + lo * MatrixXd::Identity(d, d));
}

SymMatd congruent(const SymMatd& a, const MatrixXd& q) { return SymMatd::fromFull(q.transpose() * a.matrix() * q); }

Pencild congruent(const Pencild& p, const MatrixXd& q) {
  std::vector<SymMatd> gens;
  for (const auto& g : p.generators()) gens.push_back(congruent(g, q));
  return Pencild(congruent(p.constant(), q), gens);
}

void check_range(InstanceKind kind, Index d, Index n) {
  if (d < 2) throw std::invalid_argument("generator: need d >= 2");
  if (n < 1 || n > max_vars(kind, d))
    throw std::invalid_argument("generator: n = " + std::to_string(n) + " outside [1, " +
                                std::to_string(max_vars(kind, d)) + "] for " + to_string(kind));
}

// Retries on the rare random draw that violates independence or properness.
template <typename Build>
Pencild build_proper(Build&& build) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    try {
      Pencild p = build();
      if (p.proper()) return p;
    } catch (const DependentGeneratorsError&) {
    }
  }
  throw std::runtime_error("generator: could not draw a proper instance");
}

}  // namespace

GroundTruth<double> generate_ground_truth(InstanceKind kind, Index d, Index n, std::uint64_t seed) {
  check_range(kind, d, n);
  Rng rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  GroundTruth<double> out;
  switch (kind) {
    case InstanceKind::StrongFeas: {
      out.pencil = build_proper([&] {
        SymMatd a0 = int_spd(d, 1, rng);
        std::vector<SymMatd> gens;
        for (Index i = 0; i < n; ++i) {
          gens.push_back(int_sym(d, -2, 2, rng));
          a0 -= double(coef(rng)) * gens.back();
        }
        return Pencild(a0, gens);
      });
      out.expected = {FeasibilityType::StronglyFeasible, false, Index(0)};
      break;
    }
    case InstanceKind::WeakFeas: {
      // X ⪰ 0 with kernel e1 and e1ᵀA_ie1 = 0 for every generator, so each
      // feasible point lies in the face {e1 ∈ ker}; then a unimodular
      // congruence hides the coordinate structure.
      out.pencil = build_proper([&] {
        SymMatd x = SymMatd::zero(d);
        const SymMatd tail = int_spd(d - 1, 1, rng);
        for (Index i = 1; i < d; ++i)
          for (Index j = i; j < d; ++j) x.set(i, j, tail(i - 1, j - 1));
        std::vector<SymMatd> gens;
        SymMatd a0 = x;
        for (Index i = 0; i < n; ++i) {
          SymMatd a = int_sym(d, -2, 2, rng);
          a.set(0, 0, 0);
          gens.push_back(a);
          a0 -= double(coef(rng)) * a;
        }
        return congruent(Pencild(a0, gens), unimodular(d, rng));
      });
      out.expected = {FeasibilityType::WeaklyFeasible, false, std::nullopt};
      break;
    }
    case InstanceKind::StableInfeas: {
      // ⟨C, A_i⟩ = 0 and ⟨C, A0⟩ = −⟨C, C⟩ for a positive definite C.
      out.pencil = build_proper([&] {
        const SymMatd c = int_spd(d, 1, rng);
        const double cc = frobenius_sq(c);
        std::vector<SymMatd> gens;
        for (Index i = 0; i < n; ++i) {
          const SymMatd a = int_sym(d, -2, 2, rng);
          gens.push_back(cc * a - inner(a, c) * c);
        }
        const SymMatd a0 = int_sym(d, -2, 2, rng);
        return Pencild(cc * a0 - (inner(a0, c) + 1.0) * c, gens);
      });
      out.expected = {FeasibilityType::StronglyInfeasible, true, Index(1)};
      break;
    }
    case InstanceKind::StrongUnstableInfeas: {
      // e1ᵀXe1 = −1 on L, so E11 is an affine certificate; the generator
      // P ⪰ 0 with kernel e1 forces every certificate onto the ray of E11,
      // hence no positive definite one exists.
      out.pencil = build_proper([&] {
        SymMatd p = SymMatd::zero(d);
        const SymMatd tail = int_spd(d - 1, 1, rng);
        for (Index i = 1; i < d; ++i)
          for (Index j = i; j < d; ++j) p.set(i, j, tail(i - 1, j - 1));
        std::vector<SymMatd> gens{p};
        for (Index i = 1; i < n; ++i) {
          SymMatd a = int_sym(d, -2, 2, rng);
          a.set(0, 0, 0);
          gens.push_back(a);
        }
        SymMatd a0 = int_sym(d, -2, 2, rng);
        a0.set(0, 0, -1);
        return congruent(Pencild(a0, gens), unimodular(d, rng));
      });
      out.expected = {FeasibilityType::StronglyInfeasible, false, std::nullopt};
      break;
    }
    case InstanceKind::WeakInfeas: {
      // [[0,1],[1,0]] ⊕ B0 with A1 = E22 and the rest supported away from the
      // first row and column.
      out.pencil = build_proper([&] {
        MatrixXd a0 = MatrixXd::Zero(d, d);
        a0(0, 1) = a0(1, 0) = 1;
        if (d > 2) a0.bottomRightCorner(d - 2, d - 2) = int_spd(d - 2, 1, rng).matrix();
        std::vector<SymMatd> gens{SymMatd::unit(d, 1, 1)};
        for (Index i = 1; i < n; ++i) {
          MatrixXd a = MatrixXd::Zero(d, d);
          a.bottomRightCorner(d - 1, d - 1) = int_sym(d - 1, -2, 2, rng).matrix();
          gens.push_back(SymMatd::fromFull(a));
        }
        const Pencild p(SymMatd::fromFull(a0), gens);
        return seed == 0 ? p : congruent(p, unimodular(d, rng));
      });
      out.expected = {FeasibilityType::WeaklyInfeasible, false, std::nullopt};
      break;
    }
  }
  return out;
}

GroundTruth<Rational> generate_stable_rational(Index d, Index n, std::uint64_t seed) {
  check_range(InstanceKind::StableInfeas, d, n);
  Rng rng(seed);
  std::uniform_int_distribution<int> small(-2, 2);
  auto int_sym = [&] {
    SymMatq s(d);
    for (Index i = 0; i < d; ++i)
      for (Index j = i; j < d; ++j) s.set(i, j, Rational(small(rng)));
    return s;
  };
  for (int attempt = 0; attempt < 100; ++attempt) {
    MatrixXq g(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) g(i, j) = Rational(small(rng));
    const SymMatq c = SymMatq::fromFull(MatrixXq(g * g.transpose() + MatrixXq::Identity(d, d)));
    const Rational cc = frobenius_sq(c);
    std::vector<SymMatq> gens;
    for (Index i = 0; i < n; ++i) {
      SymMatq a = int_sym();
      a -= (inner(a, c) / cc) * c;
      gens.push_back(a);
    }
    SymMatq a0 = int_sym();
    a0 -= ((inner(a0, c) + Rational(1)) / cc) * c;
    try {
      Pencilq p(a0, gens);
      if (p.proper()) return {p, {FeasibilityType::StronglyInfeasible, true, Index(1)}};
    } catch (const DependentGeneratorsError&) {
    }
  }
  throw std::runtime_error("generator: could not draw a proper rational instance");
}

}  // namespace conicscope
