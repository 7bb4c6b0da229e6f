#pragma once

// Tangent cones of the PSD cone at a face and the single-cut test.

#include "conicscope/cone.hpp"
#include "conicscope/oracle.hpp"

#include <string>

namespace conicscope {

/// Lineality space of TC_F(Sym^d_+) for a face F of a single PSD block:
/// {X : UᵀXU = 0} with U = ker F, packed isometrically. `m` must lie in
/// relint F.
Subspace tangent_cone_lineality(const FaceDescriptor& f, const SymMatd& m, double tol = kDefaultTol);

enum class Separability { SingleCut, NeedsChain };
std::string to_string(Separability s);

struct SeparabilityResult {
  Separability verdict = Separability::NeedsChain;
  bool precondition_ok = true;  // F is the minimal face and m ∈ relint F ∩ W
  std::string note;
};

/// One hyperplane exposes F iff TC_F ∩ W lies in the lineality space, i.e.
/// the compressions UᵀwU (w ∈ W) meet the PSD cone only at 0.
SeparabilityResult separability_at_face(const Subspace& w, const FaceDescriptor& f, const SymMatd& m,
                                        const OracleOptions& opt = {});

}  // namespace conicscope
