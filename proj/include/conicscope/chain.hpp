#pragma once

#include "conicscope/symmat.hpp"

#include <vector>

namespace conicscope {

/// One functional (C_i, c_i) on Sym^d ⊕ R. Elements are cumulative, so the
/// faces F_i = K ∩ (C_i, c_i)^⊥ are nested by construction.
struct ChainLink {
  SymMatd c_mat;
  double c = 0;
};

struct CertificateChain {
  std::vector<ChainLink> links;
  Index length() const { return static_cast<Index>(links.size()); }
  bool empty() const { return links.empty(); }
};

}  // namespace conicscope
