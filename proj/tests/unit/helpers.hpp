#pragma once

#include "conicscope/symmat.hpp"

#include <initializer_list>

namespace conicscope::test {

template <typename Scalar = double>
SymMat<Scalar> sym(std::initializer_list<std::initializer_list<int>> rows) {
  const Index d = static_cast<Index>(rows.size());
  Matrix<Scalar> m(d, d);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (int v : r) m(i, j++) = Scalar(v);
    ++i;
  }
  return SymMat<Scalar>::fromFull(m);
}

inline VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace conicscope::test
