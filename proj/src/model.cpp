#include "conicscope/model.hpp"

namespace conicscope {

template class Pencil<double>;
template class Pencil<Rational>;
template class ImplicitSdp<double>;
template class ImplicitSdp<Rational>;
template class ProjSpecRep<double>;

}  // namespace conicscope
