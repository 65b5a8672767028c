#include "glt/polytope.hpp"

namespace glt {

template class PolytopeT<double, 4>;

}  // namespace glt
