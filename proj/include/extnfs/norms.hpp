#pragma once

#include <array>

#include "extnfs/polyselect.hpp"

namespace extnfs {

/* |Res_y(Res_x(a + b y + (c + d y) x, side_poly(x, y)), h(y))| for the
 * element (a,b,c,d). Zero tuple throws. */
Int norm_side(const PolySetup& setup, int side, const std::array<long long, 4>& e);

}  // namespace extnfs
