#pragma once

#include "extnfs/polyselect.hpp"

namespace extnfs::test {

/* Toy tower: p just above 2^20 with ell | p^2+1 of 35 bits. Selection runs
 * once per process. */
inline const PolySetup& toy_setup() {
    static const PolySetup setup = [] {
        TowerParams params;
        params.p = 1049093;
        params.ell = Int("22011922453");
        params.cofactor = 50;
        SelectSearch search;
        return select_polynomials(params, search);
    }();
    return setup;
}

}  // namespace extnfs::test
