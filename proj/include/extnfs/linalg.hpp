#pragma once

#include <cstdint>
#include <vector>

#include "extnfs/polyselect.hpp"
#include "extnfs/relproc.hpp"
#include "extnfs/sieve4d.hpp"

namespace extnfs {

// r1 + r2 - 1 from the real/complex root signature; throws on reducible input
int unit_rank(const IntPoly& abs_poly);

/* Schirokauer map data for one side: the absolute polynomial, the unit rank
 * (number of map coordinates), the exponent eps = lcm(ell^di - 1) over the
 * degrees of the irreducible factors of abs_poly mod ell, and the image of
 * alpha in the absolute field mod (ell^2, abs_poly). */
struct SchirokauerSpec {
    int side = 0;
    IntPoly abs_poly;
    int rank = 0;
    Int epsilon;
    int coord_start = 0;
    std::vector<Int> alpha_image;  // coordinates mod ell^2
    Int ell, ell2;
};

SchirokauerSpec build_schirokauer_spec(const PolySetup& setup, int side, const Int& ell);

/* The designated rank coordinates of mu, where z^eps = 1 + ell*mu in
 * (Z/ell^2)[X]/(abs_poly) and z is the element's image through the
 * relative->absolute map. Throws "SM undefined, resieve" when ell divides
 * the norm. */
std::vector<uint64_t> schirokauer_map(const PolySetup& setup, const SchirokauerSpec& spec,
                                      const std::array<long long, 4>& e);

/* Rows over F_ell: ideal columns (side 0 positive, side 1 negative), then
 * side-0 SM columns, then side-1 SM columns. */
struct SparseSystem {
    uint64_t ell = 0;
    size_t nrows = 0, ncols = 0;
    std::vector<std::vector<std::pair<uint32_t, uint64_t>>> rows;
    std::vector<PrimeIdeal> col_ideals;       // the ideal columns, in order
    std::array<int, 2> sm_rank{0, 0};

    size_t sm_col(int side, int j) const {
        return col_ideals.size() + (side == 1 ? (size_t)sm_rank[0] : 0) + (size_t)j;
    }
    std::vector<uint64_t> apply(const std::vector<uint64_t>& v) const;
};

SparseSystem build_system(const std::vector<Relation>& rels, const std::vector<RelationSet>& sets,
                          const PolySetup& setup, const SchirokauerSpec& sm0,
                          const SchirokauerSpec& sm1, uint64_t ell);

/* Nonzero v with M v = 0 mod ell via plain Wiedemann (random square
 * projection, Krylov sequence, Berlekamp-Massey, evaluation); reseeded on
 * failure, at most five attempts, then "wiedemann: full rank". The result
 * is verified with one sparse multiply before returning. */
std::vector<uint64_t> wiedemann_nullspace(const SparseSystem& m, uint64_t seed = 1);

}  // namespace extnfs
