#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "extnfs/intpoly.hpp"
#include "extnfs/relpoly.hpp"
#include "extnfs/tower.hpp"

namespace extnfs {

/* Tower shape for F_{p^4} with eta = kappa = 2 and the target subgroup
 * order ell, ell * cofactor = p^2 + 1. */
struct TowerParams {
    Int p;
    int eta = 2;
    int kappa = 2;
    Int ell;
    Int cofactor;
};

/* Everything the pipeline reads: the tower (h, f0, g0), the absolute
 * polynomials f, g, and the conjugation data (s, t, u, v). */
struct PolySetup {
    TowerParams params;
    IntPoly h;              // degree 2, monic
    RelPoly f0, g0;         // degree 2 and 4 in x
    IntPoly f, g;           // absolute polynomials, degree 4 and 8
    Int s;                  // small non-square QR mod p
    std::array<Int, 2> t;   // t0 + t1*alpha
    Int u, v;               // short vector, u^2 = s v^2 mod p

    TowerField field() const {
        return TowerField(params.p, h, f0.coeff(2), f0.coeff(1), f0.coeff(0));
    }
    const IntPoly& side_abs(int side) const { return side == 0 ? f : g; }
    const RelPoly& side_rel(int side) const { return side == 0 ? f0 : g0; }
};

struct SetupCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct SetupReport {
    std::vector<SetupCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string str() const;
};

struct SelectSearch {
    long max_s = 2000;
    long max_t_coeff = 4;
    uint64_t seed = 1;
};

/* Conjugation-method selection. Deterministic for fixed params/search/seed:
 * s ascends over non-square quadratic residues mod p, t over pairs ordered
 * by max coefficient; among setups passing verify_setup at the first viable
 * s, the best quality_score over 5 sample primes wins. Throws with the list
 * of tried (s,t) pairs when the search space is exhausted. */
PolySetup select_polynomials(const TowerParams& params, const SelectSearch& search);

/* Per-check validation: h irreducible mod p, f0 irreducible over F_{p^2},
 * f0 | g0 over F_{p^2}, f and g irreducible over Q, ell | p^2+1, plus the
 * short-vector congruence. Failures are reported, not thrown. */
SetupReport verify_setup(const PolySetup& setup);

/* Mean bit length of |N0|+|N1| over a deterministic sample of sieve-lattice
 * points for each sample q (degree-1, side 0); lower is better. */
double quality_score(const PolySetup& setup, const std::vector<uint64_t>& sample_qs);

// the conjugation-method polynomials: f0 = t v x^2 + u x + t v and
// g0 = t^2 x^4 + (2 t^2 - s) x^2 + t^2 with t^2 reduced by h
RelPoly conjugation_f0(const std::array<Int, 2>& t, const Int& u, const Int& v);
RelPoly conjugation_g0(const std::array<Int, 2>& t, const Int& s, const IntPoly& h);

}  // namespace extnfs
