#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "extnfs/factorbase.hpp"
#include "extnfs/lattice.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/polyselect.hpp"

namespace extnfs {

/* Axis-aligned sieving region [-B1,B1[ x ... x [-B4,B4[. */
struct Orthotope {
    std::array<long long, 4> half{32, 32, 32, 32};

    uint64_t point_count() const {
        uint64_t n = 1;
        for (auto b : half) n *= (uint64_t)(2 * b);
        return n;
    }
    bool contains(const std::array<long long, 4>& x) const {
        for (int i = 0; i < 4; i++)
            if (x[(size_t)i] < -half[(size_t)i] || x[(size_t)i] >= half[(size_t)i]) return false;
        return true;
    }
    uint64_t pack(const std::array<long long, 4>& x) const {
        uint64_t idx = 0, stride = 1;
        for (int i = 0; i < 4; i++) {
            idx += stride * (uint64_t)(x[(size_t)i] + half[(size_t)i]);
            stride *= (uint64_t)(2 * half[(size_t)i]);
        }
        return idx;
    }
};

/* Special-q sieving lattice: the raw congruence basis and its LLL
 * reduction. */
struct SpecialQ {
    PrimeIdeal ideal;
    Basis4 raw_basis;
    Basis4 reduced_basis;
};

SpecialQ build_special_q_lattice(const PrimeIdeal& ideal, const PolySetup& setup,
                                 bool paper_t2_matrix = false);

/* Algorithm "3d Subspace Intersects Box": signs of the 16 box corners
 * against the affine functional N.(P - V). Exact, per-dimension bounds. */
bool subspace_intersects_box(const std::array<long long, 4>& N, const std::array<long long, 4>& V,
                             const Orthotope& box);

/* Algorithm "Integer Linear Programming for 3d Subroutine of 4d Sieve":
 * returns (a, b) with R + a u + b v in the box and b maximal (a maximal for
 * that b). Throws std::runtime_error("contract violation") when the plane
 * misses the box. */
std::pair<long long, long long> ilp_start_point(const std::array<long long, 4>& u,
                                                const std::array<long long, 4>& v,
                                                const std::array<long long, 4>& R,
                                                const Orthotope& box);

/* Exact enumeration of { z : basis * z in box }, emitted as (z, x = basis*z),
 * each point once: hyperspaces along the 4th column (cross4 normal and the
 * V_T walk), planes along the 3rd, Algorithm-2 bounds within a plane. */
void enumerate_box(const Basis4& reduced, const Orthotope& box,
                   const std::function<void(const std::array<long long, 4>&,
                                            const std::array<long long, 4>&)>& emit);

// convenience: collected output of enumerate_box
std::vector<std::array<long long, 4>> enumerate_box_points(const Basis4& reduced,
                                                           const Orthotope& box);

struct IdealExp {
    PrimeIdeal ideal;
    int exp;
};

/* A sieve report: coprime sign-normalized (a,b,c,d) with full ideal
 * factorizations of both norms. */
struct Relation {
    std::array<long long, 4> e{};
    std::vector<IdealExp> fac[2];
    PrimeIdeal special;

    std::string str() const;                       // normative text format
    static Relation parse(const std::string& s);   // inverse
};

// first nonzero coordinate positive; idempotent
void sign_normalize(std::array<long long, 4>& e);

struct SieveParams {
    Orthotope box;
    uint64_t sieve_bound = 4096;
    std::array<uint64_t, 2> lpb{65536, 65536};
    int threshold_slack = 25;   // bits below the median sample norm
    uint64_t rho_budget = 1u << 18;
    uint64_t max_box_points = 1ull << 30;  // memory guard
    bool allow_deg2_special_q = false;
    /* special-q whose lattice meets the box in at most this many points skip
     * the sieve and cofactorize every point directly (worthwhile once the
     * per-prime lattice setup would dominate) */
    uint64_t direct_cofactor_points = 0;
};

struct SieveStats {
    uint64_t lattice_points = 0;
    uint64_t candidates = 0;
    uint64_t relations = 0;
    uint64_t discarded_attribution = 0;
};

/* Sieve one special-q: enumerate factor-base sublattices over the box,
 * accumulate log weights (list/sort), threshold, cofactorize survivors and
 * emit relations. Deterministic for fixed inputs. */
std::vector<Relation> sieve_special_q(const PolySetup& setup, const IdealClassifier& cls,
                                      const SpecialQ& sq, const SieveParams& params,
                                      SieveStats* stats = nullptr);

/* Factor both norms of a coprime element over the classifier (primes up to
 * per-side bound), or nullopt if not smooth / attribution fails. Shared by
 * the sieve and the descent. */
std::optional<Relation> assemble_relation(const PolySetup& setup, const IdealClassifier& cls,
                                          const std::array<long long, 4>& e,
                                          const std::array<uint64_t, 2>& bound,
                                          uint64_t rho_budget);

}  // namespace extnfs
