#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "extnfs/factorbase.hpp"
#include "extnfs/logdb.hpp"
#include "extnfs/sieve4d.hpp"
#include "extnfs/smooth.hpp"
#include "extnfs/tower.hpp"

namespace extnfs {

struct DescentParams {
    uint64_t fb_bound = 65536;   // database coverage bound
    int bl_bits = 32;            // initial-split smoothness bound, bits
    int bi_bits = 22;            // intermediate bound, bits
    int split_shift_tries = 48;  // shifts i of t*g^i
    int split_cands_per_shift = 80;
    uint64_t vector_budget = 60000;  // randomized vectors per intermediate node
    uint64_t rho_budget = 1u << 20;
    int max_depth = 16;
    long long box_scale = 6;     // descent box half-width = scale * q^(1/4)
    double tighten = 0.9;        // Q bit-length factor per level
    double relax = 1.1;          // rare relaxation, at most twice
    uint64_t seed = 42;
};

struct SplitResult {
    long shift = 0;                      // i with image = subfield * t * g^i
    std::array<long long, 4> element{};  // the side-0 lift
    FactoredInteger norm_factors;        // full side-0 norm factorization
};

/* Indented per-node descent record, consumed by the verifier for audit. */
struct DescentTranscript {
    std::vector<std::string> lines;
    void note(int depth, const std::string& text) {
        lines.push_back(std::string((size_t)(2 * depth), ' ') + text);
    }
    std::string str() const {
        std::string out;
        for (const auto& l : lines) out += l + "\n";
        return out;
    }
};

/* Subfield-assisted initial split: search shifts i and short vectors of the
 * lattice of representatives of (subfield multiples of) t g^i until the
 * side-0 lift has a B_L-smooth, descent-usable norm. */
SplitResult initial_split(const TowerElement& t, const TowerElement& g, const PolySetup& setup,
                          const IdealClassifier& cls, const LogDatabase& db,
                          const DescentParams& params, DescentTranscript* transcript = nullptr);

/* Randomized short vectors of the special-q lattice until both norms are
 * B_I-smooth (q excepted on its own side); returns the witness relation. */
Relation intermediate_descent(const PrimeIdeal& q, const PolySetup& setup,
                              const IdealClassifier& cls, const LogDatabase& db,
                              const DescentParams& params, DescentTranscript* transcript = nullptr);

/* Special-q descent: resolves every root ideal against the database by
 * sieved Q-smooth witness relations, recursing on new primes; extends db. */
void special_q_descent(const std::vector<PrimeIdeal>& roots, const PolySetup& setup,
                       const IdealClassifier& cls, const SchirokauerSpec& sm0,
                       const SchirokauerSpec& sm1, LogDatabase& db, const DescentParams& params,
                       DescentTranscript* transcript = nullptr);

/* log_g(t) mod ell via initial split + descent for both generator and
 * target. */
uint64_t compute_dlog(const TowerElement& g, const TowerElement& t, const PolySetup& setup,
                      const IdealClassifier& cls, const SchirokauerSpec& sm0,
                      const SchirokauerSpec& sm1, LogDatabase& db, const DescentParams& params,
                      DescentTranscript* transcript = nullptr);

// g^(C vlog_t) == t^(C vlog_g) with C = (p^4-1)/ell
bool verify_dlog(const TowerElement& g, const TowerElement& t, const Int& vlog_g,
                 const Int& vlog_t, const PolySetup& setup);

}  // namespace extnfs
