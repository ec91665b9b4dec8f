#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "extnfs/intpoly.hpp"

namespace extnfs {

/* Signed factored integer; primes strictly increasing, exponents >= 1. */
struct FactoredInteger {
    int sign = 1;
    std::vector<std::pair<Int, int>> factors;

    Int value() const {
        Int v(sign);
        for (const auto& [p, e] : factors)
            for (int i = 0; i < e; i++) v *= p;
        return v;
    }
    Int largest_prime() const { return factors.empty() ? Int(1) : factors.back().first; }
};

enum class SmoothReject { exceeds_bound, budget_exhausted };

struct SmoothResult {
    std::optional<FactoredInteger> factored;  // set on acceptance
    std::optional<SmoothReject> reject;       // set on rejection
    bool accepted() const { return factored.has_value(); }
};

// Miller-Rabin: deterministic below 2^64, 40 rounds above.
bool is_prime(const Int& n);

/* Full factorization of n when every prime factor is <= bound and found
 * within the effort budget (rho iterations); otherwise a reject with
 * reason. Trial division up to min(bound, 10^6), then Brent-cycle Pollard
 * rho. n = 0 throws. */
SmoothResult smooth_factor(const Int& n, const Int& bound, uint64_t budget = 1u << 22);

// convenience: unconditional factorization of a u64 (always succeeds)
FactoredInteger factor_u64(uint64_t n);

}  // namespace extnfs
