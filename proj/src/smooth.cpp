#include "extnfs/smooth.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "extnfs/arith.hpp"

namespace extnfs {

bool is_prime(const Int& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(mpz_get_ui(n.get_mpz_t()));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

const std::vector<uint64_t>& small_primes() {
    static const std::vector<uint64_t> table = primes_up_to(1u << 20);
    return table;
}

/* Brent-cycle Pollard rho; returns a nontrivial factor, or nullopt when the
 * iteration budget runs out. n odd composite. */
std::optional<Int> rho_brent(const Int& n, uint64_t budget, unsigned long c0) {
    Int y(2), c(c0);
    Int g(1), q(1), x, ys, d;
    uint64_t r = 1, spent = 0;
    const uint64_t mstep = 128;
    while (g == 1) {
        x = y;
        for (uint64_t i = 0; i < r; i++) y = (y * y + c) % n;
        uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            uint64_t lim = std::min(mstep, r - k);
            for (uint64_t i = 0; i < lim; i++) {
                y = (y * y + c) % n;
                d = x - y;
                if (d < 0) d = -d;
                q = q * d % n;
            }
            g = gcd(q, n);
            k += lim;
            spent += lim;
            if (spent > budget) return std::nullopt;
        }
        r *= 2;
    }
    if (g == n) {
        for (;;) {
            ys = (ys * ys + c) % n;
            d = x - ys;
            if (d < 0) d = -d;
            g = gcd(d, n);
            if (g > 1) break;
            if (++spent > budget) return std::nullopt;
        }
    }
    if (g == n) return std::nullopt;
    return g;
}

}  // namespace

SmoothResult smooth_factor(const Int& n_in, const Int& bound, uint64_t budget) {
    if (n_in == 0) throw std::invalid_argument("smooth_factor(0)");
    SmoothResult res;
    FactoredInteger out;
    out.sign = n_in < 0 ? -1 : 1;
    Int n = abs(n_in);

    std::map<Int, int> fac;
    auto add = [&](const Int& p, int e) { fac[p] += e; };

    const auto& primes = small_primes();
    uint64_t td_limit = bound < Int((unsigned long)1000000) ? mpz_get_ui(bound.get_mpz_t()) : 1000000;

    /* trial division; when the loop stops because p^2 exceeds the cofactor,
     * the cofactor is prime and is absorbed on the spot */
    auto divide_u64 = [&](uint64_t v) -> uint64_t {
        for (uint64_t p : primes) {
            if (p > td_limit) break;
            if (p * p > v) {
                if (v > 1) {
                    add(Int((unsigned long)v), 1);
                    v = 1;
                }
                break;
            }
            while (v % p == 0) {
                add(Int((unsigned long)p), 1);
                v /= p;
            }
        }
        return v;
    };

    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        n = Int((unsigned long)divide_u64(mpz_get_ui(n.get_mpz_t())));
    } else {
        for (uint64_t p : primes) {
            if (p > td_limit) break;
            while (mpz_divisible_ui_p(n.get_mpz_t(), (unsigned long)p)) {
                add(Int((unsigned long)p), 1);
                n /= (unsigned long)p;
            }
            if (mpz_fits_ulong_p(n.get_mpz_t())) {
                n = Int((unsigned long)divide_u64(mpz_get_ui(n.get_mpz_t())));
                break;
            }
        }
    }

    /* when the bound itself was the trial-division limit, any remaining
     * cofactor only has prime factors above the bound */
    if (n > 1 && bound <= Int((unsigned long)td_limit)) {
        res.reject = SmoothReject::exceeds_bound;
        return res;
    }

    // cofactor below the trial-division square is prime
    std::vector<Int> stack;
    if (n > 1) stack.push_back(n);
    Int td2 = Int((unsigned long)td_limit) * Int((unsigned long)td_limit);

    while (!stack.empty()) {
        Int m = stack.back();
        stack.pop_back();
        if (m == 1) continue;
        /* every prime factor left exceeds td_limit, so m <= td_limit^2
         * forces m prime */
        if (m <= td2 || is_prime(m)) {
            add(m, 1);
            continue;
        }
        if (mpz_perfect_power_p(m.get_mpz_t())) {
            bool split = false;
            for (int k = 2; k <= 64 && !split; k++) {
                Int root;
                if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), (unsigned long)k) != 0) {
                    for (int i = 0; i < k; i++) stack.push_back(root);
                    split = true;
                }
            }
            if (split) continue;
        }
        std::optional<Int> f;
        for (unsigned long c = 1; c <= 8 && !f; c++) f = rho_brent(m, budget, c);
        if (!f) {
            res.reject = SmoothReject::budget_exhausted;
            return res;
        }
        stack.push_back(*f);
        stack.push_back(m / *f);
    }

    for (const auto& [p, e] : fac) {
        if (p > bound) {
            res.reject = SmoothReject::exceeds_bound;
            return res;
        }
        out.factors.emplace_back(p, e);
    }
    res.factored = std::move(out);
    return res;
}

FactoredInteger factor_u64(uint64_t n) {
    if (n == 0) throw std::invalid_argument("factor_u64(0)");
    Int z((unsigned long)n);
    SmoothResult r = smooth_factor(z, z + 1, ~0ull);
    return *r.factored;
}

}  // namespace extnfs
