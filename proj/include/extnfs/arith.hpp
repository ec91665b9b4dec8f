#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace extnfs {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return (uint64_t)((unsigned __int128)a * b % m);
}

inline uint64_t addmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline uint64_t submod_u64(uint64_t a, uint64_t b, uint64_t m) { return a >= b ? a - b : a + (m - b); }

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline int64_t gcd_i64(int64_t a, int64_t b) {
    uint64_t ua = a < 0 ? (uint64_t)(-a) : (uint64_t)a;
    uint64_t ub = b < 0 ? (uint64_t)(-b) : (uint64_t)b;
    return (int64_t)gcd_u64(ua, ub);
}

inline uint64_t invmod_u64(uint64_t a, uint64_t m) {
    // extended Euclid; requires gcd(a, m) = 1
    int64_t t = 0, newt = 1;
    int64_t r = (int64_t)m, newr = (int64_t)(a % m);
    while (newr != 0) {
        int64_t qq = r / newr;
        int64_t tmp = t - qq * newt;
        t = newt;
        newt = tmp;
        tmp = r - qq * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::invalid_argument("invmod: not invertible");
    if (t < 0) t += (int64_t)m;
    return (uint64_t)t;
}

// deterministic Miller-Rabin, valid for all n < 2^64
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        s++;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; i++) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// primes in [2, bound] by sieve of Eratosthenes
inline std::vector<uint64_t> primes_up_to(uint64_t bound) {
    std::vector<uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> composite(bound + 1, false);
    for (uint64_t i = 2; i * i <= bound; i++)
        if (!composite[i])
            for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
    for (uint64_t i = 2; i <= bound; i++)
        if (!composite[i]) out.push_back(i);
    return out;
}

}  // namespace extnfs
