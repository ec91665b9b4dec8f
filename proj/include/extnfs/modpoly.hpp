#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "extnfs/intpoly.hpp"

namespace extnfs {

/* Dense polynomial over F_q, q a word-sized prime. Coefficients reduced to
 * [0, q). Degree -1 = zero polynomial. */
class ModPoly {
  public:
    ModPoly() : q_(2) {}
    explicit ModPoly(uint64_t q) : q_(q) {}
    ModPoly(uint64_t q, std::vector<uint64_t> coeffs) : q_(q), c_(std::move(coeffs)) { trim(); }
    static ModPoly from_int_poly(const IntPoly& f, uint64_t q);
    static ModPoly x(uint64_t q) { return ModPoly(q, {0, 1}); }

    uint64_t q() const { return q_; }
    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    uint64_t coeff(int i) const { return (i < 0 || i >= (int)c_.size()) ? 0 : c_[(size_t)i]; }
    uint64_t lc() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<uint64_t>& coeffs() const { return c_; }
    bool operator==(const ModPoly& o) const { return q_ == o.q_ && c_ == o.c_; }

    ModPoly monic() const;
    uint64_t eval(uint64_t x) const;

    friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
    friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
    ModPoly rem(const ModPoly& mod) const;
    ModPoly mul_rem(const ModPoly& b, const ModPoly& mod) const;
    ModPoly derivative() const;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

  private:
    uint64_t q_;
    std::vector<uint64_t> c_;
};

ModPoly poly_gcd(ModPoly a, ModPoly b);  // monic gcd
// base^e mod f (exponent as plain machine word)
ModPoly poly_powmod(const ModPoly& base, uint64_t e, const ModPoly& f);
// x^(q^k) mod f via iterated Frobenius
ModPoly frobenius_power(const ModPoly& f, int k);

// Roots of f mod q, each distinct root once, ascending. Throws on f = 0 mod q.
std::vector<uint64_t> roots_mod(const IntPoly& f, uint64_t q);
// true iff f mod q is irreducible over F_q. Throws on f = 0 mod q.
bool is_irreducible_mod(const IntPoly& f, uint64_t q);

// full factorization of nonzero f over F_q: monic irreducible factors with
// multiplicities (ascending by degree, then lexicographically), plus the
// leading unit
struct ModFactorization {
    uint64_t unit;
    std::vector<std::pair<ModPoly, int>> factors;
};
ModFactorization factor_mod(const ModPoly& f);

/* Quadratic extension F_{q^2} = F_q[w]/(w^2 + m1 w + m0), elements are
 * coordinate pairs (e0, e1) = e0 + e1 w. Used for the inert-q side of the
 * factor base and for factoring quadratics over F_q(alpha). */
struct Fq2 {
    uint64_t q, m1, m0;  // modulus w^2 + m1 w + m0, irreducible over F_q

    using E = std::array<uint64_t, 2>;
    E zero() const { return {0, 0}; }
    E one() const { return {1, 0}; }
    bool is_zero(const E& a) const { return a[0] == 0 && a[1] == 0; }
    E add(const E& a, const E& b) const;
    E sub(const E& a, const E& b) const;
    E neg(const E& a) const;
    E mul(const E& a, const E& b) const;
    E inv(const E& a) const;
    E pow(E a, uint64_t e) const;
    E pow128(E a, unsigned __int128 e) const;
};

/* Polynomial over F_{q^2}, dense, same conventions as ModPoly. Only the
 * small degrees the classifier needs (<= 8). */
class Ext2Poly {
  public:
    Ext2Poly() = default;
    explicit Ext2Poly(std::vector<Fq2::E> coeffs) : c_(std::move(coeffs)) {}
    int degree_raw() const { return (int)c_.size() - 1; }
    const std::vector<Fq2::E>& coeffs() const { return c_; }
    std::vector<Fq2::E>& coeffs() { return c_; }

  private:
    std::vector<Fq2::E> c_;
};

// distinct roots of f over F_{q^2}, sorted by (e1, e0); f need not be monic,
// leading coefficient must be a unit
std::vector<Fq2::E> roots_over_fq2(const Fq2& F, std::vector<Fq2::E> coeffs);

}  // namespace extnfs
