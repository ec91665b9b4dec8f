#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace extnfs {

using Int = mpz_class;

/* Dense univariate polynomial over Z, coefficient index = degree of term.
 * The zero polynomial has an empty coefficient vector and degree -1. */
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPoly(std::initializer_list<Int> coeffs) : c_(coeffs) { trim(); }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly constant(Int v) { return IntPoly(std::vector<Int>{std::move(v)}); }
    // x^k with coefficient c
    static IntPoly monomial(const Int& c, int k) {
        std::vector<Int> v((size_t)k + 1, Int(0));
        v[(size_t)k] = c;
        return IntPoly(std::move(v));
    }

    int degree() const { return (int)c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }
    const Int& lc() const {
        static const Int z(0);
        return c_.empty() ? z : c_.back();
    }
    const Int& coeff(int i) const {
        static const Int z(0);
        if (i < 0 || i >= (int)c_.size()) return z;
        return c_[(size_t)i];
    }
    const std::vector<Int>& coeffs() const { return c_; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator-() const {
        std::vector<Int> v(c_);
        for (auto& x : v) x = -x;
        return IntPoly(std::move(v));
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> v(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < v.size(); i++) v[i] = a.coeff((int)i) + b.coeff((int)i);
        return IntPoly(std::move(v));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<Int> v(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); i++)
            for (size_t j = 0; j < b.c_.size(); j++) v[i + j] += a.c_[i] * b.c_[j];
        return IntPoly(std::move(v));
    }
    friend IntPoly operator*(const IntPoly& a, const Int& s) {
        if (s == 0) return IntPoly();
        std::vector<Int> v(a.c_);
        for (auto& x : v) x *= s;
        return IntPoly(std::move(v));
    }

    Int eval(const Int& x) const {  // Horner
        Int r(0);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    IntPoly derivative() const {
        if (c_.size() <= 1) return IntPoly();
        std::vector<Int> v(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); i++) v[i - 1] = c_[i] * (long)i;
        return IntPoly(std::move(v));
    }

    Int content() const {  // gcd of coefficients, 0 for the zero polynomial
        Int g(0);
        for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        return g;
    }

    std::string str(const std::string& var = "x") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// Sylvester-convention resultant via subresultant PRS.
// Throws std::invalid_argument if either input is zero or both are constants.
Int resultant(const IntPoly& f, const IntPoly& g);

// true iff f is irreducible over Q (degree >= 1); small-degree methods (<= 8)
bool irreducible_over_q(const IntPoly& f);

// number of distinct real roots, by Sturm chains (exact)
int count_real_roots(const IntPoly& f);

// gcd over Q of the primitive parts (result primitive, positive lc)
IntPoly gcd_primitive(const IntPoly& f, const IntPoly& g);

}  // namespace extnfs
