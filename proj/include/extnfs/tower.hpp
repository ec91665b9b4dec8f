#pragma once

#include <array>

#include "extnfs/intpoly.hpp"

namespace extnfs {

/* Element of the tower F_p -> K = F_p[y]/(h) -> F = K[x]/(f0), coordinates
 * on the basis (1, y, x, yx), reduced to [0, p). */
enum class TowerLevel { base, quadratic, quartic };

struct TowerElement {
    TowerLevel level = TowerLevel::base;
    std::array<Int, 4> c{};  // (1, y, x, yx)

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
    bool operator==(const TowerElement& o) const { return c == o.c; }
};

/* Arithmetic context: p, h = y^2 + h1 y + h0 (monic mod p), and the monic
 * x-reduction x^2 = s1 x + s0 with s1, s0 in K derived from f0. */
class TowerField {
  public:
    using K = std::array<Int, 2>;  // a0 + a1 y

    TowerField(Int p, const IntPoly& h, const K& f0_lead, const K& f0_mid, const K& f0_const);

    const Int& p() const { return p_; }

    // K-level helpers
    K kadd(const K& a, const K& b) const;
    K ksub(const K& a, const K& b) const;
    K kmul(const K& a, const K& b) const;
    K kinv(const K& a) const;
    Int knorm(const K& a) const;  // to F_p, reduced
    bool kzero(const K& a) const { return a[0] == 0 && a[1] == 0; }

    TowerElement make(const Int& c0, const Int& c1, const Int& c2, const Int& c3) const;
    TowerElement one() const { return make(1, 0, 0, 0); }

    TowerElement add(const TowerElement& a, const TowerElement& b) const;
    TowerElement sub(const TowerElement& a, const TowerElement& b) const;
    TowerElement mul(const TowerElement& a, const TowerElement& b) const;
    TowerElement inv(const TowerElement& a) const;  // throws on zero
    TowerElement pow(const TowerElement& a, const Int& e) const;  // e >= 0

  private:
    Int red(const Int& x) const {
        Int r = x % p_;
        if (r < 0) r += p_;
        return r;
    }
    static TowerLevel level_of(const std::array<Int, 4>& c) {
        if (c[2] != 0 || c[3] != 0) return TowerLevel::quartic;
        if (c[1] != 0) return TowerLevel::quadratic;
        return TowerLevel::base;
    }

    Int p_;
    Int h1_, h0_;   // y^2 = -h1 y - h0
    K s1_, s0_;     // x^2 = s1 x + s0
};

}  // namespace extnfs
