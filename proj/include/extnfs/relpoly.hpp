#pragma once

#include <array>
#include <vector>

#include "extnfs/intpoly.hpp"

namespace extnfs {

/* Polynomial in x over Z[alpha] with coefficients linear in alpha:
 * coefficient i is c[i][0] + c[i][1]*alpha. The conjugation construction
 * only ever produces such coefficients. */
struct RelPoly {
    std::vector<std::array<Int, 2>> c;

    int degree() const {
        int d = (int)c.size() - 1;
        while (d >= 0 && c[(size_t)d][0] == 0 && c[(size_t)d][1] == 0) d--;
        return d;
    }
    bool is_zero() const { return degree() < 0; }
    std::array<Int, 2> coeff(int i) const {
        if (i < 0 || i >= (int)c.size()) return {Int(0), Int(0)};
        return c[(size_t)i];
    }
    // alpha-free part and alpha part as integer polynomials in x
    IntPoly part0() const {
        std::vector<Int> v;
        for (const auto& a : c) v.push_back(a[0]);
        return IntPoly(std::move(v));
    }
    IntPoly part1() const {
        std::vector<Int> v;
        for (const auto& a : c) v.push_back(a[1]);
        return IntPoly(std::move(v));
    }
    std::string str() const;
};

/* Eliminate alpha by the resultant with h: Res_alpha(rel, h). For alpha-free
 * input this is rel^(deg h). If squarefree_out is non-null it is set to
 * false when the result has a repeated factor (downstream ideal logic
 * assumes squarefree absolute polynomials). */
IntPoly absolute_poly(const RelPoly& rel, const IntPoly& h, bool* squarefree_out = nullptr);

}  // namespace extnfs
