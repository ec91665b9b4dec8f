#pragma once

#include <array>

#include "extnfs/intpoly.hpp"

namespace extnfs {

/* 4x4 integer basis, column-major: entry(i, j) = row i of column j. */
struct Basis4 {
    std::array<Int, 16> m{};

    static Basis4 identity() {
        Basis4 b;
        for (int i = 0; i < 4; i++) b.at(i, i) = 1;
        return b;
    }
    Int& at(int row, int col) { return m[(size_t)(4 * col + row)]; }
    const Int& at(int row, int col) const { return m[(size_t)(4 * col + row)]; }
    std::array<Int, 4> column(int col) const {
        return {at(0, col), at(1, col), at(2, col), at(3, col)};
    }
    Int det() const;
    bool operator==(const Basis4& o) const { return m == o.m; }
};

/* Exact-arithmetic LLL on integer column bases (any small dimension).
 * delta is passed as a fraction delta_num/delta_den; size reduction is to
 * |mu| <= 1/2. Throws std::invalid_argument on rank-deficient input. */
std::vector<std::vector<Int>> lll_reduce_generic(std::vector<std::vector<Int>> cols,
                                                 long delta_num = 99, long delta_den = 100);

// Lovász parameter fixed at 99/100 for all sieving lattices
Basis4 lll_reduce(const Basis4& b);

// Exact 4D cross product of three 4-vectors by the cofactor formulas;
// output is orthogonal to u, v, w and zero iff they are dependent.
std::array<Int, 4> cross4(const std::array<Int, 4>& u, const std::array<Int, 4>& v,
                          const std::array<Int, 4>& w);
std::array<long long, 4> cross4_i64(const std::array<long long, 4>& u,
                                    const std::array<long long, 4>& v,
                                    const std::array<long long, 4>& w);

}  // namespace extnfs
