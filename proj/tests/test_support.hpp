#pragma once

#include <vector>

#include "extnfs/intpoly.hpp"
#include "extnfs/rng.hpp"

namespace extnfs::test {

/* Independent resultant oracle: Sylvester matrix determinant by Bareiss
 * fraction-free elimination. Kept deliberately separate from the
 * subresultant implementation under test. */
inline Int sylvester_resultant(const IntPoly& f, const IntPoly& g) {
    int m = f.degree(), n = g.degree();
    int dim = m + n;
    std::vector<std::vector<Int>> a((size_t)dim, std::vector<Int>((size_t)dim, Int(0)));
    for (int row = 0; row < n; row++)
        for (int k = 0; k <= m; k++) a[(size_t)row][(size_t)(row + k)] = f.coeff(m - k);
    for (int row = 0; row < m; row++)
        for (int k = 0; k <= n; k++) a[(size_t)(n + row)][(size_t)(row + k)] = g.coeff(n - k);

    // Bareiss
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < dim - 1; k++) {
        if (a[(size_t)k][(size_t)k] == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < dim; i++)
                if (a[(size_t)i][(size_t)k] != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0) return Int(0);
            std::swap(a[(size_t)k], a[(size_t)swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < dim; i++) {
            for (int j = k + 1; j < dim; j++) {
                Int num = a[(size_t)i][(size_t)j] * a[(size_t)k][(size_t)k] -
                          a[(size_t)i][(size_t)k] * a[(size_t)k][(size_t)j];
                mpz_divexact(a[(size_t)i][(size_t)j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            a[(size_t)i][(size_t)k] = 0;
        }
        prev = a[(size_t)k][(size_t)k];
    }
    Int det = a[(size_t)dim - 1][(size_t)dim - 1];
    return sign < 0 ? Int(-det) : det;
}

inline IntPoly random_poly(Rng& rng, int degree, long coeff_bound) {
    std::vector<Int> c((size_t)degree + 1);
    for (auto& x : c) x = Int((long)rng.range(-coeff_bound, coeff_bound));
    if (c.back() == 0) c.back() = 1;
    return IntPoly(std::move(c));
}

}  // namespace extnfs::test
