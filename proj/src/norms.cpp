#include "extnfs/norms.hpp"

#include <stdexcept>

namespace extnfs {

Int norm_side(const PolySetup& setup, int side, const std::array<long long, 4>& e) {
    if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0)
        throw std::invalid_argument("norm_side: zero tuple");
    const RelPoly& F = setup.side_rel(side);
    int d = F.degree();

    IntPoly A({Int((long)e[0]), Int((long)e[1])});  // a + b y
    IntPoly B({Int((long)e[2]), Int((long)e[3])});  // c + d y

    // Res_x(B x + A, F) = sum_i F_i(y) * (-A)^i * B^(d - i); for B = 0 the
    // convention is A^d (degree-0 first argument).
    IntPoly P;
    if (B.is_zero()) {
        P = IntPoly::constant(Int(1));
        for (int i = 0; i < d; i++) P = P * A;
    } else {
        IntPoly negA = -A;
        std::vector<IntPoly> Ap((size_t)d + 1), Bp((size_t)d + 1);
        Ap[0] = Bp[0] = IntPoly::constant(Int(1));
        for (int i = 1; i <= d; i++) {
            Ap[(size_t)i] = Ap[(size_t)i - 1] * negA;
            Bp[(size_t)i] = Bp[(size_t)i - 1] * B;
        }
        for (int i = 0; i <= d; i++) {
            auto [c0, c1] = F.coeff(i);
            if (c0 == 0 && c1 == 0) continue;
            IntPoly Fi({c0, c1});  // coefficient as polynomial in y
            P = P + Fi * Ap[(size_t)i] * Bp[(size_t)(d - i)];
        }
    }
    if (P.is_zero()) return Int(0);
    if (P.degree() == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), P.coeff(0).get_mpz_t(), (unsigned long)setup.h.degree());
        return abs(r);
    }
    return abs(resultant(P, setup.h));
}

}  // namespace extnfs
