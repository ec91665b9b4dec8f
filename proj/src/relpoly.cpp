#include "extnfs/relpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace extnfs {

std::string RelPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; i--) {
        auto [c0, c1] = coeff(i);
        if (c0 == 0 && c1 == 0) continue;
        if (!first) os << " + ";
        os << "(" << c0.get_str();
        if (c1 >= 0) os << "+" << c1.get_str() << "a";
        else os << c1.get_str() << "a";
        os << ")";
        if (i >= 1) {
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

IntPoly absolute_poly(const RelPoly& rel, const IntPoly& h, bool* squarefree_out) {
    if (rel.is_zero()) throw std::invalid_argument("absolute_poly: zero input");
    if (h.degree() < 1) throw std::invalid_argument("absolute_poly: h must be nonconstant");
    IntPoly B = rel.part0();  // rel = A*alpha + B with A, B in Z[x]
    IntPoly A = rel.part1();
    int eta = h.degree();

    IntPoly out;
    if (A.is_zero()) {
        // Res_alpha(B, h) = B^(deg h)
        out = IntPoly::constant(Int(1));
        for (int i = 0; i < eta; i++) out = out * B;
    } else {
        // Res_alpha(A*alpha + B, h) = sum_i h_i * (-B)^i * A^(eta - i)
        IntPoly negB = -B;
        // powers
        std::vector<IntPoly> Bp((size_t)eta + 1), Ap((size_t)eta + 1);
        Bp[0] = IntPoly::constant(Int(1));
        Ap[0] = IntPoly::constant(Int(1));
        for (int i = 1; i <= eta; i++) {
            Bp[(size_t)i] = Bp[(size_t)i - 1] * negB;
            Ap[(size_t)i] = Ap[(size_t)i - 1] * A;
        }
        for (int i = 0; i <= eta; i++) {
            if (h.coeff(i) == 0) continue;
            out = out + (Bp[(size_t)i] * Ap[(size_t)(eta - i)]) * h.coeff(i);
        }
    }

    if (squarefree_out) {
        *squarefree_out = true;
        if (out.degree() >= 2 && gcd_primitive(out, out.derivative()).degree() > 0)
            *squarefree_out = false;
    }
    return out;
}

}  // namespace extnfs
