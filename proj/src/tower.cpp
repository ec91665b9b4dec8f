#include "extnfs/tower.hpp"

#include <stdexcept>

namespace extnfs {

TowerField::TowerField(Int p, const IntPoly& h, const K& f0_lead, const K& f0_mid,
                       const K& f0_const)
    : p_(std::move(p)) {
    if (h.degree() != 2) throw std::invalid_argument("tower: h must be quadratic");
    Int lc = h.lc() % p_;
    if (lc < 0) lc += p_;
    if (lc != 1) throw std::invalid_argument("tower: h must be monic mod p");
    h1_ = red(h.coeff(1));
    h0_ = red(h.coeff(0));
    // monicize f0: x^2 = -(mid/lead) x - (const/lead)
    K lead{red(f0_lead[0]), red(f0_lead[1])};
    K mid{red(f0_mid[0]), red(f0_mid[1])};
    K cst{red(f0_const[0]), red(f0_const[1])};
    if (kzero(lead)) throw std::invalid_argument("tower: f0 leading coefficient vanishes mod p");
    K linv = kinv(lead);
    K m = kmul(mid, linv), c = kmul(cst, linv);
    s1_ = {red(-m[0]), red(-m[1])};
    s0_ = {red(-c[0]), red(-c[1])};
}

TowerField::K TowerField::kadd(const K& a, const K& b) const {
    return {red(a[0] + b[0]), red(a[1] + b[1])};
}
TowerField::K TowerField::ksub(const K& a, const K& b) const {
    return {red(a[0] - b[0]), red(a[1] - b[1])};
}

TowerField::K TowerField::kmul(const K& a, const K& b) const {
    // (a0 + a1 y)(b0 + b1 y), y^2 = -h1 y - h0
    Int t2 = a[1] * b[1] % p_;
    Int t1 = (a[0] * b[1] + a[1] * b[0]) % p_;
    Int t0 = a[0] * b[0] % p_;
    return {red(t0 - t2 * h0_), red(t1 - t2 * h1_)};
}

Int TowerField::knorm(const K& a) const {
    // N(a0 + a1 y) = a0^2 - h1 a0 a1 + h0 a1^2
    return red(a[0] * a[0] - h1_ * a[0] * a[1] + h0_ * a[1] * a[1]);
}

TowerField::K TowerField::kinv(const K& a) const {
    if (kzero(a)) throw std::invalid_argument("kinv(0)");
    Int n = knorm(a);
    Int ninv;
    if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw std::invalid_argument("kinv: norm not invertible (h reducible mod p?)");
    // conj(a) = (a0 - h1 a1) - a1 y
    Int c0 = red(a[0] - h1_ * a[1]);
    Int c1 = red(-a[1]);
    return {red(c0 * ninv), red(c1 * ninv)};
}

TowerElement TowerField::make(const Int& c0, const Int& c1, const Int& c2, const Int& c3) const {
    TowerElement e;
    e.c = {red(c0), red(c1), red(c2), red(c3)};
    e.level = level_of(e.c);
    return e;
}

TowerElement TowerField::add(const TowerElement& a, const TowerElement& b) const {
    return make(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]);
}
TowerElement TowerField::sub(const TowerElement& a, const TowerElement& b) const {
    return make(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]);
}

TowerElement TowerField::mul(const TowerElement& a, const TowerElement& b) const {
    // z = A + Bx with A, B in K
    K A{a.c[0], a.c[1]}, B{a.c[2], a.c[3]};
    K C{b.c[0], b.c[1]}, D{b.c[2], b.c[3]};
    K ac = kmul(A, C), bd = kmul(B, D);
    K mixed = kadd(kmul(A, D), kmul(B, C));
    // bd * x^2 = bd * (s1 x + s0)
    K c0 = kadd(ac, kmul(bd, s0_));
    K c1 = kadd(mixed, kmul(bd, s1_));
    return make(c0[0], c0[1], c1[0], c1[1]);
}

TowerElement TowerField::inv(const TowerElement& a) const {
    if (a.is_zero()) throw std::invalid_argument("tower inv(0)");
    K A{a.c[0], a.c[1]}, B{a.c[2], a.c[3]};
    // relative norm: (A + Bx)(A + B(s1 - x)) = A^2 + s1 A B - s0 B^2 in K
    K n = ksub(kadd(kmul(A, A), kmul(s1_, kmul(A, B))), kmul(s0_, kmul(B, B)));
    K ninv = kinv(n);
    // conjugate: (A + B s1) - B x
    K c0 = kmul(kadd(A, kmul(B, s1_)), ninv);
    K c1 = kmul(K{red(-B[0]), red(-B[1])}, ninv);
    return make(c0[0], c0[1], c1[0], c1[1]);
}

TowerElement TowerField::pow(const TowerElement& a, const Int& e) const {
    if (e < 0) throw std::invalid_argument("tower pow: negative exponent");
    TowerElement r = one(), b = a;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return r;
    for (size_t i = 0; i < bits; i++) {
        if (mpz_tstbit(e.get_mpz_t(), (mp_bitcnt_t)i)) r = mul(r, b);
        if (i + 1 < bits) b = mul(b, b);
    }
    return r;
}

}  // namespace extnfs
