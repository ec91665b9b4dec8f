#include "extnfs/modpoly.hpp"

#include <algorithm>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/rng.hpp"

namespace extnfs {

ModPoly ModPoly::from_int_poly(const IntPoly& f, uint64_t q) {
    std::vector<uint64_t> c(f.coeffs().size());
    for (size_t i = 0; i < c.size(); i++) {
        c[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), q);
    }
    return ModPoly(q, std::move(c));
}

ModPoly ModPoly::monic() const {
    if (is_zero() || lc() == 1) return *this;
    uint64_t inv = invmod_u64(lc(), q_);
    std::vector<uint64_t> c(c_);
    for (auto& x : c) x = mulmod_u64(x, inv, q_);
    return ModPoly(q_, std::move(c));
}

uint64_t ModPoly::eval(uint64_t x) const {
    uint64_t r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = addmod_u64(mulmod_u64(r, x, q_), c_[i], q_);
    return r;
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
    std::vector<uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); i++) c[i] = addmod_u64(a.coeff((int)i), b.coeff((int)i), a.q_);
    return ModPoly(a.q_, std::move(c));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
    std::vector<uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); i++) c[i] = submod_u64(a.coeff((int)i), b.coeff((int)i), a.q_);
    return ModPoly(a.q_, std::move(c));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
    if (a.is_zero() || b.is_zero()) return ModPoly(a.q_);
    std::vector<uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); i++) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); j++)
            c[i + j] = addmod_u64(c[i + j], mulmod_u64(a.c_[i], b.c_[j], a.q_), a.q_);
    }
    return ModPoly(a.q_, std::move(c));
}

ModPoly ModPoly::rem(const ModPoly& mod) const {
    if (mod.is_zero()) throw std::invalid_argument("poly rem by zero");
    ModPoly r = *this;
    uint64_t inv = invmod_u64(mod.lc(), q_);
    while (r.degree() >= mod.degree()) {
        uint64_t factor = mulmod_u64(r.lc(), inv, q_);
        int shift = r.degree() - mod.degree();
        for (int i = 0; i <= mod.degree(); i++) {
            r.c_[(size_t)(i + shift)] =
                submod_u64(r.c_[(size_t)(i + shift)], mulmod_u64(factor, mod.coeff(i), q_), q_);
        }
        r.trim();
    }
    return r;
}

ModPoly ModPoly::mul_rem(const ModPoly& b, const ModPoly& mod) const { return ((*this) * b).rem(mod); }

ModPoly ModPoly::derivative() const {
    if (c_.size() <= 1) return ModPoly(q_);
    std::vector<uint64_t> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); i++) c[i - 1] = mulmod_u64(c_[i], i % q_, q_);
    return ModPoly(q_, std::move(c));
}

ModPoly poly_gcd(ModPoly a, ModPoly b) {
    while (!b.is_zero()) {
        ModPoly r = a.rem(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ModPoly poly_powmod(const ModPoly& base, uint64_t e, const ModPoly& f) {
    ModPoly r(f.q(), {1});
    ModPoly b = base.rem(f);
    while (e) {
        if (e & 1) r = r.mul_rem(b, f);
        b = b.mul_rem(b, f);
        e >>= 1;
    }
    return r;
}

// substitute g into h, reduced mod f (used for iterated Frobenius)
static ModPoly poly_compose_rem(const ModPoly& h, const ModPoly& g, const ModPoly& f) {
    ModPoly r(f.q());
    for (int i = h.degree(); i >= 0; i--) {
        r = r.mul_rem(g, f);
        r = r + ModPoly(f.q(), {h.coeff(i)});
    }
    return r;
}

ModPoly frobenius_power(const ModPoly& f, int k) {
    ModPoly xq = poly_powmod(ModPoly::x(f.q()), f.q(), f);
    ModPoly r = xq;
    for (int i = 1; i < k; i++) r = poly_compose_rem(r, xq, f);
    return r;
}

static void check_reduced(const ModPoly& fq, const char* what) {
    if (fq.is_zero()) throw std::invalid_argument(std::string("vanishing polynomial in ") + what);
}

std::vector<uint64_t> roots_mod(const IntPoly& f, uint64_t q) {
    ModPoly fq = ModPoly::from_int_poly(f, q);
    check_reduced(fq, "roots_mod");
    std::vector<uint64_t> roots;
    if (fq.degree() == 0) return roots;
    if (q <= 64) {  // brute-force scan for tiny fields
        for (uint64_t x = 0; x < q; x++)
            if (fq.eval(x) == 0) roots.push_back(x);
        return roots;
    }
    // product of distinct linear factors: gcd(x^q - x, f)
    ModPoly xq = poly_powmod(ModPoly::x(q), q, fq);
    ModPoly lin = poly_gcd(xq - ModPoly::x(q), fq);
    if (lin.degree() <= 0) return roots;

    // split recursively with gcd((x+delta)^((q-1)/2) - 1, g), delta = 0,1,2,...
    std::vector<ModPoly> stack{lin};
    uint64_t delta = 0;
    while (!stack.empty()) {
        ModPoly g = stack.back();
        stack.pop_back();
        if (g.degree() == 1) {
            // root of x + c0 (monic)
            roots.push_back(submod_u64(0, g.coeff(0), q));
            continue;
        }
        for (;;) {
            ModPoly shifted(q, {delta, 1});
            delta++;
            ModPoly w = poly_powmod(shifted, (q - 1) / 2, g) - ModPoly(q, {1});
            ModPoly u = poly_gcd(w, g);
            if (u.degree() > 0 && u.degree() < g.degree()) {
                // g/u by long division (exact)
                ModPoly v = g;
                std::vector<uint64_t> quot((size_t)(g.degree() - u.degree()) + 1, 0);
                while (v.degree() >= u.degree()) {
                    uint64_t factor = v.lc();  // u monic
                    int shift = v.degree() - u.degree();
                    quot[(size_t)shift] = factor;
                    ModPoly sub = u * ModPoly(q, {factor});
                    std::vector<uint64_t> shiftc((size_t)shift, 0);
                    for (auto cc : sub.coeffs()) shiftc.push_back(cc);
                    v = v - ModPoly(q, shiftc);
                }
                stack.push_back(u);
                stack.push_back(ModPoly(q, quot).monic());
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_irreducible_mod(const IntPoly& f, uint64_t q) {
    ModPoly fq = ModPoly::from_int_poly(f, q);
    check_reduced(fq, "is_irreducible_mod");
    int d = fq.degree();
    if (d == 0) return false;
    if (d == 1) return true;
    // Rabin: x^(q^d) = x mod f and gcd(x^(q^(d/r)) - x, f) = 1 for primes r | d
    ModPoly x = ModPoly::x(q);
    if (!(frobenius_power(fq, d) == x.rem(fq))) return false;
    for (int r = 2; r <= d; r++) {
        if (d % r != 0) continue;
        bool rprime = true;
        for (int s = 2; s * s <= r; s++)
            if (r % s == 0) rprime = false;
        if (!rprime) continue;
        ModPoly g = poly_gcd(frobenius_power(fq, d / r) - x, fq);
        if (g.degree() != 0) return false;
    }
    return true;
}

static bool poly_less(const ModPoly& a, const ModPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; i--)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

// exact division helper, b must divide a
static ModPoly poly_divexact(const ModPoly& a, const ModPoly& b) {
    uint64_t q = a.q();
    ModPoly r = a;
    uint64_t inv = invmod_u64(b.lc(), q);
    std::vector<uint64_t> quot((size_t)(a.degree() - b.degree()) + 1, 0);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        uint64_t factor = mulmod_u64(r.lc(), inv, q);
        int shift = r.degree() - b.degree();
        quot[(size_t)shift] = factor;
        std::vector<uint64_t> sub((size_t)shift, 0);
        for (int i = 0; i <= b.degree(); i++) sub.push_back(mulmod_u64(factor, b.coeff(i), q));
        r = r - ModPoly(q, sub);
    }
    if (!r.is_zero()) throw std::logic_error("poly_divexact: not divisible");
    return ModPoly(q, quot);
}

// equal-degree splitting (Cantor-Zassenhaus), q odd; f monic squarefree,
// all irreducible factors of degree d
static void edf(const ModPoly& f, int d, std::vector<ModPoly>& out, Rng& rng) {
    uint64_t q = f.q();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    // exponent (q^d - 1) / 2 as 128-bit; q^d fits for our degrees/bounds
    unsigned __int128 qd = 1;
    for (int i = 0; i < d; i++) qd *= q;
    unsigned __int128 e = (qd - 1) / 2;
    for (;;) {
        std::vector<uint64_t> rc((size_t)f.degree(), 0);
        for (auto& x : rc) x = rng.below(q);
        ModPoly a(q, rc);
        if (a.degree() < 1) continue;
        // a^e mod f with 128-bit exponent
        ModPoly r(q, {1});
        ModPoly b = a.rem(f);
        unsigned __int128 ee = e;
        while (ee) {
            if (ee & 1) r = r.mul_rem(b, f);
            b = b.mul_rem(b, f);
            ee >>= 1;
        }
        ModPoly g = poly_gcd(r - ModPoly(q, {1}), f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, out, rng);
            edf(poly_divexact(f, g), d, out, rng);
            return;
        }
    }
}

ModFactorization factor_mod(const ModPoly& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor_mod: zero polynomial");
    uint64_t q = f0.q();
    ModFactorization out;
    out.unit = f0.lc();
    ModPoly f = f0.monic();
    if (f.degree() == 0) return out;

    std::vector<std::pair<ModPoly, int>> fac;

    if (q <= 16) {
        /* Tiny fields: strip monic divisors in ascending degree order. A
         * degree-d divisor found this way is irreducible, since any proper
         * factor of smaller degree would already have been stripped. */
        ModPoly rem = f;
        for (int d = 1; rem.degree() > 0 && d <= rem.degree() / 2; d++) {
            uint64_t count = 1;
            for (int i = 0; i < d; i++) count *= q;
            for (uint64_t code = 0; code < count && rem.degree() >= d; code++) {
                std::vector<uint64_t> c((size_t)d + 1, 0);
                uint64_t t = code;
                for (int i = 0; i < d; i++) {
                    c[(size_t)i] = t % q;
                    t /= q;
                }
                c[(size_t)d] = 1;
                ModPoly cand(q, c);
                if (!rem.rem(cand).is_zero()) continue;
                int m = 0;
                while (rem.rem(cand).is_zero()) {
                    rem = poly_divexact(rem, cand);
                    m++;
                }
                fac.emplace_back(cand, m);
            }
        }
        if (rem.degree() > 0) fac.emplace_back(rem, 1);
    } else {
        // squarefree part is enough here: recover multiplicities by division
        // DDF on the squarefree part, then CZ
        ModPoly work = f;
        ModPoly sf = poly_divexact(f, poly_gcd(f, f.derivative()));
        // char p > degree for q > 16 and our degrees, so this is the full radical
        ModPoly x = ModPoly::x(q);
        ModPoly h = sf;
        Rng rng(0x5eedf00dULL ^ q);
        int d = 1;
        std::vector<std::pair<ModPoly, int>> irr;
        while (h.degree() >= 2 * d) {
            ModPoly xqd = frobenius_power(h, d);
            ModPoly g = poly_gcd(xqd - x.rem(h), h);
            if (g.degree() > 0) {
                std::vector<ModPoly> parts;
                edf(g, d, parts, rng);
                for (auto& pf : parts) irr.emplace_back(pf, 0);
                h = poly_divexact(h, g);
            }
            d++;
        }
        if (h.degree() > 0) irr.emplace_back(h, 0);
        // multiplicities
        for (auto& [pf, m] : irr) {
            while (work.rem(pf).is_zero()) {
                work = poly_divexact(work, pf);
                m++;
            }
            fac.emplace_back(pf, m);
        }
    }

    std::sort(fac.begin(), fac.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    out.factors = std::move(fac);
    return out;
}

// ---- quadratic extension ----

Fq2::E Fq2::add(const E& a, const E& b) const { return {addmod_u64(a[0], b[0], q), addmod_u64(a[1], b[1], q)}; }
Fq2::E Fq2::sub(const E& a, const E& b) const { return {submod_u64(a[0], b[0], q), submod_u64(a[1], b[1], q)}; }
Fq2::E Fq2::neg(const E& a) const { return {submod_u64(0, a[0], q), submod_u64(0, a[1], q)}; }

Fq2::E Fq2::mul(const E& a, const E& b) const {
    // (a0 + a1 w)(b0 + b1 w), w^2 = -m1 w - m0
    uint64_t t2 = mulmod_u64(a[1], b[1], q);
    uint64_t t1 = addmod_u64(mulmod_u64(a[0], b[1], q), mulmod_u64(a[1], b[0], q), q);
    uint64_t t0 = mulmod_u64(a[0], b[0], q);
    uint64_t c0 = submod_u64(t0, mulmod_u64(t2, m0, q), q);
    uint64_t c1 = submod_u64(t1, mulmod_u64(t2, m1, q), q);
    return {c0, c1};
}

Fq2::E Fq2::inv(const E& a) const {
    if (is_zero(a)) throw std::invalid_argument("Fq2::inv(0)");
    // norm to F_q: a * conj(a); conj(w) = -m1 - w
    // N(a0 + a1 w) = a0^2 - m1 a0 a1 + m0 a1^2
    uint64_t n = addmod_u64(
        submod_u64(mulmod_u64(a[0], a[0], q), mulmod_u64(m1, mulmod_u64(a[0], a[1], q), q), q),
        mulmod_u64(m0, mulmod_u64(a[1], a[1], q), q), q);
    uint64_t ninv = invmod_u64(n, q);
    // conj(a) = (a0 - m1 a1) - a1 w
    uint64_t c0 = submod_u64(a[0], mulmod_u64(m1, a[1], q), q);
    uint64_t c1 = submod_u64(0, a[1], q);
    return {mulmod_u64(c0, ninv, q), mulmod_u64(c1, ninv, q)};
}

Fq2::E Fq2::pow(E a, uint64_t e) const { return pow128(a, e); }

Fq2::E Fq2::pow128(E a, unsigned __int128 e) const {
    E r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

namespace {

using E2 = Fq2::E;

struct Ext2Ops {
    const Fq2& F;

    void trim(std::vector<E2>& c) const {
        while (!c.empty() && F.is_zero(c.back())) c.pop_back();
    }
    std::vector<E2> rem(std::vector<E2> a, const std::vector<E2>& b) const {
        E2 inv = F.inv(b.back());
        while (a.size() >= b.size()) {
            E2 factor = F.mul(a.back(), inv);
            size_t shift = a.size() - b.size();
            for (size_t i = 0; i < b.size(); i++)
                a[i + shift] = F.sub(a[i + shift], F.mul(factor, b[i]));
            trim(a);
            if (a.empty()) break;
        }
        return a;
    }
    std::vector<E2> mul(const std::vector<E2>& a, const std::vector<E2>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<E2> c(a.size() + b.size() - 1, F.zero());
        for (size_t i = 0; i < a.size(); i++)
            for (size_t j = 0; j < b.size(); j++) c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
        return c;
    }
    std::vector<E2> mul_rem(const std::vector<E2>& a, const std::vector<E2>& b,
                            const std::vector<E2>& f) const {
        return rem(mul(a, b), f);
    }
    std::vector<E2> gcd(std::vector<E2> a, std::vector<E2> b) const {
        while (!b.empty()) {
            auto r = rem(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.empty()) {  // monic
            E2 inv = F.inv(a.back());
            for (auto& x : a) x = F.mul(x, inv);
        }
        return a;
    }
    std::vector<E2> powmod128(const std::vector<E2>& base, unsigned __int128 e,
                              const std::vector<E2>& f) const {
        std::vector<E2> r{F.one()};
        auto b = rem(base, f);
        while (e) {
            if (e & 1) r = mul_rem(r, b, f);
            b = mul_rem(b, b, f);
            e >>= 1;
        }
        return r;
    }
    std::vector<E2> divexact(const std::vector<E2>& a, const std::vector<E2>& b) const {
        std::vector<E2> r = a, quot(a.size() - b.size() + 1, F.zero());
        E2 inv = F.inv(b.back());
        while (r.size() >= b.size()) {
            E2 factor = F.mul(r.back(), inv);
            size_t shift = r.size() - b.size();
            quot[shift] = factor;
            for (size_t i = 0; i < b.size(); i++) r[i + shift] = F.sub(r[i + shift], F.mul(factor, b[i]));
            trim(r);
            if (r.empty()) break;
        }
        return quot;
    }
};

}  // namespace

std::vector<Fq2::E> roots_over_fq2(const Fq2& F, std::vector<Fq2::E> coeffs) {
    Ext2Ops ops{F};
    ops.trim(coeffs);
    std::vector<Fq2::E> roots;
    if (coeffs.size() <= 1) return roots;

    unsigned __int128 q2 = (unsigned __int128)F.q * F.q;
    if (q2 <= 4096) {  // brute force tiny extensions
        for (uint64_t e1 = 0; e1 < F.q; e1++)
            for (uint64_t e0 = 0; e0 < F.q; e0++) {
                Fq2::E x{e0, e1};
                Fq2::E acc = F.zero();
                for (size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
                if (F.is_zero(acc)) roots.push_back(x);
            }
        std::sort(roots.begin(), roots.end(), [](const Fq2::E& a, const Fq2::E& b) {
            return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0];
        });
        return roots;
    }

    // gcd(x^(q^2) - x, f): product of linear factors
    std::vector<Fq2::E> x{F.zero(), F.one()};
    auto xq2 = ops.powmod128(x, q2, coeffs);
    auto lin = xq2;
    if (lin.size() < 2) lin.resize(2, F.zero());
    lin[1] = F.sub(lin[1], F.one());
    ops.trim(lin);
    auto g = ops.gcd(lin, coeffs);
    if (g.size() <= 1) return roots;

    // Cantor-Zassenhaus splitting down to linears; deterministic shift sequence
    std::vector<std::vector<Fq2::E>> stack{g};
    uint64_t ctr = 1;
    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (cur.size() == 2) {
            roots.push_back(F.neg(cur[0]));  // monic x + c0
            continue;
        }
        for (;;) {
            Fq2::E delta{ctr % F.q, (ctr / F.q) % F.q};
            ctr++;
            std::vector<Fq2::E> shifted{delta, F.one()};
            auto w = ops.powmod128(shifted, (q2 - 1) / 2, cur);
            if (w.empty()) continue;
            w[0] = F.sub(w[0], F.one());
            ops.trim(w);
            auto u = ops.gcd(w, cur);
            if (u.size() > 1 && u.size() < cur.size()) {
                stack.push_back(u);
                stack.push_back(ops.divexact(cur, u));
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Fq2::E& a, const Fq2::E& b) { return a[1] != b[1] ? a[1] < b[1] : a[0] < b[0]; });
    return roots;
}

}  // namespace extnfs
