#include "extnfs/intpoly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "extnfs/arith.hpp"
#include "extnfs/modpoly.hpp"

namespace extnfs {

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; i--) {
        const Int& c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0)
            os << "-";
        Int a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

// pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b
static IntPoly prem(const IntPoly& a, const IntPoly& b) {
    int db = b.degree();
    const Int& lb = b.lc();
    int steps = a.degree() - db + 1;
    IntPoly r = a;
    int used = 0;
    while (!r.is_zero() && r.degree() >= db) {
        used++;
        int shift = r.degree() - db;
        Int cr = r.lc();
        std::vector<Int> nc((size_t)r.degree() + 1, Int(0));
        for (int i = 0; i <= r.degree(); i++) nc[(size_t)i] = lb * r.coeff(i);
        for (int i = 0; i <= db; i++) nc[(size_t)(i + shift)] -= cr * b.coeff(i);
        r = IntPoly(std::move(nc));
    }
    for (; used < steps; used++) r = r * lb;
    return r;
}

Int resultant(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
    if (f.degree() == 0 && g.degree() == 0) throw std::invalid_argument("degenerate resultant");
    if (f.degree() == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), f.coeff(0).get_mpz_t(), (unsigned long)g.degree());
        return r;
    }
    if (g.degree() == 0) {
        Int r;
        mpz_pow_ui(r.get_mpz_t(), g.coeff(0).get_mpz_t(), (unsigned long)f.degree());
        return r;
    }

    // subresultant PRS (Cohen, Alg. 3.3.7)
    IntPoly A = f, B = g;
    int s = 1;
    if (A.degree() < B.degree()) {
        if ((A.degree() & 1) && (B.degree() & 1)) s = -s;
        std::swap(A, B);
    }
    Int a = A.content(), b = B.content();
    Int ga, gb;
    {
        std::vector<Int> ca(A.coeffs()), cb(B.coeffs());
        for (auto& x : ca) x /= a;
        for (auto& x : cb) x /= b;
        A = IntPoly(std::move(ca));
        B = IntPoly(std::move(cb));
    }
    Int t, tmp;
    mpz_pow_ui(t.get_mpz_t(), a.get_mpz_t(), (unsigned long)B.degree());
    mpz_pow_ui(tmp.get_mpz_t(), b.get_mpz_t(), (unsigned long)A.degree());
    t *= tmp;

    Int gg(1), hh(1);
    for (;;) {
        int da = A.degree(), db = B.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        IntPoly R = prem(A, B);
        A = B;
        // B = R / (g * h^delta)
        Int denom = gg;
        for (int i = 0; i < delta; i++) denom *= hh;
        if (R.is_zero()) {
            B = IntPoly();
        } else {
            std::vector<Int> rc(R.coeffs());
            for (auto& x : rc) {
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), denom.get_mpz_t());
            }
            B = IntPoly(std::move(rc));
        }
        if (B.is_zero()) {
            if (A.degree() > 0) return Int(0);  // common factor
            throw std::logic_error("resultant: unreachable");
        }
        if (B.degree() == 0) {
            // h <- h^(1 - dA) * lc(B)^dA  with dA = deg(A)
            int dA = A.degree();
            Int num;
            mpz_pow_ui(num.get_mpz_t(), B.coeff(0).get_mpz_t(), (unsigned long)dA);
            Int hpow(1);
            for (int i = 0; i < dA - 1; i++) hpow *= hh;
            Int h2;
            mpz_divexact(h2.get_mpz_t(), num.get_mpz_t(), hpow.get_mpz_t());
            Int res = t * h2;
            if (s < 0) res = -res;
            return res;
        }
        gg = A.lc();
        // h = g^delta / h^(delta-1)
        Int num;
        mpz_pow_ui(num.get_mpz_t(), gg.get_mpz_t(), (unsigned long)delta);
        Int hpow(1);
        for (int i = 0; i < delta - 1; i++) hpow *= hh;
        mpz_divexact(hh.get_mpz_t(), num.get_mpz_t(), hpow.get_mpz_t());
    }
}

IntPoly gcd_primitive(const IntPoly& f, const IntPoly& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    IntPoly A = f, B = g;
    if (A.degree() < B.degree()) std::swap(A, B);
    while (!B.is_zero()) {
        IntPoly R = prem(A, B);
        if (!R.is_zero()) {
            Int c = R.content();
            std::vector<Int> rc(R.coeffs());
            for (auto& x : rc) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
            R = IntPoly(std::move(rc));
        }
        A = B;
        B = R;
    }
    Int c = A.content();
    std::vector<Int> rc(A.coeffs());
    for (auto& x : rc) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    IntPoly out(std::move(rc));
    if (out.lc() < 0) out = -out;
    return out;
}

// ---- Sturm chain over Q ----

namespace {

struct QPoly {
    std::vector<mpq_class> c;
    int degree() const { return (int)c.size() - 1; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

QPoly qrem(const QPoly& a, const QPoly& b) {
    QPoly r = a;
    while (r.degree() >= b.degree() && !r.c.empty()) {
        mpq_class f = r.c.back() / b.c.back();
        int shift = r.degree() - b.degree();
        for (int i = 0; i <= b.degree(); i++) r.c[(size_t)(i + shift)] -= f * b.c[(size_t)i];
        r.trim();
    }
    return r;
}

int sign_at_inf(const QPoly& p, int dir) {  // dir = +1 for +inf, -1 for -inf
    if (p.c.empty()) return 0;
    int s = sgn(p.c.back());
    if (dir < 0 && (p.degree() & 1)) s = -s;
    return s;
}

}  // namespace

int count_real_roots(const IntPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
    if (f.degree() == 0) return 0;
    // squarefree part
    IntPoly sf = f;
    IntPoly g = gcd_primitive(f, f.derivative());
    if (g.degree() > 0) {
        // divide exactly over Q, then work with the primitive quotient
        QPoly num, den;
        for (const auto& x : f.coeffs()) num.c.emplace_back(x);
        for (const auto& x : g.coeffs()) den.c.emplace_back(x);
        QPoly quo;
        quo.c.assign((size_t)(f.degree() - g.degree()) + 1, mpq_class(0));
        QPoly r = num;
        while (r.degree() >= den.degree() && !r.c.empty()) {
            mpq_class fac = r.c.back() / den.c.back();
            int shift = r.degree() - den.degree();
            quo.c[(size_t)shift] = fac;
            for (int i = 0; i <= den.degree(); i++) r.c[(size_t)(i + shift)] -= fac * den.c[(size_t)i];
            r.trim();
        }
        mpz_class lcm(1);
        for (auto& x : quo.c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<Int> ic;
        for (auto& x : quo.c) {
            mpq_class y = x * lcm;
            ic.emplace_back(y.get_num());
        }
        sf = IntPoly(std::move(ic));
    }

    QPoly p0, p1;
    for (const auto& x : sf.coeffs()) p0.c.emplace_back(x);
    IntPoly d = sf.derivative();
    for (const auto& x : d.coeffs()) p1.c.emplace_back(x);

    std::vector<QPoly> chain{p0, p1};
    while (chain.back().degree() > 0) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        if (r.c.empty()) break;
        for (auto& x : r.c) x = -x;
        chain.push_back(std::move(r));
    }

    auto variations = [&](int dir) {
        int v = 0, prev = 0;
        for (const auto& p : chain) {
            int s = sign_at_inf(p, dir);
            if (s == 0) continue;
            if (prev != 0 && s != prev) v++;
            prev = s;
        }
        return v;
    };
    return variations(-1) - variations(+1);
}

// ---- irreducibility over Q (Zassenhaus, small degrees) ----

namespace {

// balanced representative in (-m/2, m/2]
Int balanced(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    if (r * 2 > m) r -= m;
    return r;
}

struct ZModPoly {  // poly with coefficients mod m (mpz), monic operations only
    Int m;
    std::vector<Int> c;
    void trim() {
        while (!c.empty() && c.back() % m == 0) c.pop_back();
    }
};

ZModPoly zmul(const ZModPoly& a, const ZModPoly& b) {
    ZModPoly r{a.m, std::vector<Int>(a.c.size() + b.c.size() - 1, Int(0))};
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % a.m;
    return r;
}

// reduce a by monic b
ZModPoly zrem(ZModPoly a, const ZModPoly& b) {
    while (a.c.size() >= b.c.size()) {
        Int f = a.c.back() % a.m;
        size_t shift = a.c.size() - b.c.size();
        for (size_t i = 0; i < b.c.size(); i++) a.c[i + shift] = (a.c[i + shift] - f * b.c[i]) % a.m;
        a.c.pop_back();
        while (!a.c.empty() && a.c.back() % a.m == 0) a.c.pop_back();
    }
    return a;
}

/* Hensel lift of a coprime factorization f = g*h (mod p) to mod p^(2^k),
 * classic quadratic lift. f, g, h monic. */
void hensel_pair(const IntPoly& f, ModPoly g0, ModPoly h0, const Int& target, Int& mod_out,
                 ZModPoly& g_out, ZModPoly& h_out) {
    uint64_t p = g0.q();
    // Bezout: a g + b h = 1 mod p
    // extended Euclid over F_p
    ModPoly a(p), b(p);
    {
        ModPoly r0 = g0, r1 = h0;
        ModPoly s0(p, {1}), s1(p);
        ModPoly t0(p), t1(p, {1});
        while (!r1.is_zero()) {
            // q = r0 / r1
            ModPoly q(p), r = r0;
            uint64_t inv = invmod_u64(r1.lc(), p);
            std::vector<uint64_t> qc((size_t)std::max(0, r.degree() - r1.degree()) + 1, 0);
            while (!r.is_zero() && r.degree() >= r1.degree()) {
                uint64_t fac = mulmod_u64(r.lc(), inv, p);
                int shift = r.degree() - r1.degree();
                qc[(size_t)shift] = fac;
                std::vector<uint64_t> sub((size_t)shift, 0);
                for (int i = 0; i <= r1.degree(); i++) sub.push_back(mulmod_u64(fac, r1.coeff(i), p));
                r = r - ModPoly(p, sub);
            }
            q = ModPoly(p, qc);
            ModPoly r2 = r0 - q * r1;
            r0 = r1;
            r1 = r2;
            ModPoly s2 = s0 - q * s1;
            s0 = s1;
            s1 = s2;
            ModPoly t2 = t0 - q * t1;
            t0 = t1;
            t1 = t2;
        }
        // r0 = gcd = constant (coprime factors)
        uint64_t inv = invmod_u64(r0.coeff(0), p);
        a = s0 * ModPoly(p, {inv});
        b = t0 * ModPoly(p, {inv});
    }

    Int m(p);
    ZModPoly G{m, {}}, H{m, {}}, A{m, {}}, B{m, {}};
    for (int i = 0; i <= g0.degree(); i++) G.c.emplace_back(g0.coeff(i));
    for (int i = 0; i <= h0.degree(); i++) H.c.emplace_back(h0.coeff(i));
    for (int i = 0; i <= a.degree(); i++) A.c.emplace_back(a.coeff(i));
    for (int i = 0; i <= b.degree(); i++) B.c.emplace_back(b.coeff(i));

    while (m < target) {
        Int m2 = m * m;
        G.m = H.m = A.m = B.m = m2;
        // e = f - G*H mod m2
        ZModPoly e{m2, {}};
        {
            ZModPoly gh = zmul(G, H);
            size_t n = std::max(gh.c.size(), f.coeffs().size());
            e.c.assign(n, Int(0));
            for (size_t i = 0; i < n; i++) {
                Int fv = i < f.coeffs().size() ? f.coeffs()[i] : Int(0);
                Int gv = i < gh.c.size() ? gh.c[i] : Int(0);
                e.c[i] = (fv - gv) % m2;
            }
            e.trim();
        }
        // G' = G + (B*e mod G), H' = H + (A*e mod H)  [monic versions]
        ZModPoly dg = e.c.empty() ? ZModPoly{m2, {}} : zrem(zmul(B, e), G);
        ZModPoly dh = e.c.empty() ? ZModPoly{m2, {}} : zrem(zmul(A, e), H);
        for (size_t i = 0; i < dg.c.size(); i++) G.c.resize(std::max(G.c.size(), dg.c.size()));
        for (size_t i = 0; i < dg.c.size(); i++) G.c[i] = (G.c[i] + dg.c[i]) % m2;
        for (size_t i = 0; i < dh.c.size(); i++) H.c.resize(std::max(H.c.size(), dh.c.size()));
        for (size_t i = 0; i < dh.c.size(); i++) H.c[i] = (H.c[i] + dh.c[i]) % m2;

        // refresh Bezout: A G + B H = 1 mod m2
        if (m2 < target) {
            ZModPoly err{m2, {}};
            ZModPoly ag = zmul(A, G), bh = zmul(B, H);
            size_t n = std::max(ag.c.size(), bh.c.size());
            err.c.assign(std::max<size_t>(n, 1), Int(0));
            for (size_t i = 0; i < err.c.size(); i++) {
                Int v = Int(i == 0 ? 1 : 0);
                if (i < ag.c.size()) v -= ag.c[i];
                if (i < bh.c.size()) v -= bh.c[i];
                err.c[i] = v % m2;
            }
            err.trim();
            ZModPoly da = err.c.empty() ? ZModPoly{m2, {}} : zrem(zmul(A, err), H);
            ZModPoly db = err.c.empty() ? ZModPoly{m2, {}} : zrem(zmul(B, err), G);
            A.c.resize(std::max(A.c.size(), da.c.size()), Int(0));
            for (size_t i = 0; i < da.c.size(); i++) A.c[i] = (A.c[i] + da.c[i]) % m2;
            B.c.resize(std::max(B.c.size(), db.c.size()), Int(0));
            for (size_t i = 0; i < db.c.size(); i++) B.c[i] = (B.c[i] + db.c[i]) % m2;
        }
        m = m2;
    }
    mod_out = m;
    g_out = G;
    h_out = H;
}

// true Z-divisibility test: does cand divide f over Z?
bool divides_over_z(const IntPoly& cand, const IntPoly& f) {
    if (cand.degree() < 0 || cand.degree() > f.degree()) return false;
    IntPoly r = f;
    // exact division only possible if lc(cand) | lc at each step; use rational check
    std::vector<mpq_class> rr;
    for (const auto& x : r.coeffs()) rr.emplace_back(x);
    size_t db = (size_t)cand.degree();
    while (rr.size() > db && !rr.empty()) {
        mpq_class fac = rr.back() / mpq_class(cand.lc());
        size_t shift = rr.size() - 1 - db;
        for (size_t i = 0; i <= db; i++) rr[i + shift] -= fac * mpq_class(cand.coeff((int)i));
        rr.pop_back();
    }
    for (const auto& x : rr)
        if (x != 0) return false;
    return true;
}

}  // namespace

bool irreducible_over_q(const IntPoly& fin) {
    if (fin.degree() <= 0) return false;
    // primitive part
    Int cont = fin.content();
    std::vector<Int> cc(fin.coeffs());
    for (auto& x : cc) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), cont.get_mpz_t());
    IntPoly f(std::move(cc));
    if (f.degree() == 1) return true;
    if (f.coeff(0) == 0) return false;  // x divides

    // squarefree test (a repeated factor is already reducibility)
    if (gcd_primitive(f, f.derivative()).degree() > 0) return false;

    // pick an odd prime of good reduction
    uint64_t q = 3;
    ModPoly fq(3);
    for (;;) {
        q = q + 2;
        while (!is_prime_u64(q)) q += 2;
        if (mpz_fdiv_ui(f.lc().get_mpz_t(), q) == 0) continue;
        fq = ModPoly::from_int_poly(f, q);
        if (poly_gcd(fq, fq.derivative()).degree() == 0) break;
    }

    auto fac = factor_mod(fq.monic());
    size_t k = fac.factors.size();
    if (k == 1) return true;

    // Landau-Mignotte style bound on factor coefficients
    Int height(0);
    for (const auto& x : f.coeffs()) {
        Int a = abs(x);
        if (a > height) height = a;
    }
    Int bound = height * abs(f.lc());
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), (mp_bitcnt_t)(f.degree() + 2));
    bound = bound * (Int(f.degree()) + 1);
    Int target = 2 * bound + 1;

    // lift the full factorization: recursively pair up factors
    struct Lifted {
        std::vector<std::vector<Int>> facs;  // monic, coefficients mod m
        Int m;
    };
    // iterative pairwise lifting: lift factor i against product of the rest
    std::vector<std::vector<Int>> lifted;
    Int mod_final;
    {
        // recursive splitter
        std::function<void(const IntPoly&, std::vector<ModPoly>)> lift_group =
            [&](const IntPoly& target_poly, std::vector<ModPoly> group) {
                if (group.size() == 1) {
                    // read off coefficients of target_poly directly (monic lift)
                    // target_poly == that factor mod `mod_final` territory; store balanced later
                    std::vector<Int> co;
                    for (const auto& x : target_poly.coeffs()) co.push_back(x);
                    lifted.push_back(co);
                    return;
                }
                size_t half = group.size() / 2;
                ModPoly g(q, {1}), h(q, {1});
                std::vector<ModPoly> left(group.begin(), group.begin() + (long)half);
                std::vector<ModPoly> right(group.begin() + (long)half, group.end());
                for (auto& x : left) g = g * x;
                for (auto& x : right) h = h * x;
                Int m_out;
                ZModPoly G, H;
                hensel_pair(target_poly, g, h, target, m_out, G, H);
                mod_final = m_out;
                // build integer polys with balanced coefficients
                std::vector<Int> gc, hc;
                for (auto& x : G.c) gc.push_back(balanced(x, m_out));
                for (auto& x : H.c) hc.push_back(balanced(x, m_out));
                lift_group(IntPoly(gc), left);
                lift_group(IntPoly(hc), right);
            };

        // make f monic mod p^k by working with lc-adjusted polynomial:
        // standard trick, F = lc^(n-1) f(x / lc) is monic
        // here degrees are small, use the rational divisibility test instead and
        // lift the monic factorization of the monic-scaled polynomial.
        Int l = f.lc();
        IntPoly F;
        {
            int n = f.degree();
            std::vector<Int> Fc((size_t)n + 1);
            // F(x) = lc^(n-1) * f(x/lc): coeff_i(F) = f_i * lc^(n-1-i)
            for (int i = 0; i <= n; i++) {
                Int scale(1);
                for (int j = 0; j < n - 1 - i; j++) scale *= l;
                Fc[(size_t)i] = f.coeff(i) * scale;
            }
            // F is monic when i = n: f_n * lc^{-1} ... adjust: actually
            // coeff_n = f_n * lc^(n-1-n) = f_n / lc = 1 after the scale below
            Fc[(size_t)n] = 1;
            F = IntPoly(std::move(Fc));
        }
        ModPoly Fq = ModPoly::from_int_poly(F, q);
        auto Ffac = factor_mod(Fq.monic());
        std::vector<ModPoly> parts;
        for (auto& [pf, mult] : Ffac.factors)
            for (int i = 0; i < mult; i++) parts.push_back(pf);
        if (parts.size() == 1) return true;
        lift_group(F, parts);
        k = lifted.size();

        // subset recombination on F (monic), then map back x -> lc*x and test on f
        int n = (int)k;
        for (int sz = 1; sz <= n / 2; sz++) {
            std::vector<int> idx(sz);
            for (int i = 0; i < sz; i++) idx[(size_t)i] = i;
            for (;;) {
                // product of chosen lifted factors mod mod_final, balanced
                std::vector<Int> prod{Int(1)};
                for (int i = 0; i < sz; i++) {
                    const auto& fc = lifted[(size_t)idx[(size_t)i]];
                    std::vector<Int> np(prod.size() + fc.size() - 1, Int(0));
                    for (size_t a2 = 0; a2 < prod.size(); a2++)
                        for (size_t b2 = 0; b2 < fc.size(); b2++) {
                            np[a2 + b2] = (np[a2 + b2] + prod[a2] * fc[b2]) % mod_final;
                        }
                    prod = std::move(np);
                }
                for (auto& x : prod) x = balanced(x, mod_final);
                IntPoly cand(prod);
                // map back: candidate factor of f is primitive part of lc^? cand(lc x)...
                // F(x) = lc^(n-1) f(x/lc) -> a factor c(x) of F gives factor c(lc x) of f up to content
                {
                    std::vector<Int> cc2(cand.coeffs());
                    Int pw(1);
                    for (size_t i = 0; i < cc2.size(); i++) {
                        cc2[i] *= pw;
                        pw *= l;
                    }
                    IntPoly mapped(cc2);
                    if (mapped.degree() > 0) {
                        Int c2 = mapped.content();
                        std::vector<Int> mm(mapped.coeffs());
                        for (auto& x : mm) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c2.get_mpz_t());
                        IntPoly prim(mm);
                        if (prim.degree() > 0 && prim.degree() < f.degree() && divides_over_z(prim, f))
                            return false;
                    }
                }
                // next combination
                int i = sz - 1;
                while (i >= 0 && idx[(size_t)i] == n - sz + i) i--;
                if (i < 0) break;
                idx[(size_t)i]++;
                for (int j = i + 1; j < sz; j++) idx[(size_t)j] = idx[(size_t)j - 1] + 1;
            }
        }
    }
    return true;
}

}  // namespace extnfs
