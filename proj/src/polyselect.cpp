#include "extnfs/polyselect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/factorbase.hpp"
#include "extnfs/sieve4d.hpp"
#include "extnfs/lattice.hpp"
#include "extnfs/modpoly.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/smooth.hpp"

namespace extnfs {

std::string SetupReport::str() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.pass ? "ok   " : "FAIL ") << c.name;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    return os.str();
}

namespace {

Int mod_reduce(const Int& x, const Int& p) {
    Int r = x % p;
    if (r < 0) r += p;
    return r;
}

// K = F_p[y]/(h), tolerant of degenerate setups (verification must report,
// not throw)
struct Kbar {
    Int p, h1, h0;
    using E = std::array<Int, 2>;

    Kbar(const Int& p_, const IntPoly& h) : p(p_) {
        h1 = mod_reduce(h.coeff(1), p);
        h0 = mod_reduce(h.coeff(0), p);
    }
    bool zero(const E& a) const { return a[0] == 0 && a[1] == 0; }
    E reduce(const std::array<Int, 2>& a) const { return {mod_reduce(a[0], p), mod_reduce(a[1], p)}; }
    E mul(const E& a, const E& b) const {
        Int t2 = a[1] * b[1] % p;
        Int t1 = (a[0] * b[1] + a[1] * b[0]) % p;
        Int t0 = a[0] * b[0] % p;
        return {mod_reduce(t0 - t2 * h0, p), mod_reduce(t1 - t2 * h1, p)};
    }
    E sub(const E& a, const E& b) const { return {mod_reduce(a[0] - b[0], p), mod_reduce(a[1] - b[1], p)}; }
    bool inv(const E& a, E& out) const {
        if (zero(a)) return false;
        Int n = mod_reduce(a[0] * a[0] - h1 * a[0] * a[1] + h0 * a[1] * a[1], p);
        Int ninv;
        if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0) return false;
        Int c0 = mod_reduce(a[0] - h1 * a[1], p);
        Int c1 = mod_reduce(-a[1], p);
        return out = E{mod_reduce(c0 * ninv, p), mod_reduce(c1 * ninv, p)}, true;
    }
    E pow(E a, const Int& e) const {
        E r{Int(1), Int(0)};
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        if (e == 0) return r;
        for (size_t i = 0; i < bits; i++) {
            if (mpz_tstbit(e.get_mpz_t(), (mp_bitcnt_t)i)) r = mul(r, a);
            if (i + 1 < bits) a = mul(a, a);
        }
        return r;
    }
};

// reduction of a RelPoly mod p into K coefficients
std::vector<Kbar::E> rel_mod_p(const RelPoly& F, const Kbar& K) {
    std::vector<Kbar::E> out;
    for (int i = 0; i <= F.degree(); i++) out.push_back(K.reduce(F.coeff(i)));
    while (!out.empty() && K.zero(out.back())) out.pop_back();
    return out;
}

// does fbar divide gbar over K? (fbar leading coefficient must be a unit)
bool divides_over_k(const Kbar& K, const std::vector<Kbar::E>& fbar, std::vector<Kbar::E> gbar) {
    if (fbar.empty()) return false;
    Kbar::E linv;
    if (!K.inv(fbar.back(), linv)) return false;
    while (gbar.size() >= fbar.size()) {
        Kbar::E fac = K.mul(gbar.back(), linv);
        size_t shift = gbar.size() - fbar.size();
        for (size_t i = 0; i < fbar.size(); i++)
            gbar[i + shift] = K.sub(gbar[i + shift], K.mul(fac, fbar[i]));
        while (!gbar.empty() && K.zero(gbar.back())) gbar.pop_back();
        if (gbar.empty()) return true;
    }
    return gbar.empty();
}

// quadratic over K irreducible <=> its discriminant is a non-square in F_{p^2}
bool quadratic_irreducible_over_k(const Kbar& K, const std::vector<Kbar::E>& fbar) {
    if (fbar.size() != 3) return false;
    const auto &a = fbar[2], &b = fbar[1], &c = fbar[0];
    Kbar::E disc = K.sub(K.mul(b, b), K.mul(K.reduce({Int(4), Int(0)}), K.mul(a, c)));
    if (K.zero(disc)) return false;
    Int e = (K.p * K.p - 1) / 2;
    Kbar::E r = K.pow(disc, e);
    return !(r[0] == 1 && r[1] == 0);
}

bool is_qr_mod_p(const Int& s, const Int& p) {
    Int e = (p - 1) / 2;
    Int r;
    mpz_powm(r.get_mpz_t(), s.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r == 1;
}

// Tonelli-Shanks square root mod odd prime p, smaller root returned
Int sqrt_mod_p(const Int& s, const Int& p) {
    Int r;
    if (mpz_legendre(s.get_mpz_t(), p.get_mpz_t()) != 1) throw std::invalid_argument("sqrt_mod_p: non-residue");
    if (p % 4 == 3) {
        Int e = (p + 1) / 4;
        mpz_powm(r.get_mpz_t(), s.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    } else {
        // Tonelli-Shanks
        Int q = p - 1;
        unsigned long m = 0;
        while (mpz_even_p(q.get_mpz_t())) {
            q /= 2;
            m++;
        }
        Int z(2);
        while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z++;
        Int c, t, rr, e;
        mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        mpz_powm(t.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        e = (q + 1) / 2;
        mpz_powm(rr.get_mpz_t(), s.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        while (t != 1) {
            Int tt = t;
            unsigned long i = 0;
            while (tt != 1) {
                tt = tt * tt % p;
                i++;
            }
            Int b = c;
            for (unsigned long j = 0; j + i + 1 < m; j++) b = b * b % p;
            m = i;
            c = b * b % p;
            t = t * c % p;
            rr = rr * b % p;
        }
        r = rr;
    }
    Int other = p - r;
    return std::min(r, other);
}

}  // namespace

RelPoly conjugation_f0(const std::array<Int, 2>& t, const Int& u, const Int& v) {
    RelPoly f0;
    f0.c.resize(3);
    f0.c[0] = {t[0] * v, t[1] * v};
    f0.c[1] = {u, Int(0)};
    f0.c[2] = {t[0] * v, t[1] * v};
    return f0;
}

RelPoly conjugation_g0(const std::array<Int, 2>& t, const Int& s, const IntPoly& h) {
    // t^2 in Z[alpha]/(h), h monic quadratic
    Int h1 = h.coeff(1), h0 = h.coeff(0);
    Int c0 = t[0] * t[0] - h0 * t[1] * t[1];
    Int c1 = 2 * t[0] * t[1] - h1 * t[1] * t[1];
    RelPoly g0;
    g0.c.resize(5);
    g0.c[4] = {c0, c1};
    g0.c[2] = {2 * c0 - s, 2 * c1};
    g0.c[0] = {c0, c1};
    return g0;
}

namespace {

/* Sample sieving test: relations assembled over two sample special-q
 * lattices in a small box. Counts every effect that matters for yield
 * (norm sizes, skipped primes, splitting densities); used to rank
 * verify-passing candidates. */
long sieving_test_yield(const PolySetup& cand) {
    IdealClassifier cls(cand);
    long yield = 0;
    int got_q = 0;
    for (uint64_t q = 4099; got_q < 2 && q < 60000; q++) {
        if (!is_prime_u64(q)) continue;
        const auto& c = cls.classify(0, q);
        if (c.status != QStatus::ok) continue;
        const PrimeIdeal* deg1 = nullptr;
        for (const auto& id : c.ideals)
            if (id.kind == IdealKind::deg1) {
                deg1 = &id;
                break;
            }
        if (!deg1) continue;
        got_q++;
        SpecialQ sq = build_special_q_lattice(*deg1, cand);
        Orthotope box{{16, 16, 16, 16}};
        enumerate_box(sq.reduced_basis, box,
                      [&](const std::array<long long, 4>&, const std::array<long long, 4>& x) {
                          long long g = 0;
                          for (long long s2 : x) g = gcd_i64(g, s2);
                          if (g != 1) return;
                          auto rel = assemble_relation(cand, cls, x, {1u << 16, 1u << 16}, 1u << 14);
                          if (rel) yield++;
                      });
    }
    return yield;
}

}  // namespace

SetupReport verify_setup(const PolySetup& setup) {
    SetupReport rep;
    auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
        rep.checks.push_back({name, ok, detail});
    };
    const Int& p = setup.params.p;

    // subgroup order
    add("ell_prime", is_prime(setup.params.ell));
    add("ell_times_cofactor", setup.params.ell * setup.params.cofactor == p * p + 1,
        "ell * cofactor == p^2 + 1");
    {
        Int g;
        mpz_gcd(g.get_mpz_t(), setup.params.ell.get_mpz_t(), Int(p * p - 1).get_mpz_t());
        add("ell_coprime_to_p2m1", g == 1);
    }

    // h irreducible mod p: quadratic with non-residue discriminant
    {
        bool ok = false;
        if (setup.h.degree() == 2) {
            Int disc = setup.h.coeff(1) * setup.h.coeff(1) - 4 * setup.h.coeff(2) * setup.h.coeff(0);
            disc = mod_reduce(disc, p);
            ok = disc != 0 && !is_qr_mod_p(disc, p);
        }
        add("h_irreducible_mod_p", ok);
    }

    Kbar K(p, setup.h);
    auto fbar = rel_mod_p(setup.f0, K);
    auto gbar = rel_mod_p(setup.g0, K);

    add("f0_irreducible_over_Fp2", fbar.size() == 3 && quadratic_irreducible_over_k(K, fbar));
    add("f0_divides_g0_mod_p", !fbar.empty() && !gbar.empty() && divides_over_k(K, fbar, gbar));
    add("f_degree", setup.f.degree() == 4);
    add("g_degree", setup.g.degree() == 8);
    add("f_irreducible_over_Q", setup.f.degree() >= 1 && irreducible_over_q(setup.f));
    add("g_irreducible_over_Q", setup.g.degree() >= 1 && irreducible_over_q(setup.g));
    add("short_vector_congruence", mod_reduce(setup.u * setup.u - setup.s * setup.v * setup.v, p) == 0,
        "u^2 = s v^2 mod p");
    {
        // p must not divide the norm of lc(f0) (projective-ideal guard)
        auto lc = setup.f0.coeff(2);
        Int n = lc[0] * lc[0] - setup.h.coeff(1) * lc[0] * lc[1] + setup.h.coeff(0) * lc[1] * lc[1];
        add("p_ndiv_lc_f0_norm", mod_reduce(n, p) != 0);
    }
    return rep;
}

PolySetup select_polynomials(const TowerParams& params, const SelectSearch& search) {
    const Int& p = params.p;
    if (!is_prime(p)) throw std::invalid_argument("select_polynomials: p not prime");

    /* Pick h: monic quadratic with constant term +-1 (so that t = alpha has
     * unit norm and the conjugation leading coefficients contribute nothing
     * to the norms), irreducible over Q and mod p. Complex discriminants
     * first (smaller unit ranks), then small coefficients. */
    IntPoly h;
    {
        struct HCand {
            long h1, h0;
            long disc;
        };
        std::vector<HCand> cands;
        for (long h0 : {1l, -1l})
            for (long h1 = -5; h1 <= 5; h1++) {
                long disc = h1 * h1 - 4 * h0;
                if (disc == 0) continue;
                long rt = (long)(std::sqrt((double)std::abs(disc)) + 0.5);
                if (disc > 0 && rt * rt == disc) continue;  // reducible over Q
                cands.push_back({h1, h0, disc});
            }
        std::sort(cands.begin(), cands.end(), [](const HCand& a, const HCand& b) {
            bool ca = a.disc < 0, cb = b.disc < 0;
            if (ca != cb) return ca;
            if (std::abs(a.h1) != std::abs(b.h1)) return std::abs(a.h1) < std::abs(b.h1);
            if (a.h1 != b.h1) return a.h1 < b.h1;
            return a.h0 > b.h0;
        });
        bool found = false;
        for (const auto& cand : cands) {
            Int disc = Int(cand.h1) * Int(cand.h1) - 4 * Int(cand.h0);
            Int dm = mod_reduce(disc, p);
            if (dm == 0 || is_qr_mod_p(dm, p)) continue;
            h = IntPoly({Int(cand.h0), Int(cand.h1), Int(1)});
            found = true;
            break;
        }
        if (!found) throw std::runtime_error("select_polynomials: no valid h found");
    }

    std::vector<std::pair<long, std::array<long, 2>>> tried;

    /* t candidates ordered by max coefficient. Only unit-norm t are usable:
     * lc(g0) = t^2, and any prime dividing N(t) would contribute a constant
     * unattributable factor to every side-1 norm. */
    std::vector<std::array<Int, 2>> tlist;
    {
        Int h1 = h.coeff(1), h0 = h.coeff(0);
        auto tnorm = [&](long t0, long t1) -> Int {
            return Int(t0) * t0 - h1 * t0 * t1 + h0 * t1 * t1;
        };
        for (long m = 1; m <= search.max_t_coeff; m++) {
            std::vector<std::array<long, 2>> raw{{m, 0}, {0, m}};
            for (long t0 = 1; t0 <= m; t0++)
                for (long t1 = 1; t1 <= m; t1++)
                    if (std::max(t0, t1) == m) raw.push_back({t0, t1});
            for (auto [t0, t1] : raw) {
                Int n = tnorm(t0, t1);
                if (n == 1 || n == -1) tlist.push_back({Int(t0), Int(t1)});
            }
        }
        if (tlist.empty()) throw std::runtime_error("select_polynomials: no unit-norm t available");
    }

    /* Walk (s, t) candidates and rank the verify-passing ones by an actual
     * sieving test (relations assembled over a few sample special-q), the
     * paper's own tie-breaker. The test counts every effect that matters:
     * norm sizes, skipped bad primes, splitting densities. */
    PolySetup best;
    long best_score = -1;
    int viable_seen = 0;
    const int window = 12;

    for (Int s(2); s <= search.max_s; s++) {
        // non-square in Z
        if (mpz_perfect_square_p(s.get_mpz_t())) continue;
        if (!is_qr_mod_p(s, p)) continue;
        Int r = sqrt_mod_p(mod_reduce(s, p), p);

        // short vector in [[p, r], [0, 1]] (columns)
        std::vector<std::vector<Int>> cols{{p, Int(0)}, {r, Int(1)}};
        auto red = lll_reduce_generic(cols);
        Int u = red[0][0], v = red[0][1];
        if (v < 0) {
            u = -u;
            v = -v;
        }
        if (v == 0) continue;
        {
            Int g;
            mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
            if (g > 1) {
                u /= g;
                v /= g;
            }
        }

        for (const auto& t : tlist) {
            tried.push_back({mpz_get_si(s.get_mpz_t()),
                             {mpz_get_si(t[0].get_mpz_t()), mpz_get_si(t[1].get_mpz_t())}});
            PolySetup cand;
            cand.params = params;
            cand.h = h;
            cand.s = s;
            cand.t = t;
            cand.u = u;
            cand.v = v;
            cand.f0 = conjugation_f0(t, u, v);
            cand.g0 = conjugation_g0(t, s, h);
            bool sf_f = true, sf_g = true;
            cand.f = absolute_poly(cand.f0, h, &sf_f);
            cand.g = absolute_poly(cand.g0, h, &sf_g);
            if (!sf_f || !sf_g) continue;
            if (!verify_setup(cand).all_pass()) continue;

            long score = sieving_test_yield(cand);
            viable_seen++;
            if (score > best_score) {
                best = cand;
                best_score = score;
            }
        }
        if (viable_seen >= window && best_score > 0) return best;
    }
    if (best_score > 0) return best;

    std::ostringstream os;
    os << "select_polynomials: search exhausted; tried";
    for (const auto& [s, t] : tried) os << " (s=" << s << ",t=" << t[0] << "+" << t[1] << "a)";
    throw std::runtime_error(os.str());
}

double quality_score(const PolySetup& setup, const std::vector<uint64_t>& sample_qs) {
    if (sample_qs.empty()) throw std::invalid_argument("quality_score: empty sample list");
    double total_bits = 0;
    long total_count = 0;
    for (uint64_t q : sample_qs) {
        // degree-1 ideal on side 0: r root of h, R root of f0 specialized at r
        auto hroots = roots_mod(setup.h, q);
        bool found = false;
        uint64_t rr = 0, RR = 0;
        for (uint64_t r : hroots) {
            IntPoly spec({setup.f0.coeff(0)[0] + setup.f0.coeff(0)[1] * Int((unsigned long)r),
                          setup.f0.coeff(1)[0] + setup.f0.coeff(1)[1] * Int((unsigned long)r),
                          setup.f0.coeff(2)[0] + setup.f0.coeff(2)[1] * Int((unsigned long)r)});
            if (mpz_fdiv_ui(spec.lc().get_mpz_t(), q) == 0) continue;
            auto roots = roots_mod(spec, q);
            if (!roots.empty()) {
                rr = r;
                RR = roots[0];
                found = true;
                break;
            }
        }
        if (!found) continue;

        Basis4 raw;
        raw.at(0, 0) = (long)q;
        raw.at(0, 1) = -Int((unsigned long)rr);
        raw.at(1, 1) = 1;
        raw.at(0, 2) = -Int((unsigned long)RR);
        raw.at(2, 2) = 1;
        raw.at(1, 3) = -Int((unsigned long)RR);
        raw.at(3, 3) = 1;
        Basis4 red = lll_reduce(raw);

        // deterministic sample: small combinations of the reduced columns
        int used = 0;
        for (long z0 = -2; z0 <= 2 && used < 256; z0++)
            for (long z1 = -2; z1 <= 2 && used < 256; z1++)
                for (long z2 = -2; z2 <= 2 && used < 256; z2++)
                    for (long z3 = -2; z3 <= 2 && used < 256; z3++) {
                        if (z0 == 0 && z1 == 0 && z2 == 0 && z3 == 0) continue;
                        std::array<long long, 4> e{};
                        for (int row = 0; row < 4; row++) {
                            Int val = red.at(row, 0) * z0 + red.at(row, 1) * z1 + red.at(row, 2) * z2 +
                                      red.at(row, 3) * z3;
                            if (!val.fits_slong_p()) goto next_point;
                            e[(size_t)row] = val.get_si();
                        }
                        if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0) continue;
                        {
                            Int n0 = norm_side(setup, 0, e);
                            Int n1 = norm_side(setup, 1, e);
                            Int sum = n0 + n1;
                            total_bits += (double)mpz_sizeinbase(sum.get_mpz_t(), 2);
                            total_count++;
                            used++;
                        }
                    next_point:;
                    }
    }
    if (total_count == 0) throw std::invalid_argument("quality_score: no degree-1 ideal for any sample q");
    return total_bits / (double)total_count;
}

}  // namespace extnfs
