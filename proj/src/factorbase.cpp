#include "extnfs/factorbase.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/modpoly.hpp"

namespace extnfs {

std::string PrimeIdeal::str() const {
    std::ostringstream os;
    os << side << ":" << std::hex << q << ":" << std::dec << degree << std::hex;
    switch (kind) {
        case IdealKind::deg1: os << ":" << r << ":" << R; break;
        case IdealKind::deg2_t1: os << ":" << r; break;
        case IdealKind::deg2_t2: os << ":" << a0 << ":" << a1; break;
        case IdealKind::deg4: break;
    }
    return os.str();
}

namespace {

// side polynomial coefficients specialized at y = r mod q
ModPoly specialize(const RelPoly& F, uint64_t r, uint64_t q) {
    std::vector<uint64_t> c;
    for (int i = 0; i <= F.degree(); i++) {
        uint64_t c0 = mpz_fdiv_ui(F.coeff(i)[0].get_mpz_t(), q);
        uint64_t c1 = mpz_fdiv_ui(F.coeff(i)[1].get_mpz_t(), q);
        c.push_back(addmod_u64(c0, mulmod_u64(c1, r, q), q));
    }
    return ModPoly(q, std::move(c));
}

}  // namespace

const QClassification& IdealClassifier::classify(int side, uint64_t q) const {
    auto& cache = cache_[side];
    auto it = cache.find({side, q});
    if (it != cache.end()) return it->second;

    QClassification out;
    const RelPoly& F = setup_.side_rel(side);
    const IntPoly& h = setup_.h;

    // discriminant of h mod q: zero -> ramified at the K level
    uint64_t disc;
    {
        Int d = h.coeff(1) * h.coeff(1) - 4 * h.coeff(0);
        disc = mpz_fdiv_ui(d.get_mpz_t(), q);
    }
    auto hroots = roots_mod(h, q);

    if (disc == 0) {
        out.status = QStatus::ramified;
    } else if (!hroots.empty()) {
        // split: classify each branch independently
        for (uint64_t r : hroots) {
            ModPoly spec = specialize(F, r, q);
            if (spec.degree() != F.degree()) {  // leading coefficient vanished
                out.status = QStatus::projective;
                break;
            }
            auto fac = factor_mod(spec);
            int w = 0;  // total non-linear degree above this r
            for (const auto& [pf, mult] : fac.factors) {
                if (mult > 1) {
                    out.status = QStatus::ramified;
                    break;
                }
                int d = pf.degree();
                if (d == 1) {
                    PrimeIdeal id;
                    id.side = side;
                    id.q = q;
                    id.kind = IdealKind::deg1;
                    id.degree = 1;
                    id.r = r;
                    id.R = submod_u64(0, pf.coeff(0), q);  // monic x + c0
                    out.ideals.push_back(id);
                } else if (d == 2 || d == 4) {
                    w += d;
                } else {
                    out.status = QStatus::unexpected;
                    break;
                }
            }
            if (out.status != QStatus::ok) break;
            if (w > 0) {
                PrimeIdeal id;
                id.side = side;
                id.q = q;
                id.kind = IdealKind::deg2_t1;
                id.degree = w;  // 2 or 4
                id.r = r;
                if (w != 2 && w != 4) {
                    out.status = QStatus::unexpected;
                    break;
                }
                out.ideals.push_back(id);
            }
        }
    } else {
        // inert h: work over F_{q^2} = F_q[alpha]/(h)
        Fq2 K{q, mpz_fdiv_ui(h.coeff(1).get_mpz_t(), q), mpz_fdiv_ui(h.coeff(0).get_mpz_t(), q)};
        std::vector<Fq2::E> coeffs;
        for (int i = 0; i <= F.degree(); i++) {
            coeffs.push_back({mpz_fdiv_ui(F.coeff(i)[0].get_mpz_t(), q),
                              mpz_fdiv_ui(F.coeff(i)[1].get_mpz_t(), q)});
        }
        while (!coeffs.empty() && K.is_zero(coeffs.back())) coeffs.pop_back();
        if ((int)coeffs.size() - 1 != F.degree()) {
            out.status = QStatus::projective;
        } else {
            auto roots = roots_over_fq2(K, coeffs);
            // repeated roots mean ramification above the inert prime
            // derivative coefficients
            std::vector<Fq2::E> dcoeffs;
            for (size_t i = 1; i < coeffs.size(); i++) {
                uint64_t m = i % q;
                dcoeffs.push_back({mulmod_u64(coeffs[i][0], m, q), mulmod_u64(coeffs[i][1], m, q)});
            }
            for (const auto& rho : roots) {
                Fq2::E acc = K.zero();
                for (size_t i = dcoeffs.size(); i-- > 0;) acc = K.add(K.mul(acc, rho), dcoeffs[i]);
                if (K.is_zero(acc)) {
                    out.status = QStatus::ramified;
                    break;
                }
            }
            if (out.status == QStatus::ok) {
                for (const auto& rho : roots) {
                    PrimeIdeal id;
                    id.side = side;
                    id.q = q;
                    id.kind = IdealKind::deg2_t2;
                    id.degree = 2;
                    id.a0 = submod_u64(0, rho[0], q);
                    id.a1 = submod_u64(0, rho[1], q);
                    out.ideals.push_back(id);
                }
                // inert census entry: side 0 with rootless f0 over F_{q^2}
                if (side == 0 && roots.empty()) {
                    PrimeIdeal id;
                    id.side = side;
                    id.q = q;
                    id.kind = IdealKind::deg4;
                    id.degree = 4;
                    out.ideals.push_back(id);
                }
            }
        }
    }

    if (out.status != QStatus::ok) out.ideals.clear();
    std::sort(out.ideals.begin(), out.ideals.end());
    auto [pos, inserted] = cache.emplace(std::make_pair(side, q), std::move(out));
    return pos->second;
}

std::pair<size_t, size_t> FactorBase::range(uint64_t q) const {
    PrimeIdeal lo, hi;
    lo.side = hi.side = side;
    lo.q = hi.q = q;
    lo.kind = IdealKind::deg1;
    hi.kind = IdealKind::deg4;
    hi.r = hi.R = hi.a0 = hi.a1 = ~0ull;
    auto first = std::lower_bound(ideals.begin(), ideals.end(), lo);
    auto last = std::upper_bound(ideals.begin(), ideals.end(), hi);
    return {(size_t)(first - ideals.begin()), (size_t)(last - ideals.begin())};
}

std::optional<uint32_t> FactorBase::find(const PrimeIdeal& key) const {
    auto it = std::lower_bound(ideals.begin(), ideals.end(), key);
    if (it != ideals.end() && *it == key) return (uint32_t)(it - ideals.begin());
    return std::nullopt;
}

FactorBase build_factor_base(const PolySetup& setup, int side, uint64_t bound) {
    if (bound < 2) throw std::invalid_argument("build_factor_base: bound < 2");
    FactorBase fb;
    fb.side = side;
    fb.bound = bound;
    IdealClassifier cls(setup);
    for (uint64_t q : primes_up_to(bound)) {
        const auto& c = cls.classify(side, q);
        if (c.status != QStatus::ok) {
            fb.skipped.emplace_back(q, c.status);
            continue;
        }
        for (const auto& id : c.ideals) fb.ideals.push_back(id);
    }
    for (size_t i = 0; i < fb.ideals.size(); i++) fb.ideals[i].index = (uint32_t)i;
    return fb;
}

namespace {

// valuation of x mod q^k (x reduced into [0, q^k)); returns k when x = 0
int vq_of_residue(const Int& x, uint64_t q, int k) {
    if (x == 0) return k;
    Int t = x;
    int v = 0;
    while (v < k && mpz_divisible_ui_p(t.get_mpz_t(), q)) {
        t /= (unsigned long)q;
        v++;
    }
    return v;
}

// Newton lift of a simple root: r with f(r) = 0 mod q, f'(r) != 0 mod q,
// lifted to f(rhat) = 0 mod q^k
Int lift_root(const IntPoly& f, uint64_t r, uint64_t q, int k, const Int& qk) {
    Int rr((unsigned long)r);
    Int prec((unsigned long)q);
    while (prec < qk) {
        prec = prec * prec;
        if (prec > qk) prec = qk;
        Int fr = f.eval(rr) % prec;
        Int dfr = f.derivative().eval(rr) % prec;
        Int dinv;
        // invert mod prec: f'(r) is a unit mod q, hence mod q^k
        if (mpz_invert(dinv.get_mpz_t(), dfr.get_mpz_t(), prec.get_mpz_t()) == 0)
            throw std::logic_error("lift_root: derivative not invertible");
        rr = (rr - fr * dinv) % prec;
        if (rr < 0) rr += prec;
    }
    return rr;
}

}  // namespace

int ideal_valuation(const PolySetup& setup, const PrimeIdeal& ideal,
                    const std::array<long long, 4>& e) {
    if (e[0] == 0 && e[1] == 0 && e[2] == 0 && e[3] == 0)
        throw std::invalid_argument("unnormalized element");
    long long g = 0;
    for (long long x : e) g = gcd_i64(g, x);
    if (g != 1) throw std::invalid_argument("unnormalized element");

    uint64_t q = ideal.q;
    if (ideal.kind == IdealKind::deg4) return 0;  // coprime elements never land in q*O

    // quick mod-q membership test first
    uint64_t am = (uint64_t)(((e[0] % (long long)q) + (long long)q) % (long long)q);
    uint64_t bm = (uint64_t)(((e[1] % (long long)q) + (long long)q) % (long long)q);
    uint64_t cm = (uint64_t)(((e[2] % (long long)q) + (long long)q) % (long long)q);
    uint64_t dm = (uint64_t)(((e[3] % (long long)q) + (long long)q) % (long long)q);

    if (ideal.kind == IdealKind::deg1 || ideal.kind == IdealKind::deg2_t1) {
        uint64_t A = addmod_u64(am, mulmod_u64(bm, ideal.r, q), q);
        uint64_t B = addmod_u64(cm, mulmod_u64(dm, ideal.r, q), q);
        if (ideal.kind == IdealKind::deg1) {
            if (addmod_u64(A, mulmod_u64(B, ideal.R, q), q) != 0) return 0;
        } else {
            if (A != 0 || B != 0) return 0;
        }
    } else {
        // t2: (a + b alpha) + (c + d alpha) * rho = 0 in F_{q^2}, rho = -(a0 + a1 alpha)
        uint64_t h1 = mpz_fdiv_ui(setup.h.coeff(1).get_mpz_t(), q);
        uint64_t h0 = mpz_fdiv_ui(setup.h.coeff(0).get_mpz_t(), q);
        Fq2 K{q, h1, h0};
        Fq2::E rho{submod_u64(0, ideal.a0, q), submod_u64(0, ideal.a1, q)};
        Fq2::E img = K.add({am, bm}, K.mul({cm, dm}, rho));
        if (!K.is_zero(img)) return 0;
    }

    // exact valuation by lifting; double precision until the valuation is
    // pinned below the working precision
    for (int k = 2;; k *= 2) {
        Int qk;
        mpz_ui_pow_ui(qk.get_mpz_t(), q, (unsigned long)k);
        int v;
        if (ideal.kind == IdealKind::deg1 || ideal.kind == IdealKind::deg2_t1) {
            Int rhat = lift_root(setup.h, ideal.r, q, k, qk);
            Int A = (Int((long)e[0]) + Int((long)e[1]) * rhat) % qk;
            Int B = (Int((long)e[2]) + Int((long)e[3]) * rhat) % qk;
            if (A < 0) A += qk;
            if (B < 0) B += qk;
            if (ideal.kind == IdealKind::deg2_t1) {
                v = std::min(vq_of_residue(A, q, k), vq_of_residue(B, q, k));
            } else {
                // lift R as root of the specialization at rhat
                const RelPoly& F = setup.side_rel(ideal.side);
                std::vector<Int> spec;
                for (int i = 0; i <= F.degree(); i++) {
                    Int c = (F.coeff(i)[0] + F.coeff(i)[1] * rhat) % qk;
                    if (c < 0) c += qk;
                    spec.push_back(c);
                }
                Int Rhat = lift_root(IntPoly(spec), ideal.R, q, k, qk);
                Int img = (A + B * Rhat) % qk;
                v = vq_of_residue(img, q, k);
            }
        } else {
            // t2: Newton in (Z/q^k)[alpha]/(h)
            uint64_t h1u = mpz_fdiv_ui(setup.h.coeff(1).get_mpz_t(), q);
            (void)h1u;
            Int h1 = setup.h.coeff(1) % qk, h0 = setup.h.coeff(0) % qk;
            if (h1 < 0) h1 += qk;
            if (h0 < 0) h0 += qk;
            auto mul2 = [&](const std::array<Int, 2>& x, const std::array<Int, 2>& y) {
                Int t2 = x[1] * y[1] % qk;
                Int t1 = (x[0] * y[1] + x[1] * y[0]) % qk;
                Int t0 = x[0] * y[0] % qk;
                std::array<Int, 2> r{(t0 - t2 * h0) % qk, (t1 - t2 * h1) % qk};
                if (r[0] < 0) r[0] += qk;
                if (r[1] < 0) r[1] += qk;
                return r;
            };
            auto add2 = [&](const std::array<Int, 2>& x, const std::array<Int, 2>& y) {
                std::array<Int, 2> r{(x[0] + y[0]) % qk, (x[1] + y[1]) % qk};
                return r;
            };
            auto inv2 = [&](const std::array<Int, 2>& x) {
                // norm = x0^2 - h1 x0 x1 + h0 x1^2, invertible mod q
                Int n = (x[0] * x[0] - h1 * x[0] * x[1] + h0 * x[1] * x[1]) % qk;
                if (n < 0) n += qk;
                Int ninv;
                if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), qk.get_mpz_t()) == 0)
                    throw std::logic_error("t2 lift: non-invertible norm");
                Int c0 = (x[0] - h1 * x[1]) % qk;
                Int c1 = (-x[1]) % qk;
                std::array<Int, 2> r{c0 * ninv % qk, c1 * ninv % qk};
                if (r[0] < 0) r[0] += qk;
                if (r[1] < 0) r[1] += qk;
                return r;
            };

            const RelPoly& F = setup.side_rel(ideal.side);
            std::vector<std::array<Int, 2>> coeffs;
            for (int i = 0; i <= F.degree(); i++) {
                Int c0 = F.coeff(i)[0] % qk, c1 = F.coeff(i)[1] % qk;
                if (c0 < 0) c0 += qk;
                if (c1 < 0) c1 += qk;
                coeffs.push_back({c0, c1});
            }
            auto evalF = [&](const std::array<Int, 2>& x, bool deriv) {
                std::array<Int, 2> acc{Int(0), Int(0)};
                if (!deriv) {
                    for (size_t i = coeffs.size(); i-- > 0;) acc = add2(mul2(acc, x), coeffs[i]);
                } else {
                    for (size_t i = coeffs.size(); i-- > 1;) {
                        std::array<Int, 2> ci{coeffs[i][0] * (unsigned long)i % qk,
                                              coeffs[i][1] * (unsigned long)i % qk};
                        acc = add2(mul2(acc, x), ci);
                    }
                }
                return acc;
            };

            std::array<Int, 2> rho{Int((unsigned long)submod_u64(0, ideal.a0, q)),
                                   Int((unsigned long)submod_u64(0, ideal.a1, q))};
            // Newton iterations: enough doublings from q to q^k
            int iters = 1;
            for (int prec = 1; prec < k; prec *= 2) iters++;
            for (int it = 0; it < iters; it++) {
                auto fr = evalF(rho, false);
                auto dfr = evalF(rho, true);
                auto step = mul2(fr, inv2(dfr));
                rho = {(rho[0] - step[0]) % qk, (rho[1] - step[1]) % qk};
                if (rho[0] < 0) rho[0] += qk;
                if (rho[1] < 0) rho[1] += qk;
            }
            std::array<Int, 2> A{Int((long)e[0]), Int((long)e[1])};
            std::array<Int, 2> B{Int((long)e[2]), Int((long)e[3])};
            A = {A[0] % qk, A[1] % qk};
            B = {B[0] % qk, B[1] % qk};
            if (A[0] < 0) A[0] += qk;
            if (A[1] < 0) A[1] += qk;
            if (B[0] < 0) B[0] += qk;
            if (B[1] < 0) B[1] += qk;
            auto img = add2(A, mul2(B, rho));
            v = std::min(vq_of_residue(img[0], q, k), vq_of_residue(img[1], q, k));
        }
        if (v < k) return v;
        if (k > 256) throw std::logic_error("ideal_valuation: runaway precision");
    }
}

std::optional<QValuations> attribute_valuations(const IdealClassifier& cls, int side, uint64_t q,
                                                int vq_norm, const std::array<long long, 4>& e) {
    const auto& c = cls.classify(side, q);
    if (c.status != QStatus::ok) return std::nullopt;
    QValuations out;
    int total = 0;
    for (const auto& id : c.ideals) {
        int v = ideal_valuation(cls.setup(), id, e);
        if (v > 0) {
            out.vals.emplace_back(id, v);
            total += v * id.degree;
        }
    }
    if (total != vq_norm) return std::nullopt;
    return out;
}

}  // namespace extnfs
