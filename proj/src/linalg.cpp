#include "extnfs/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/modpoly.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/rng.hpp"

namespace extnfs {

int unit_rank(const IntPoly& abs_poly) {
    if (!irreducible_over_q(abs_poly)) throw std::invalid_argument("unit_rank: reducible input");
    int deg = abs_poly.degree();
    int r1 = count_real_roots(abs_poly);
    int r2 = (deg - r1) / 2;
    return r1 + r2 - 1;
}

namespace {

/* arithmetic in (Z/ell^2)[X]/(F), F monic-normalized; inverses are computed
 * mod ell (a field) and Hensel-lifted */
struct QuotRing {
    Int m, ell;
    uint64_t ell_u64;
    std::vector<Int> F;
    size_t deg;

    Int red(const Int& x) const {
        Int r = x % m;
        if (r < 0) r += m;
        return r;
    }

    QuotRing(const IntPoly& f, const Int& ell_) : ell(ell_) {
        m = ell * ell;
        ell_u64 = mpz_get_ui(ell.get_mpz_t());
        deg = (size_t)f.degree();
        Int lc = red(f.lc());
        Int lcinv;
        if (mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), m.get_mpz_t()) == 0)
            throw std::invalid_argument("quotient ring: leading coefficient not invertible");
        F.resize(deg + 1);
        for (size_t i = 0; i <= deg; i++) F[i] = red(f.coeff((int)i) * lcinv);
    }

    using V = std::vector<Int>;
    V zero() const { return V(deg, Int(0)); }
    V one() const {
        V v = zero();
        v[0] = 1;
        return v;
    }
    V mul(const V& a, const V& b) const {
        std::vector<Int> t(2 * deg - 1, Int(0));
        for (size_t i = 0; i < deg; i++) {
            if (a[i] == 0) continue;
            for (size_t j = 0; j < deg; j++) t[i + j] = (t[i + j] + a[i] * b[j]) % m;
        }
        for (size_t i = 2 * deg - 2; i >= deg && i < t.size(); i--) {
            Int c = t[i] % m;
            if (c == 0) continue;
            for (size_t j = 0; j < deg; j++) t[i - deg + j] = (t[i - deg + j] - c * F[j]) % m;
        }
        V out(deg);
        for (size_t i = 0; i < deg; i++) out[i] = red(t[i]);
        return out;
    }
    V pow(const V& a, const Int& e) const {
        V r = one(), b = a;
        if (e == 0) return r;
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = 0; i < bits; i++) {
            if (mpz_tstbit(e.get_mpz_t(), (mp_bitcnt_t)i)) r = mul(r, b);
            if (i + 1 < bits) b = mul(b, b);
        }
        return r;
    }
    V inv(const V& a) const {
        // extended Euclid over F_ell[x], then one Newton lift to ell^2
        ModPoly A(ell_u64), Fq(ell_u64);
        {
            std::vector<uint64_t> ac, fc;
            for (size_t i = 0; i < deg; i++) ac.push_back(mpz_fdiv_ui(a[i].get_mpz_t(), ell_u64));
            for (size_t i = 0; i <= deg; i++) fc.push_back(mpz_fdiv_ui(F[i].get_mpz_t(), ell_u64));
            A = ModPoly(ell_u64, ac);
            Fq = ModPoly(ell_u64, fc);
        }
        // r0 = Fq, r1 = A; maintain s with A*s = r mod Fq
        ModPoly r0 = Fq, r1 = A, s0(ell_u64), s1(ell_u64, {1});
        while (!r1.is_zero() && r1.degree() > 0) {
            // q = r0 / r1
            ModPoly q(ell_u64), rem = r0;
            uint64_t inv0 = invmod_u64(r1.lc(), ell_u64);
            std::vector<uint64_t> qc((size_t)std::max(0, rem.degree() - r1.degree()) + 1, 0);
            while (!rem.is_zero() && rem.degree() >= r1.degree()) {
                uint64_t f2 = mulmod_u64(rem.lc(), inv0, ell_u64);
                int shift = rem.degree() - r1.degree();
                qc[(size_t)shift] = f2;
                std::vector<uint64_t> sub((size_t)shift, 0);
                for (int i = 0; i <= r1.degree(); i++)
                    sub.push_back(mulmod_u64(f2, r1.coeff(i), ell_u64));
                rem = rem - ModPoly(ell_u64, sub);
            }
            q = ModPoly(ell_u64, qc);
            ModPoly s2 = s0 - q * s1;
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        if (r1.is_zero()) throw std::invalid_argument("quot ring inv: not invertible");
        uint64_t c0inv = invmod_u64(r1.coeff(0), ell_u64);
        ModPoly w0 = (s1 * ModPoly(ell_u64, {c0inv})).rem(Fq);
        V w = zero();
        for (int i = 0; i <= w0.degree() && i < (int)deg; i++) w[(size_t)i] = Int(w0.coeff(i));
        // Newton: w <- w (2 - a w) mod ell^2
        V aw = mul(a, w);
        V two_minus = zero();
        for (size_t i = 0; i < deg; i++) two_minus[i] = red((i == 0 ? Int(2) : Int(0)) - aw[i]);
        return mul(w, two_minus);
    }

    // image of (a + b alpha) + (c + d alpha) X
    V embed(const V& alpha, const std::array<long long, 4>& e) const {
        V z = zero();
        for (size_t i = 0; i < deg; i++) {
            Int lo = Int((long)e[1]) * alpha[i] + (i == 0 ? Int((long)e[0]) : Int(0));
            z[i] = red(lo);
        }
        V u = zero();
        for (size_t i = 0; i < deg; i++) {
            Int hi = Int((long)e[3]) * alpha[i] + (i == 0 ? Int((long)e[2]) : Int(0));
            u[i] = red(hi);
        }
        // z += u * X, reduced
        V x = zero();
        x[1] = 1;
        V ux = mul(u, x);
        for (size_t i = 0; i < deg; i++) z[i] = red(z[i] + ux[i]);
        return z;
    }

    // full mu with z^eps = 1 + ell mu; coordinates mod ell
    std::vector<Int> sm_mu(const V& alpha, const Int& epsilon,
                           const std::array<long long, 4>& e) const {
        V z = embed(alpha, e);
        V w = pow(z, epsilon);
        std::vector<Int> mu(deg);
        for (size_t i = 0; i < deg; i++) {
            Int d = (i == 0) ? red(w[i] - 1) : w[i];
            if (d % ell != 0) throw std::runtime_error("schirokauer_map: z^eps != 1 mod ell");
            mu[i] = (d / ell) % ell;
        }
        return mu;
    }
};

}  // namespace

SchirokauerSpec build_schirokauer_spec(const PolySetup& setup, int side, const Int& ell) {
    SchirokauerSpec spec;
    spec.side = side;
    spec.abs_poly = setup.side_abs(side);
    spec.ell = ell;
    spec.ell2 = ell * ell;
    spec.rank = unit_rank(spec.abs_poly);

    if (!ell.fits_ulong_p())
        throw std::invalid_argument("schirokauer spec: ell beyond word size is unsupported");
    uint64_t l = mpz_get_ui(ell.get_mpz_t());

    ModPoly fq = ModPoly::from_int_poly(spec.abs_poly, l);
    if (fq.degree() != spec.abs_poly.degree())
        throw std::invalid_argument("schirokauer spec: ell divides leading coefficient");
    if (poly_gcd(fq, fq.derivative()).degree() != 0)
        throw std::invalid_argument("schirokauer spec: ell ramifies in this side");
    auto fac = factor_mod(fq.monic());
    spec.epsilon = 1;
    for (const auto& [pf, mult] : fac.factors) {
        Int ld;
        mpz_ui_pow_ui(ld.get_mpz_t(), l, (unsigned long)pf.degree());
        ld -= 1;
        mpz_lcm(spec.epsilon.get_mpz_t(), spec.epsilon.get_mpz_t(), ld.get_mpz_t());
    }

    /* relative -> absolute: the side polynomial is linear in alpha, so
     * alpha = -A0(X) / A1(X) in the quotient ring */
    QuotRing R(spec.abs_poly, ell);
    const RelPoly& rel = setup.side_rel(side);
    IntPoly A0 = rel.part0(), A1 = rel.part1();
    if (A1.is_zero())
        throw std::invalid_argument("schirokauer spec: side polynomial has no alpha part");
    QuotRing::V a0 = R.zero(), a1 = R.zero();
    for (int i = 0; i <= A0.degree() && i < (int)R.deg; i++) a0[(size_t)i] = R.red(A0.coeff(i));
    for (int i = 0; i <= A1.degree() && i < (int)R.deg; i++) a1[(size_t)i] = R.red(A1.coeff(i));
    QuotRing::V alpha = R.mul(a0, R.inv(a1));
    for (auto& x : alpha) x = R.red(-x);
    spec.alpha_image = alpha;

    /* coordinate window: first `rank` coordinates of mu, shifted if the map
     * looks rank-deficient on a deterministic sample of elements */
    std::vector<std::vector<Int>> probes;
    std::vector<std::array<long long, 4>> sample_elems = {
        {1, 1, 0, 0}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}, {2, 1, 1, 0},
        {1, 2, 0, 1}, {1, 1, 1, 1}, {3, 1, 0, 2}, {2, 0, 1, 1}, {1, 3, 2, 0}};
    for (const auto& e : sample_elems) {
        if (norm_side(setup, side, e) % ell == 0) continue;
        probes.push_back(R.sm_mu(alpha, spec.epsilon, e));
    }
    int deg = spec.abs_poly.degree();
    for (int start = 0; start + spec.rank <= deg; start++) {
        std::vector<std::vector<uint64_t>> mat;
        for (const auto& mu : probes) {
            std::vector<uint64_t> row;
            for (int j = 0; j < spec.rank; j++)
                row.push_back(mpz_fdiv_ui(mu[(size_t)(start + j)].get_mpz_t(), l));
            mat.push_back(row);
        }
        int rank = 0;
        for (int col = 0; col < spec.rank && rank < (int)mat.size(); col++) {
            int pivot = -1;
            for (int i2 = rank; i2 < (int)mat.size(); i2++)
                if (mat[(size_t)i2][(size_t)col] != 0) {
                    pivot = i2;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(mat[(size_t)rank], mat[(size_t)pivot]);
            uint64_t inv = invmod_u64(mat[(size_t)rank][(size_t)col], l);
            for (int i2 = 0; i2 < (int)mat.size(); i2++) {
                if (i2 == rank || mat[(size_t)i2][(size_t)col] == 0) continue;
                uint64_t f2 = mulmod_u64(mat[(size_t)i2][(size_t)col], inv, l);
                for (int j = 0; j < spec.rank; j++)
                    mat[(size_t)i2][(size_t)j] =
                        submod_u64(mat[(size_t)i2][(size_t)j],
                                   mulmod_u64(f2, mat[(size_t)rank][(size_t)j], l), l);
            }
            rank++;
        }
        if (rank >= spec.rank) {
            spec.coord_start = start;
            return spec;
        }
    }
    spec.coord_start = 0;
    return spec;
}

std::vector<uint64_t> schirokauer_map(const PolySetup& setup, const SchirokauerSpec& spec,
                                      const std::array<long long, 4>& e) {
    if (norm_side(setup, spec.side, e) % spec.ell == 0)
        throw std::runtime_error("SM undefined, resieve");
    QuotRing R(spec.abs_poly, spec.ell);
    auto mu = R.sm_mu(spec.alpha_image, spec.epsilon, e);
    std::vector<uint64_t> out;
    for (int j = 0; j < spec.rank; j++)
        out.push_back(mpz_get_ui(mu[(size_t)(spec.coord_start + j)].get_mpz_t()));
    return out;
}

std::vector<uint64_t> SparseSystem::apply(const std::vector<uint64_t>& v) const {
    std::vector<uint64_t> out(nrows, 0);
    for (size_t i = 0; i < nrows; i++) {
        unsigned __int128 acc = 0;
        for (const auto& [col, val] : rows[i]) {
            acc += (unsigned __int128)val * v[col] % ell;
        }
        out[i] = (uint64_t)(acc % ell);
    }
    return out;
}

SparseSystem build_system(const std::vector<Relation>& rels, const std::vector<RelationSet>& sets,
                          const PolySetup& setup, const SchirokauerSpec& sm0,
                          const SchirokauerSpec& sm1, uint64_t ell) {
    if (sets.empty()) throw std::invalid_argument("build_system: empty relation list");
    SparseSystem sys;
    sys.ell = ell;
    sys.sm_rank = {sm0.rank, sm1.rank};

    std::map<uint32_t, std::array<std::vector<uint64_t>, 2>> sm_cache;
    for (const auto& rs : sets)
        for (const auto& [idx, coeff] : rs.members)
            if (!sm_cache.count(idx))
                sm_cache[idx] = {schirokauer_map(setup, sm0, rels[idx].e),
                                 schirokauer_map(setup, sm1, rels[idx].e)};

    auto combined_vals = [&](const RelationSet& rs) {
        std::map<PrimeIdeal, long> combined;
        for (const auto& [idx, coeff] : rs.members)
            for (int side = 0; side < 2; side++)
                for (const auto& [id, exp] : rels[idx].fac[(size_t)side])
                    combined[id] += (side == 0 ? 1 : -1) * coeff * exp;
        return combined;
    };

    std::map<PrimeIdeal, uint32_t> colmap;
    for (const auto& rs : sets)
        for (const auto& [id, v] : combined_vals(rs)) {
            if (v % (long)ell == 0) continue;
            if (!colmap.count(id)) colmap[id] = 0;
        }
    for (auto& [id, idx] : colmap) {
        idx = (uint32_t)sys.col_ideals.size();
        sys.col_ideals.push_back(id);
    }
    sys.ncols = sys.col_ideals.size() + (size_t)sm0.rank + (size_t)sm1.rank;

    for (const auto& rs : sets) {
        std::vector<long> smv((size_t)(sm0.rank + sm1.rank), 0);
        for (const auto& [idx, coeff] : rs.members) {
            const auto& sv = sm_cache[idx];
            for (int j = 0; j < sm0.rank; j++) smv[(size_t)j] += coeff * (long)(sv[0][(size_t)j] % ell);
            for (int j = 0; j < sm1.rank; j++)
                smv[(size_t)(sm0.rank + j)] -= coeff * (long)(sv[1][(size_t)j] % ell);
        }
        std::vector<std::pair<uint32_t, uint64_t>> row;
        for (const auto& [id, v] : combined_vals(rs)) {
            long vm = v % (long)ell;
            if (vm == 0) continue;
            if (vm < 0) vm += (long)ell;
            row.push_back({colmap.at(id), (uint64_t)vm});
        }
        for (int j = 0; j < sm0.rank + sm1.rank; j++) {
            long vm = smv[(size_t)j] % (long)ell;
            if (vm == 0) continue;
            if (vm < 0) vm += (long)ell;
            row.push_back({(uint32_t)(sys.col_ideals.size() + (size_t)j), (uint64_t)vm});
        }
        std::sort(row.begin(), row.end());
        sys.rows.push_back(std::move(row));
    }
    sys.nrows = sys.rows.size();
    return sys;
}

namespace {

// minimal LFSR (Berlekamp-Massey) over F_ell; returns C with C[0] = 1 and
// sum_i C[i] s[n-i] = 0 for all n >= L
std::vector<uint64_t> berlekamp_massey(const std::vector<uint64_t>& s, uint64_t ell) {
    std::vector<uint64_t> C{1}, B{1};
    uint64_t b = 1;
    int L = 0, m2 = 1;
    for (size_t n = 0; n < s.size(); n++) {
        unsigned __int128 acc = s[n] % ell;
        for (int i = 1; i <= L && (size_t)i <= n; i++)
            acc += (unsigned __int128)C[(size_t)i] * s[n - (size_t)i] % ell;
        uint64_t d = (uint64_t)(acc % ell);
        if (d == 0) {
            m2++;
        } else if (2 * L <= (int)n) {
            std::vector<uint64_t> T = C;
            uint64_t coef = mulmod_u64(d, invmod_u64(b, ell), ell);
            if (C.size() < B.size() + (size_t)m2) C.resize(B.size() + (size_t)m2, 0);
            for (size_t i = 0; i < B.size(); i++)
                C[i + (size_t)m2] = submod_u64(C[i + (size_t)m2], mulmod_u64(coef, B[i], ell), ell);
            L = (int)n + 1 - L;
            B = T;
            b = d;
            m2 = 1;
        } else {
            uint64_t coef = mulmod_u64(d, invmod_u64(b, ell), ell);
            if (C.size() < B.size() + (size_t)m2) C.resize(B.size() + (size_t)m2, 0);
            for (size_t i = 0; i < B.size(); i++)
                C[i + (size_t)m2] = submod_u64(C[i + (size_t)m2], mulmod_u64(coef, B[i], ell), ell);
            m2++;
        }
    }
    C.resize((size_t)L + 1, 0);
    return C;
}

}  // namespace

std::vector<uint64_t> wiedemann_nullspace(const SparseSystem& m, uint64_t seed) {
    uint64_t ell = m.ell;
    size_t n = m.ncols;
    if (n == 0) throw std::invalid_argument("wiedemann: empty system");

    Rng rng(seed ^ 0xabcdef12345ull);
    for (int attempt = 0; attempt < 5; attempt++) {
        // square projection A = U M, sparse random U (ncols x nrows)
        std::vector<std::vector<std::pair<uint32_t, uint64_t>>> U(n);
        for (size_t i = 0; i < n; i++) {
            int nnz = 4 + (int)rng.below(4);
            for (int k = 0; k < nnz; k++)
                U[i].push_back({(uint32_t)rng.below(m.nrows), 1 + rng.below(ell - 1)});
        }
        auto applyA = [&](const std::vector<uint64_t>& v) {
            std::vector<uint64_t> t = m.apply(v);
            std::vector<uint64_t> out(n, 0);
            for (size_t i = 0; i < n; i++) {
                unsigned __int128 acc = 0;
                for (const auto& [col, val] : U[i]) acc += (unsigned __int128)val * t[col] % ell;
                out[i] = (uint64_t)(acc % ell);
            }
            return out;
        };

        std::vector<uint64_t> w(n), u(n);
        for (auto& x : w) x = rng.below(ell);
        for (auto& x : u) x = rng.below(ell);

        std::vector<uint64_t> s;
        std::vector<uint64_t> cur = w;
        size_t steps = 2 * n + 4;
        for (size_t i = 0; i < steps; i++) {
            unsigned __int128 acc = 0;
            for (size_t j = 0; j < n; j++) acc += (unsigned __int128)u[j] * cur[j] % ell;
            s.push_back((uint64_t)(acc % ell));
            if (i + 1 < steps) cur = applyA(cur);
        }

        std::vector<uint64_t> C = berlekamp_massey(s, ell);
        size_t L = C.size() - 1;
        if (L == 0) continue;
        // as a polynomial in A: P(x) = sum_j P_j x^j with P_j = C[L-j]
        std::vector<uint64_t> P((size_t)L + 1);
        for (size_t j = 0; j <= L; j++) P[j] = C[L - j];
        size_t k = 0;
        while (k <= L && P[k] == 0) k++;
        if (k == 0 || k > L) continue;  // A nonsingular on this Krylov space

        // v = sum_{j >= k} P_j A^(j-k) w, so that A^k v = P(A) w = 0
        std::vector<uint64_t> v(n, 0);
        cur = w;
        for (size_t j = k; j <= L; j++) {
            if (P[j] != 0)
                for (size_t i2 = 0; i2 < n; i2++)
                    v[i2] = addmod_u64(v[i2], mulmod_u64(P[j], cur[i2], ell), ell);
            if (j < L) cur = applyA(cur);
        }
        for (size_t peel = 0; peel <= k; peel++) {
            bool zero = true;
            for (auto x : v)
                if (x != 0) zero = false;
            if (zero) break;
            std::vector<uint64_t> mv = m.apply(v);
            bool mzero = true;
            for (auto x : mv)
                if (x != 0) mzero = false;
            if (mzero) return v;  // verified: M v = 0 exactly
            v = applyA(v);
        }
    }
    throw std::runtime_error("wiedemann: full rank (no nullspace found after retries)");
}

}  // namespace extnfs
