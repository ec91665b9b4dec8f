#include "extnfs/lattice.hpp"

#include <stdexcept>

namespace extnfs {

Int Basis4::det() const {
    // cofactor expansion via 2x2 minors (fixed size)
    auto m2 = [&](int r0, int r1, int c0, int c1) -> Int {
        return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    };
    Int d(0);
    d += m2(0, 1, 0, 1) * m2(2, 3, 2, 3);
    d -= m2(0, 1, 0, 2) * m2(2, 3, 1, 3);
    d += m2(0, 1, 0, 3) * m2(2, 3, 1, 2);
    d += m2(0, 1, 1, 2) * m2(2, 3, 0, 3);
    d -= m2(0, 1, 1, 3) * m2(2, 3, 0, 2);
    d += m2(0, 1, 2, 3) * m2(2, 3, 0, 1);
    return d;
}

/* Integral LLL (Cohen, Alg. 2.6.7): works on the Gram data
 * d[i] = det(Gram of first i vectors), lambda[i][j] = d[j] * mu_{i,j}.
 * All arithmetic exact. */
std::vector<std::vector<Int>> lll_reduce_generic(std::vector<std::vector<Int>> b, long delta_num,
                                                 long delta_den) {
    const int n = (int)b.size();
    if (n == 0) return b;
    const size_t dim = b[0].size();

    auto dot = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        Int s(0);
        for (size_t i = 0; i < dim; i++) s += x[i] * y[i];
        return s;
    };

    std::vector<Int> d((size_t)n + 1);
    d[0] = 1;
    std::vector<std::vector<Int>> lam((size_t)n, std::vector<Int>((size_t)n, Int(0)));

    int kmax = 0;  // 0-based index of last vector with computed Gram data
    d[1] = dot(b[0], b[0]);
    if (d[1] == 0) throw std::invalid_argument("lll: rank-deficient input");

    auto redi = [&](int k, int l) {
        // size-reduce b_k against b_l: q = nearest integer to lambda[k][l]/d[l+1]
        Int two_lam = 2 * lam[(size_t)k][(size_t)l];
        if (abs(two_lam) <= d[(size_t)l + 1]) return;
        Int num = two_lam + d[(size_t)l + 1];
        Int den = 2 * d[(size_t)l + 1];
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        for (size_t i = 0; i < dim; i++) b[(size_t)k][i] -= q * b[(size_t)l][i];
        lam[(size_t)k][(size_t)l] -= q * d[(size_t)l + 1];
        for (int i = 0; i < l; i++) lam[(size_t)k][(size_t)i] -= q * lam[(size_t)l][(size_t)i];
    };

    auto swapi = [&](int k) {
        std::swap(b[(size_t)k], b[(size_t)k - 1]);
        for (int j = 0; j <= k - 2; j++) std::swap(lam[(size_t)k][(size_t)j], lam[(size_t)k - 1][(size_t)j]);
        Int lamk = lam[(size_t)k][(size_t)k - 1];
        Int bb = (d[(size_t)k - 1] * d[(size_t)k + 1] + lamk * lamk) / d[(size_t)k];
        for (int i = k + 1; i <= kmax; i++) {
            Int t = lam[(size_t)i][(size_t)k];
            lam[(size_t)i][(size_t)k] =
                (d[(size_t)k + 1] * lam[(size_t)i][(size_t)k - 1] - lamk * t) / d[(size_t)k];
            lam[(size_t)i][(size_t)k - 1] = (bb * t + lamk * lam[(size_t)i][(size_t)k]) / d[(size_t)k + 1];
        }
        d[(size_t)k] = bb;
    };

    int k = 1;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 0; j <= k; j++) {
                Int u = dot(b[(size_t)k], b[(size_t)j]);
                for (int i = 0; i < j; i++)
                    u = (d[(size_t)i + 1] * u - lam[(size_t)k][(size_t)i] * lam[(size_t)j][(size_t)i]) /
                        d[(size_t)i];
                if (j < k)
                    lam[(size_t)k][(size_t)j] = u;
                else {
                    d[(size_t)k + 1] = u;
                    if (u == 0) throw std::invalid_argument("lll: rank-deficient input");
                }
            }
        }
        for (;;) {
            redi(k, k - 1);
            // swap when delta*d[k]^2 - lambda^2 > d[k+1]*d[k-1]
            Int lhs = delta_num * d[(size_t)k] * d[(size_t)k] -
                      delta_den * lam[(size_t)k][(size_t)k - 1] * lam[(size_t)k][(size_t)k - 1];
            Int rhs = delta_den * d[(size_t)k + 1] * d[(size_t)k - 1];
            if (lhs > rhs) {
                swapi(k);
                k = std::max(1, k - 1);
                if (k > kmax) break;  // re-enter Gram update
            } else {
                for (int l = k - 2; l >= 0; l--) redi(k, l);
                k++;
                break;
            }
        }
    }
    return b;
}

Basis4 lll_reduce(const Basis4& in) {
    std::vector<std::vector<Int>> cols(4, std::vector<Int>(4));
    for (int c = 0; c < 4; c++)
        for (int r = 0; r < 4; r++) cols[(size_t)c][(size_t)r] = in.at(r, c);
    auto red = lll_reduce_generic(std::move(cols));
    Basis4 out;
    for (int c = 0; c < 4; c++)
        for (int r = 0; r < 4; r++) out.at(r, c) = red[(size_t)c][(size_t)r];
    return out;
}

std::array<Int, 4> cross4(const std::array<Int, 4>& u, const std::array<Int, 4>& v,
                          const std::array<Int, 4>& w) {
    const Int &u1 = u[0], &u2 = u[1], &u3 = u[2], &u4 = u[3];
    const Int &v1 = v[0], &v2 = v[1], &v3 = v[2], &v4 = v[3];
    const Int &w1 = w[0], &w2 = w[1], &w3 = w[2], &w4 = w[3];
    std::array<Int, 4> n;
    n[0] = (-w4 * v3 + w3 * v4) * u2 + (w4 * v2 - w2 * v4) * u3 + (-w3 * v2 + w2 * v3) * u4;
    n[1] = (w4 * v3 - w3 * v4) * u1 + (-w4 * v1 + w1 * v4) * u3 + (w3 * v1 - w1 * v3) * u4;
    n[2] = (-w4 * v2 + w2 * v4) * u1 + (w4 * v1 - w1 * v4) * u2 + (-w2 * v1 + w1 * v2) * u4;
    n[3] = (w3 * v2 - w2 * v3) * u1 + (-w3 * v1 + w1 * v3) * u2 + (w2 * v1 - w1 * v2) * u3;
    return n;
}

std::array<long long, 4> cross4_i64(const std::array<long long, 4>& u,
                                    const std::array<long long, 4>& v,
                                    const std::array<long long, 4>& w) {
    std::array<Int, 4> U{Int((long)u[0]), Int((long)u[1]), Int((long)u[2]), Int((long)u[3])};
    std::array<Int, 4> V{Int((long)v[0]), Int((long)v[1]), Int((long)v[2]), Int((long)v[3])};
    std::array<Int, 4> W{Int((long)w[0]), Int((long)w[1]), Int((long)w[2]), Int((long)w[3])};
    auto n = cross4(U, V, W);
    std::array<long long, 4> out;
    for (int i = 0; i < 4; i++) {
        if (!n[(size_t)i].fits_slong_p()) throw std::overflow_error("cross4_i64 overflow");
        out[(size_t)i] = n[(size_t)i].get_si();
    }
    return out;
}

}  // namespace extnfs
