#include "extnfs/sieve4d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/smooth.hpp"

namespace extnfs {

using i128 = __int128;

namespace {

long long to_i64(const Int& v, const char* what) {
    if (!v.fits_slong_p()) throw std::overflow_error(std::string(what) + ": entry too large");
    return v.get_si();
}

std::array<long long, 4> column_i64(const Basis4& b, int col, const char* what) {
    std::array<long long, 4> out;
    for (int row = 0; row < 4; row++) out[(size_t)row] = to_i64(b.at(row, col), what);
    return out;
}

// |entries| <= 2^18 and box half-widths <= 2^20 keep every functional well
// inside __int128
constexpr long long kMaxEntry = 1ll << 18;
constexpr long long kMaxHalf = 1ll << 20;

void check_enum_ranges(const Basis4& b, const Orthotope& box) {
    for (const auto& v : b.m)
        if (abs(v) > Int((long)kMaxEntry))
            throw std::overflow_error("enumerate_box: basis entry exceeds 2^18");
    for (auto h : box.half) {
        if (h < 1) throw std::invalid_argument("enumerate_box: box half-width must be >= 1");
        if (h > kMaxHalf) throw std::overflow_error("enumerate_box: box half-width exceeds 2^20");
    }
}

i128 dot4(const std::array<i128, 4>& a, const std::array<long long, 4>& b) {
    i128 s = 0;
    for (int i = 0; i < 4; i++) s += a[(size_t)i] * b[(size_t)i];
    return s;
}

std::array<i128, 4> cross4_i128(const std::array<long long, 4>& u,
                                const std::array<long long, 4>& v,
                                const std::array<i128, 4>& w) {
    const i128 u1 = u[0], u2 = u[1], u3 = u[2], u4 = u[3];
    const i128 v1 = v[0], v2 = v[1], v3 = v[2], v4 = v[3];
    const i128 w1 = w[0], w2 = w[1], w3 = w[2], w4 = w[3];
    return {(-w4 * v3 + w3 * v4) * u2 + (w4 * v2 - w2 * v4) * u3 + (-w3 * v2 + w2 * v3) * u4,
            (w4 * v3 - w3 * v4) * u1 + (-w4 * v1 + w1 * v4) * u3 + (w3 * v1 - w1 * v3) * u4,
            (-w4 * v2 + w2 * v4) * u1 + (w4 * v1 - w1 * v4) * u2 + (-w2 * v1 + w1 * v2) * u4,
            (w3 * v2 - w2 * v3) * u1 + (-w3 * v1 + w1 * v3) * u2 + (w2 * v1 - w1 * v2) * u3};
}

i128 floor_div(i128 a, i128 b) {  // b != 0
    i128 q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q--;
    return q;
}
i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

// functional range of x -> dot(n, x) over the box corner hull
void functional_range(const std::array<i128, 4>& n, const Orthotope& box, i128& lo, i128& hi) {
    lo = hi = 0;
    for (int i = 0; i < 4; i++) {
        i128 at_lo = n[(size_t)i] * (i128)(-box.half[(size_t)i]);
        i128 at_hi = n[(size_t)i] * (i128)(box.half[(size_t)i] - 1);
        lo += std::min(at_lo, at_hi);
        hi += std::max(at_lo, at_hi);
    }
}

/* The eight half-space constraints a*U[i] + b*V[i] <= C[i] of a plane
 * R + a u + b v against the box; Fourier-Motzkin bounds for b, exact
 * interval for a at fixed b. */
struct PlaneSystem {
    i128 U[8], V[8], C[8];

    PlaneSystem(const std::array<long long, 4>& u, const std::array<long long, 4>& v,
                const std::array<i128, 4>& R, const Orthotope& box) {
        for (int i = 0; i < 4; i++) {
            U[i] = u[(size_t)i];
            V[i] = v[(size_t)i];
            C[i] = (i128)(box.half[(size_t)i] - 1) - R[(size_t)i];
            U[i + 4] = -U[i];
            V[i + 4] = -V[i];
            C[i + 4] = (i128)box.half[(size_t)i] + R[(size_t)i];
        }
    }

    // real-relaxation bounds on b; false when already infeasible
    bool b_bounds(i128& blo, i128& bhi) const {
        bool has_lo = false, has_hi = false;
        blo = 0;
        bhi = 0;
        for (int i = 0; i < 8; i++) {
            if (U[i] != 0) continue;
            if (V[i] > 0) {
                i128 t = floor_div(C[i], V[i]);
                if (!has_hi || t < bhi) bhi = t;
                has_hi = true;
            } else if (V[i] < 0) {
                i128 t = ceil_div(C[i], V[i]);
                if (!has_lo || t > blo) blo = t;
                has_lo = true;
            } else if (C[i] < 0) {
                return false;
            }
        }
        for (int i = 0; i < 8; i++) {
            if (U[i] >= 0) continue;
            for (int j = 0; j < 8; j++) {
                if (U[j] <= 0) continue;
                if ((i > j ? i - j : j - i) == 4) continue;  // negated pair, no information
                // eliminate a with positive multipliers U[j], -U[i]
                i128 D = U[j] * V[i] - U[i] * V[j];
                i128 rhs = U[j] * C[i] - U[i] * C[j];
                if (D > 0) {
                    i128 t = floor_div(rhs, D);
                    if (!has_hi || t < bhi) bhi = t;
                    has_hi = true;
                } else if (D < 0) {
                    i128 t = ceil_div(rhs, D);
                    if (!has_lo || t > blo) blo = t;
                    has_lo = true;
                } else if (rhs < 0) {
                    return false;
                }
            }
        }
        if (!has_lo || !has_hi) return false;  // u, v independent => box bounds both
        return blo <= bhi;
    }

    bool a_interval(i128 b, i128& alo, i128& ahi) const {
        bool has_lo = false, has_hi = false;
        alo = 0;
        ahi = 0;
        for (int i = 0; i < 8; i++) {
            i128 rhs = C[i] - b * V[i];
            if (U[i] == 0) {
                if (rhs < 0) return false;
            } else if (U[i] > 0) {
                i128 t = floor_div(rhs, U[i]);
                if (!has_hi || t < ahi) ahi = t;
                has_hi = true;
            } else {
                i128 t = ceil_div(rhs, U[i]);
                if (!has_lo || t > alo) alo = t;
                has_lo = true;
            }
        }
        if (!has_lo || !has_hi) return false;
        return alo <= ahi;
    }
};

}  // namespace

bool subspace_intersects_box(const std::array<long long, 4>& N, const std::array<long long, 4>& V,
                             const Orthotope& box) {
    if (N[0] == 0 && N[1] == 0 && N[2] == 0 && N[3] == 0)
        throw std::invalid_argument("subspace_intersects_box: zero normal");
    i128 d = 0;
    for (int i = 0; i < 4; i++) d += (i128)N[(size_t)i] * V[(size_t)i];
    bool pos = false, neg = false;
    for (int corner = 0; corner < 16; corner++) {
        i128 s = -d;
        for (int i = 0; i < 4; i++) {
            long long coord = (corner >> i) & 1 ? box.half[(size_t)i] - 1 : -box.half[(size_t)i];
            s += (i128)N[(size_t)i] * coord;
        }
        if (s == 0) return true;  // corner on the subspace
        (s > 0 ? pos : neg) = true;
        if (pos && neg) return true;
    }
    return false;
}

std::pair<long long, long long> ilp_start_point(const std::array<long long, 4>& u,
                                                const std::array<long long, 4>& v,
                                                const std::array<long long, 4>& R,
                                                const Orthotope& box) {
    std::array<i128, 4> R128{R[0], R[1], R[2], R[3]};
    PlaneSystem sys(u, v, R128, box);
    i128 blo, bhi;
    if (sys.b_bounds(blo, bhi)) {
        for (i128 b = bhi; b >= blo; b--) {
            i128 alo, ahi;
            if (sys.a_interval(b, alo, ahi)) return {(long long)ahi, (long long)b};
        }
    }
    throw std::runtime_error("ilp_start_point: contract violation (plane misses box)");
}

void enumerate_box(const Basis4& reduced, const Orthotope& box,
                   const std::function<void(const std::array<long long, 4>&,
                                            const std::array<long long, 4>&)>& emit) {
    check_enum_ranges(reduced, box);
    auto u = column_i64(reduced, 0, "enumerate_box");
    auto v = column_i64(reduced, 1, "enumerate_box");
    auto w = column_i64(reduced, 2, "enumerate_box");
    auto t = column_i64(reduced, 3, "enumerate_box");

    auto N64 = cross4_i64(u, v, w);
    std::array<i128, 4> N{N64[0], N64[1], N64[2], N64[3]};
    i128 D = dot4(N, t);
    if (D == 0) throw std::invalid_argument("enumerate_box: dependent basis columns");
    std::array<i128, 4> M = cross4_i128(u, v, N);
    i128 E = 0;
    for (int i = 0; i < 4; i++) E += M[(size_t)i] * w[(size_t)i];
    if (E == 0) throw std::invalid_argument("enumerate_box: dependent basis columns");

    // hyperspace walk: V_T = l * t, N.(V_T) = l*D must stay within the box
    // functional range; start at l = 0 (origin always inside)
    std::array<long long, 4> zerov{0, 0, 0, 0};
    long long l_lo = 0;
    while (true) {
        std::array<long long, 4> vt{t[0] * (l_lo - 1), t[1] * (l_lo - 1), t[2] * (l_lo - 1),
                                    t[3] * (l_lo - 1)};
        if (!subspace_intersects_box(N64, vt, box)) break;
        l_lo--;
    }
    (void)zerov;

    i128 mlo, mhi;
    functional_range(M, box, mlo, mhi);

    for (long long l = l_lo;; l++) {
        std::array<long long, 4> vt{t[0] * l, t[1] * l, t[2] * l, t[3] * l};
        if (!subspace_intersects_box(N64, vt, box)) break;

        // plane range along w inside this hyperspace: M.(V_T + k w) in [mlo, mhi]
        i128 mv = 0;
        for (int i = 0; i < 4; i++) mv += M[(size_t)i] * vt[(size_t)i];
        i128 klo, khi;
        if (E > 0) {
            klo = ceil_div(mlo - mv, E);
            khi = floor_div(mhi - mv, E);
        } else {
            klo = ceil_div(mhi - mv, E);
            khi = floor_div(mlo - mv, E);
        }
        for (i128 k = klo; k <= khi; k++) {
            std::array<i128, 4> R;
            for (int i = 0; i < 4; i++) R[(size_t)i] = (i128)vt[(size_t)i] + k * w[(size_t)i];
            PlaneSystem sys(u, v, R, box);
            i128 blo, bhi;
            if (!sys.b_bounds(blo, bhi)) continue;
            for (i128 b = bhi; b >= blo; b--) {
                i128 alo, ahi;
                if (!sys.a_interval(b, alo, ahi)) continue;
                for (i128 a = ahi; a >= alo; a--) {
                    std::array<long long, 4> x, z;
                    for (int i = 0; i < 4; i++)
                        x[(size_t)i] =
                            (long long)(R[(size_t)i] + a * u[(size_t)i] + b * v[(size_t)i]);
                    z = {(long long)a, (long long)b, (long long)k, (long long)l};
                    emit(z, x);
                }
            }
        }
    }
}

std::vector<std::array<long long, 4>> enumerate_box_points(const Basis4& reduced,
                                                           const Orthotope& box) {
    std::vector<std::array<long long, 4>> out;
    enumerate_box(reduced, box,
                  [&](const std::array<long long, 4>&, const std::array<long long, 4>& x) {
                      out.push_back(x);
                  });
    return out;
}

SpecialQ build_special_q_lattice(const PrimeIdeal& ideal, const PolySetup& setup,
                                 bool paper_t2_matrix) {
    SpecialQ sq;
    sq.ideal = ideal;
    Basis4& L = sq.raw_basis;
    Int q((unsigned long)ideal.q);

    switch (ideal.kind) {
        case IdealKind::deg1:
            // columns (q,0,0,0), (-r,1,0,0), (-R,0,1,0), (0,-R,0,1)
            L.at(0, 0) = q;
            L.at(0, 1) = -Int((unsigned long)ideal.r);
            L.at(1, 1) = 1;
            L.at(0, 2) = -Int((unsigned long)ideal.R);
            L.at(2, 2) = 1;
            L.at(1, 3) = -Int((unsigned long)ideal.R);
            L.at(3, 3) = 1;
            break;
        case IdealKind::deg2_t1:
            L.at(0, 0) = q;
            L.at(0, 1) = -Int((unsigned long)ideal.r);
            L.at(1, 1) = 1;
            L.at(2, 2) = q;
            L.at(2, 3) = -Int((unsigned long)ideal.r);
            L.at(3, 3) = 1;
            break;
        case IdealKind::deg2_t2: {
            if (paper_t2_matrix) {
                // the printed matrix: columns (q,0,0,0),(0,q,0,0),(a0,a1,1,0),(0,a0,a1,1)
                L.at(0, 0) = q;
                L.at(1, 1) = q;
                L.at(0, 2) = Int((unsigned long)ideal.a0);
                L.at(1, 2) = Int((unsigned long)ideal.a1);
                L.at(2, 2) = 1;
                L.at(1, 3) = Int((unsigned long)ideal.a0);
                L.at(2, 3) = Int((unsigned long)ideal.a1);
                L.at(3, 3) = 1;
            } else {
                /* kernel of (a,b,c,d) -> (a+b alpha) + (c+d alpha) rho mod (q, h),
                 * rho = -(a0 + a1 alpha): the two F_q conditions
                 *   a + rho0 c - h0 rho1 d = 0
                 *   b + rho1 c + (rho0 - h1 rho1) d = 0 */
                uint64_t qq = ideal.q;
                uint64_t h1 = mpz_fdiv_ui(setup.h.coeff(1).get_mpz_t(), qq);
                uint64_t h0 = mpz_fdiv_ui(setup.h.coeff(0).get_mpz_t(), qq);
                uint64_t rho0 = submod_u64(0, ideal.a0, qq);
                uint64_t rho1 = submod_u64(0, ideal.a1, qq);
                uint64_t m02 = rho0;
                uint64_t m03 = submod_u64(0, mulmod_u64(h0, rho1, qq), qq);
                uint64_t m12 = rho1;
                uint64_t m13 = submod_u64(rho0, mulmod_u64(h1, rho1, qq), qq);
                L.at(0, 0) = q;
                L.at(1, 1) = q;
                L.at(0, 2) = -Int((unsigned long)m02);
                L.at(1, 2) = -Int((unsigned long)m12);
                L.at(2, 2) = 1;
                L.at(0, 3) = -Int((unsigned long)m03);
                L.at(1, 3) = -Int((unsigned long)m13);
                L.at(3, 3) = 1;
            }
            break;
        }
        case IdealKind::deg4:
            for (int i = 0; i < 4; i++) L.at(i, i) = q;
            break;
        default:
            throw std::invalid_argument("build_special_q_lattice: unsupported kind");
    }
    sq.reduced_basis = lll_reduce(L);
    return sq;
}

void sign_normalize(std::array<long long, 4>& e) {
    for (int i = 0; i < 4; i++) {
        if (e[(size_t)i] > 0) return;
        if (e[(size_t)i] < 0) {
            for (int j = 0; j < 4; j++) e[(size_t)j] = -e[(size_t)j];
            return;
        }
    }
}

std::string Relation::str() const {
    std::ostringstream os;
    os << e[0] << "," << e[1] << "," << e[2] << "," << e[3];
    for (int side = 0; side < 2; side++) {
        os << ":";
        bool first = true;
        for (const auto& [id, exp] : fac[side]) {
            if (!first) os << ",";
            first = false;
            os << std::hex;
            switch (id.kind) {
                case IdealKind::deg1: os << id.q << "." << id.r << "." << id.R; break;
                case IdealKind::deg2_t1: os << id.q << ".t1." << id.r; break;
                case IdealKind::deg2_t2: os << id.q << ".t2." << id.a0 << "." << id.a1; break;
                case IdealKind::deg4: os << id.q << ".i"; break;
            }
            os << std::dec << "^" << exp;
        }
    }
    return os.str();
}

Relation Relation::parse(const std::string& s) {
    Relation rel;
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char ch : s) {
            if (ch == ':') {
                parts.push_back(cur);
                cur.clear();
            } else
                cur += ch;
        }
        parts.push_back(cur);
    }
    if (parts.size() != 3) throw std::invalid_argument("relation parse: expected 3 fields");
    {
        std::istringstream is(parts[0]);
        char comma;
        is >> rel.e[0] >> comma >> rel.e[1] >> comma >> rel.e[2] >> comma >> rel.e[3];
        if (is.fail()) throw std::invalid_argument("relation parse: bad coordinates");
    }
    for (int side = 0; side < 2; side++) {
        const std::string& list = parts[(size_t)side + 1];
        size_t pos = 0;
        while (pos < list.size()) {
            size_t end = list.find(',', pos);
            if (end == std::string::npos) end = list.size();
            std::string tok = list.substr(pos, end - pos);
            pos = end + 1;
            if (tok.empty()) continue;
            int exp = 1;
            size_t caret = tok.find('^');
            if (caret != std::string::npos) {
                exp = std::stoi(tok.substr(caret + 1));
                tok = tok.substr(0, caret);
            }
            std::vector<std::string> bits;
            size_t p2 = 0;
            while (p2 < tok.size()) {
                size_t e2 = tok.find('.', p2);
                if (e2 == std::string::npos) e2 = tok.size();
                bits.push_back(tok.substr(p2, e2 - p2));
                p2 = e2 + 1;
            }
            PrimeIdeal id;
            id.side = side;
            id.q = std::stoull(bits.at(0), nullptr, 16);
            if (bits.size() == 3 && bits[1] == "t1") {
                id.kind = IdealKind::deg2_t1;
                id.degree = 2;  // refined against the factor base on load
                id.r = std::stoull(bits[2], nullptr, 16);
            } else if (bits.size() == 4 && bits[1] == "t2") {
                id.kind = IdealKind::deg2_t2;
                id.degree = 2;
                id.a0 = std::stoull(bits[2], nullptr, 16);
                id.a1 = std::stoull(bits[3], nullptr, 16);
            } else if (bits.size() == 2 && bits[1] == "i") {
                id.kind = IdealKind::deg4;
                id.degree = 4;
            } else if (bits.size() == 3) {
                id.kind = IdealKind::deg1;
                id.degree = 1;
                id.r = std::stoull(bits[1], nullptr, 16);
                id.R = std::stoull(bits[2], nullptr, 16);
            } else {
                throw std::invalid_argument("relation parse: bad ideal token " + tok);
            }
            rel.fac[side].push_back({id, exp});
        }
    }
    return rel;
}

std::optional<Relation> assemble_relation(const PolySetup& setup, const IdealClassifier& cls,
                                          const std::array<long long, 4>& e_in,
                                          const std::array<uint64_t, 2>& bound,
                                          uint64_t rho_budget) {
    std::array<long long, 4> e = e_in;
    long long g = 0;
    for (long long x : e) g = gcd_i64(g, x);
    if (g != 1) return std::nullopt;
    sign_normalize(e);

    Relation rel;
    rel.e = e;
    for (int side = 0; side < 2; side++) {
        Int n = norm_side(setup, side, e);
        if (n == 0) return std::nullopt;
        auto sm = smooth_factor(n, Int((unsigned long)bound[(size_t)side]), rho_budget);
        if (!sm.accepted()) return std::nullopt;
        for (const auto& [p, v] : sm.factored->factors) {
            if (!p.fits_ulong_p()) return std::nullopt;
            uint64_t q = mpz_get_ui(p.get_mpz_t());
            auto attr = attribute_valuations(cls, side, q, v, e);
            if (!attr) return std::nullopt;
            for (auto& [id, vv] : attr->vals) rel.fac[(size_t)side].push_back({id, vv});
        }
    }
    return rel;
}

std::vector<Relation> sieve_special_q(const PolySetup& setup, const IdealClassifier& cls,
                                      const SpecialQ& sq, const SieveParams& params,
                                      SieveStats* stats) {
    // degree gate: only degree-1 special-q unless the reduced basis is tiny
    if (sq.ideal.kind != IdealKind::deg1) {
        if (sq.ideal.kind == IdealKind::deg4 || !params.allow_deg2_special_q)
            throw std::invalid_argument("sieve_special_q: only degree-1 special-q are sieved");
        long long minb = *std::min_element(params.box.half.begin(), params.box.half.end());
        Int maxent(0);
        for (const auto& v : sq.reduced_basis.m) maxent = std::max(maxent, Int(abs(v)));
        if (maxent > Int((long)(minb / 4)))
            throw std::invalid_argument("sieve_special_q: degree-2 basis not small enough");
    }
    if (params.box.point_count() > params.max_box_points)
        throw std::invalid_argument("sieve_special_q: box memory budget exceeded");

    SieveStats local;
    SieveStats& st = stats ? *stats : local;

    // enumerate the special-q lattice once; points are candidates universe
    std::vector<std::array<long long, 4>> points = enumerate_box_points(sq.reduced_basis, params.box);
    st.lattice_points = points.size();

    bool direct = points.size() <= params.direct_cofactor_points;

    // thresholds: median norm bits over <= 256 deterministic sample points
    std::array<int, 2> threshold{};
    if (!direct) {
        std::array<std::vector<int>, 2> bits;
        size_t count = 0;
        for (const auto& x : points) {
            if (count >= 256) break;
            if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) continue;
            for (int side = 0; side < 2; side++) {
                Int n = norm_side(setup, side, x);
                if (n != 0)
                    bits[(size_t)side].push_back((int)mpz_sizeinbase(n.get_mpz_t(), 2));
            }
            count++;
        }
        for (int side = 0; side < 2; side++) {
            if (bits[(size_t)side].empty()) {
                threshold[(size_t)side] = 0;
                continue;
            }
            auto& v = bits[(size_t)side];
            std::sort(v.begin(), v.end());
            int median = v[v.size() / 2];
            threshold[(size_t)side] = std::max(0, median - params.threshold_slack);
        }
    }

    // list/sort accumulation of (packed index, log weight) hits per side
    std::array<std::vector<std::pair<uint64_t, uint8_t>>, 2> hits;
    std::array<int, 2> base_weight{0, 0};

    for (int side = 0; side < 2 && !direct; side++) {
        for (uint64_t p : primes_up_to(params.sieve_bound)) {
            if (p == sq.ideal.q) continue;
            const auto& c = cls.classify(side, p);
            if (c.status != QStatus::ok) continue;
            uint8_t logw = (uint8_t)std::lround(std::log2((double)p));
            for (const auto& id : c.ideals) {
                if (id.kind != IdealKind::deg1) continue;
                // membership functional phi(x) = x0 + r x1 + R x2 + rR x3 mod p
                uint64_t phi[4] = {1 % p, id.r % p, id.R % p, mulmod_u64(id.r, id.R, p)};
                uint64_t psi[4];
                bool all_zero = true;
                for (int j = 0; j < 4; j++) {
                    uint64_t acc = 0;
                    for (int i = 0; i < 4; i++) {
                        const Int& entry = sq.reduced_basis.at(i, j);
                        uint64_t em = mpz_fdiv_ui(entry.get_mpz_t(), p);
                        acc = addmod_u64(acc, mulmod_u64(phi[i], em, p), p);
                    }
                    psi[j] = acc;
                    if (acc != 0) all_zero = false;
                }
                if (all_zero) {  // whole special-q lattice is divisible by this ideal
                    base_weight[(size_t)side] += logw;
                    continue;
                }
                int pivot = 0;
                while (psi[pivot] == 0) pivot++;
                uint64_t pinv = invmod_u64(psi[pivot], p);

                // z-space sublattice columns, then back to xyzt coordinates
                Basis4 zbasis;
                int colidx = 0;
                for (int j = 0; j < 4; j++) {
                    if (j == pivot) continue;
                    uint64_t coef = mulmod_u64(psi[j], pinv, p);
                    zbasis.at(j, colidx) = 1;
                    zbasis.at(pivot, colidx) = -Int((unsigned long)coef);
                    colidx++;
                }
                zbasis.at(pivot, 3) = (long)p;

                Basis4 xbasis;
                for (int col = 0; col < 4; col++)
                    for (int row = 0; row < 4; row++) {
                        Int acc(0);
                        for (int k2 = 0; k2 < 4; k2++)
                            acc += sq.reduced_basis.at(row, k2) * zbasis.at(k2, col);
                        xbasis.at(row, col) = acc;
                    }
                Basis4 xred = lll_reduce(xbasis);
                enumerate_box(xred, params.box,
                              [&](const std::array<long long, 4>&,
                                  const std::array<long long, 4>& x) {
                                  hits[(size_t)side].emplace_back(params.box.pack(x), logw);
                              });
            }
        }
    }

    // sum weight runs per packed index
    std::array<std::map<uint64_t, int>, 2> acc;
    for (int side = 0; side < 2; side++) {
        auto& h = hits[(size_t)side];
        std::sort(h.begin(), h.end());
        for (size_t i = 0; i < h.size();) {
            size_t j = i;
            int sum = 0;
            while (j < h.size() && h[j].first == h[i].first) {
                sum += h[j].second;
                j++;
            }
            acc[(size_t)side][h[i].first] = sum;
            i = j;
        }
    }

    std::vector<Relation> out;
    std::set<std::array<long long, 4>> seen;
    for (const auto& x : points) {
        if (x[0] == 0 && x[1] == 0 && x[2] == 0 && x[3] == 0) continue;
        long long g = 0;
        for (long long c : x) g = gcd_i64(g, c);
        if (g != 1) continue;
        uint64_t idx = params.box.pack(x);
        bool pass = true;
        for (int side = 0; side < 2 && pass; side++) {
            int w = base_weight[(size_t)side];
            auto it = acc[(size_t)side].find(idx);
            if (it != acc[(size_t)side].end()) w += it->second;
            if (w < threshold[(size_t)side]) pass = false;
        }
        if (!pass) continue;
        st.candidates++;

        auto rel = assemble_relation(setup, cls, x,
                                     {params.lpb[0], params.lpb[1]}, params.rho_budget);
        if (!rel) {
            st.discarded_attribution++;
            continue;
        }
        // the special-q ideal must appear on its own side
        bool found = false;
        for (const auto& [id, exp] : rel->fac[(size_t)sq.ideal.side])
            if (id == sq.ideal) found = true;
        if (!found) continue;
        rel->special = sq.ideal;
        if (seen.insert(rel->e).second) {
            out.push_back(*rel);
            st.relations++;
        }
    }
    return out;
}

}  // namespace extnfs
