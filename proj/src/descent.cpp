#include "extnfs/descent.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "extnfs/arith.hpp"
#include "extnfs/norms.hpp"
#include "extnfs/rng.hpp"

namespace extnfs {

namespace {

std::string ideal_tag(const PrimeIdeal& id) {
    std::ostringstream os;
    os << "side" << id.side << " q=" << id.q;
    if (id.kind == IdealKind::deg1) os << " r=" << id.r << " R=" << id.R;
    return os.str();
}

// column-style Hermite form of a 4 x n generator matrix (columns generate)
Basis4 hnf_basis(std::vector<std::array<Int, 4>> gens) {
    Basis4 out;
    int col = 0;
    for (int row = 0; row < 4; row++) {
        // gcd-combine all columns with nonzero entry in this row into one
        int pivot = -1;
        for (size_t j = (size_t)col; j < gens.size(); j++) {
            if (gens[j][(size_t)row] != 0) {
                pivot = (int)j;
                break;
            }
        }
        if (pivot < 0) throw std::invalid_argument("hnf: rank-deficient generators");
        std::swap(gens[(size_t)col], gens[(size_t)pivot]);
        for (size_t j = (size_t)col + 1; j < gens.size(); j++) {
            while (gens[j][(size_t)row] != 0) {
                Int a = gens[(size_t)col][(size_t)row], b = gens[j][(size_t)row];
                Int q = a / b;  // truncated division keeps values shrinking
                for (int r2 = 0; r2 < 4; r2++)
                    gens[(size_t)col][(size_t)r2] -= q * gens[j][(size_t)r2];
                std::swap(gens[(size_t)col], gens[j]);
            }
        }
        if (gens[(size_t)col][(size_t)row] < 0)
            for (int r2 = 0; r2 < 4; r2++) gens[(size_t)col][(size_t)r2] = -gens[(size_t)col][(size_t)r2];
        col++;
        if (col == 4) break;
    }
    for (int c = 0; c < 4; c++)
        for (int r2 = 0; r2 < 4; r2++) out.at(r2, c) = gens[(size_t)c][(size_t)r2];
    return out;
}

std::optional<std::array<long long, 4>> normalize_candidate(const std::array<Int, 4>& v) {
    std::array<long long, 4> e;
    Int g(0);
    for (int i = 0; i < 4; i++) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[(size_t)i].get_mpz_t());
    if (g == 0) return std::nullopt;
    for (int i = 0; i < 4; i++) {
        Int t = v[(size_t)i] / g;
        if (!t.fits_slong_p()) return std::nullopt;
        e[(size_t)i] = t.get_si();
    }
    sign_normalize(e);
    return e;
}

/* Children of a witness relation: ideals without a database entry. */
std::vector<PrimeIdeal> witness_children(const Relation& rel, const LogDatabase& db) {
    std::vector<PrimeIdeal> out;
    for (int side = 0; side < 2; side++)
        for (const auto& [id, exp] : rel.fac[(size_t)side])
            if (!db.lookup(id)) out.push_back(id);
    return out;
}

/* Solve the witness for `target` once every other ideal is known. */
void solve_witness(LogDatabase& db, const Relation& rel, const PrimeIdeal& target,
                   const PolySetup& setup, const SchirokauerSpec& sm0,
                   const SchirokauerSpec& sm1) {
    uint64_t ell = db.ell;
    std::array<std::vector<uint64_t>, 2> sm{schirokauer_map(setup, sm0, rel.e),
                                            schirokauer_map(setup, sm1, rel.e)};
    uint64_t known = 0;
    long coeff = 0;
    for (int side = 0; side < 2; side++) {
        long sgn = side == 0 ? 1 : -1;
        for (const auto& [id, exp] : rel.fac[(size_t)side]) {
            if (id == target) {
                coeff += sgn * exp;
                continue;
            }
            auto vl = db.lookup(id);
            if (!vl) throw std::logic_error("solve_witness: unresolved child");
            uint64_t term = mulmod_u64((uint64_t)exp % ell, *vl, ell);
            known = sgn > 0 ? addmod_u64(known, term, ell) : submod_u64(known, term, ell);
        }
        for (size_t j = 0; j < sm[(size_t)side].size(); j++) {
            uint64_t term = mulmod_u64(sm[(size_t)side][j] % ell, db.sm_vlogs[(size_t)side][j], ell);
            known = sgn > 0 ? addmod_u64(known, term, ell) : submod_u64(known, term, ell);
        }
    }
    long c = coeff % (long)ell;
    if (c < 0) c += (long)ell;
    if (c == 0) throw std::runtime_error("solve_witness: target coefficient vanished");
    uint64_t vlog = mulmod_u64(submod_u64(0, known, ell), invmod_u64((uint64_t)c, ell), ell);
    db.ideal_vlogs[target] = vlog;
}

/* Assemble a relation for a descent candidate: side norms factored with a
 * generous bound, every prime attributed; accepted only when all
 * out-of-database ideals are degree-1 with prime below the target bound
 * (the special-q itself excepted). */
std::optional<Relation> descent_candidate(const PolySetup& setup, const IdealClassifier& cls,
                                          const LogDatabase& db,
                                          const std::array<long long, 4>& e,
                                          const PrimeIdeal* forced, uint64_t target_bound,
                                          uint64_t rho_budget) {
    Relation rel;
    rel.e = e;
    for (int side = 0; side < 2; side++) {
        Int n = norm_side(setup, side, e);
        if (n == 0) return std::nullopt;
        // cap: the forced ideal may exceed the candidate bound on its side
        Int cap((unsigned long)target_bound);
        if (forced && forced->side == side) {
            Int fq((unsigned long)forced->q);
            if (fq > cap) cap = fq;
        }
        auto sm = smooth_factor(n, cap, rho_budget);
        if (!sm.accepted()) return std::nullopt;
        for (const auto& [pz, v] : sm.factored->factors) {
            if (!pz.fits_ulong_p()) return std::nullopt;
            uint64_t q = mpz_get_ui(pz.get_mpz_t());
            auto attr = attribute_valuations(cls, side, q, v, e);
            if (!attr) return std::nullopt;
            for (const auto& [id, vv] : attr->vals) {
                bool is_forced = forced && id == *forced;
                if (!db.lookup(id) && !is_forced) {
                    // must be descendable: degree-1 and within the bound
                    if (id.kind != IdealKind::deg1 || id.q > target_bound) return std::nullopt;
                }
                rel.fac[(size_t)side].push_back({id, vv});
            }
        }
    }
    if (forced) {
        bool found = false;
        for (const auto& [id, exp] : rel.fac[(size_t)forced->side])
            if (id == *forced) found = true;
        if (!found) return std::nullopt;
        rel.special = *forced;
    }
    return rel;
}

struct DescentEngine {
    const PolySetup& setup;
    const IdealClassifier& cls;
    const SchirokauerSpec& sm0;
    const SchirokauerSpec& sm1;
    LogDatabase& db;
    const DescentParams& params;
    DescentTranscript* transcript;
    std::set<PrimeIdeal> in_progress;

    void resolve(const PrimeIdeal& id, int depth) {
        if (db.lookup(id)) return;
        if (depth > params.max_depth)
            throw std::runtime_error("descent: depth limit exceeded at " + ideal_tag(id));
        if (in_progress.count(id))
            throw std::runtime_error("descent: cycle at " + ideal_tag(id));
        in_progress.insert(id);

        Relation witness = (64 - (int)__builtin_clzll(id.q)) > params.bi_bits
                               ? intermediate_descent(id, setup, cls, db, params, transcript)
                               : sieve_witness(id, depth);
        if (transcript) transcript->note(depth, ideal_tag(id) + " witness " + witness.str());
        for (const auto& child : witness_children(witness, db)) {
            if (child == id) continue;
            resolve(child, depth + 1);
        }
        solve_witness(db, witness, id, setup, sm0, sm1);
        if (transcript)
            transcript->note(depth, ideal_tag(id) + " resolved vlog=" +
                                        std::to_string(db.ideal_vlogs[id]));
        in_progress.erase(id);
    }

    Relation sieve_witness(const PrimeIdeal& id, int depth) {
        if (id.kind != IdealKind::deg1)
            throw std::runtime_error("descent: only degree-1 special-q supported, got " +
                                     ideal_tag(id));
        SpecialQ sq = build_special_q_lattice(id, setup);
        int qbits = 64 - (int)__builtin_clzll(id.q);
        double qb = params.tighten * qbits;
        for (int relaxes = 0; relaxes <= 2; relaxes++) {
            uint64_t target = (uint64_t)1 << std::min(62, (int)std::ceil(qb));
            // the target bound must descend or we loop forever
            if (target >= id.q) target = id.q - 1;

            long long half = params.box_scale * (long long)std::llround(std::pow((double)id.q, 0.25));
            half = std::max(8ll, std::min(half, 512ll));
            Orthotope box{{half, half, half, half}};
            std::optional<Relation> found;
            try {
                enumerate_box(sq.reduced_basis, box,
                              [&](const std::array<long long, 4>&,
                                  const std::array<long long, 4>& x) {
                                  if (found) return;
                                  std::array<long long, 4> e = x;
                                  long long g = 0;
                                  for (long long c : e) g = gcd_i64(g, c);
                                  if (g != 1) return;
                                  sign_normalize(e);
                                  auto rel = descent_candidate(setup, cls, db, e, &id, target,
                                                               params.rho_budget);
                                  if (rel) found = rel;
                              });
            } catch (const std::overflow_error&) {
                throw std::runtime_error("descent: special-q lattice out of range at " +
                                         ideal_tag(id));
            }
            if (found) return *found;
            if (transcript)
                transcript->note(depth, ideal_tag(id) + " no Q-smooth relation, relaxing Q");
            qb *= params.relax;  // very rarely
        }
        throw std::runtime_error("descent: no Q-smooth relation for " + ideal_tag(id));
    }
};

}  // namespace

Relation intermediate_descent(const PrimeIdeal& q, const PolySetup& setup,
                              const IdealClassifier& cls, const LogDatabase& db,
                              const DescentParams& params, DescentTranscript* transcript) {
    if (q.q <= params.fb_bound) throw std::invalid_argument("intermediate_descent: use database");
    if (q.kind != IdealKind::deg1)
        throw std::invalid_argument("intermediate_descent: only degree-1 ideals supported");

    SpecialQ sq = build_special_q_lattice(q, setup);
    Rng rng(params.seed ^ (q.q * 0x9e3779b97f4a7c15ull));
    uint64_t target = (uint64_t)1 << params.bi_bits;

    for (uint64_t tries = 0; tries < params.vector_budget; tries++) {
        long long width = tries < params.vector_budget / 2 ? 3 : 7;
        std::array<Int, 4> v{Int(0), Int(0), Int(0), Int(0)};
        bool all_zero = true;
        std::array<long long, 4> z;
        for (auto& zi : z) {
            zi = rng.range(-width, width);
            if (zi != 0) all_zero = false;
        }
        if (all_zero) continue;
        for (int row = 0; row < 4; row++)
            for (int colidx = 0; colidx < 4; colidx++)
                v[(size_t)row] += sq.reduced_basis.at(row, colidx) * (long)z[(size_t)colidx];
        auto e = normalize_candidate(v);
        if (!e) continue;
        auto rel = descent_candidate(setup, cls, db, *e, &q, target, params.rho_budget);
        if (rel) {
            if (transcript)
                transcript->note(0, ideal_tag(q) + " intermediate witness after " +
                                        std::to_string(tries + 1) + " vectors");
            return *rel;
        }
    }
    throw std::runtime_error("intermediate_descent: budget exhausted for " + ideal_tag(q) +
                             "; try a larger B_I");
}

SplitResult initial_split(const TowerElement& t, const TowerElement& g, const PolySetup& setup,
                          const IdealClassifier& cls, const LogDatabase& db,
                          const DescentParams& params, DescentTranscript* transcript) {
    if (t.is_zero() || g.is_zero()) throw std::invalid_argument("initial_split: zero element");
    TowerField F = setup.field();
    const Int& p = setup.params.p;
    uint64_t bl_bound_bits = (uint64_t)params.bl_bits;
    Int bl_bound = Int(1) << (unsigned long)bl_bound_bits;

    TowerElement cur = t;
    for (long shift = 0; shift < params.split_shift_tries; shift++) {
        if (shift > 0) cur = F.mul(cur, g);
        if (cur.is_zero()) continue;

        // lattice of integer representatives of K-multiples of cur
        TowerElement ycur = F.mul(F.make(0, 1, 0, 0), cur);
        std::vector<std::array<Int, 4>> gens;
        gens.push_back({cur.c[0], cur.c[1], cur.c[2], cur.c[3]});
        gens.push_back({ycur.c[0], ycur.c[1], ycur.c[2], ycur.c[3]});
        for (int i = 0; i < 4; i++) {
            std::array<Int, 4> e{Int(0), Int(0), Int(0), Int(0)};
            e[(size_t)i] = p;
            gens.push_back(e);
        }
        Basis4 basis;
        try {
            basis = hnf_basis(gens);
        } catch (const std::invalid_argument&) {
            continue;
        }
        Basis4 red = lll_reduce(basis);

        // deterministic short combinations of the reduced rows
        int tried = 0;
        for (long z0 = -2; z0 <= 2 && tried < params.split_cands_per_shift; z0++)
            for (long z1 = -2; z1 <= 2 && tried < params.split_cands_per_shift; z1++)
                for (long z2 = -2; z2 <= 2 && tried < params.split_cands_per_shift; z2++)
                    for (long z3 = -2; z3 <= 2 && tried < params.split_cands_per_shift; z3++) {
                        if (!z0 && !z1 && !z2 && !z3) continue;
                        std::array<Int, 4> v{Int(0), Int(0), Int(0), Int(0)};
                        for (int row = 0; row < 4; row++)
                            v[(size_t)row] = red.at(row, 0) * z0 + red.at(row, 1) * z1 +
                                             red.at(row, 2) * z2 + red.at(row, 3) * z3;
                        auto e = normalize_candidate(v);
                        if (!e) continue;
                        tried++;

                        Int n0 = norm_side(setup, 0, *e);
                        if (n0 == 0) continue;
                        auto sm = smooth_factor(n0, bl_bound, params.rho_budget);
                        if (!sm.accepted()) continue;

                        // descent usability: every prime attributable, out-of-db
                        // ideals degree-1
                        bool usable = true;
                        for (const auto& [pz, vv] : sm.factored->factors) {
                            if (!pz.fits_ulong_p()) {
                                usable = false;
                                break;
                            }
                            uint64_t q = mpz_get_ui(pz.get_mpz_t());
                            auto attr = attribute_valuations(cls, 0, q, vv, *e);
                            if (!attr) {
                                usable = false;
                                break;
                            }
                            for (const auto& [id, v2] : attr->vals)
                                if (!db.lookup(id) && id.kind != IdealKind::deg1) usable = false;
                            if (!usable) break;
                        }
                        if (!usable) continue;

                        if (transcript)
                            transcript->note(
                                0, "initial split at shift " + std::to_string(shift) + ": |N0| = " +
                                       sm.factored->value().get_str() + " smooth");
                        SplitResult out;
                        out.shift = shift;
                        out.element = *e;
                        out.norm_factors = *sm.factored;
                        return out;
                    }
    }
    throw std::runtime_error("initial_split: tries exhausted (best bound " +
                             bl_bound.get_str() + ")");
}

void special_q_descent(const std::vector<PrimeIdeal>& roots, const PolySetup& setup,
                       const IdealClassifier& cls, const SchirokauerSpec& sm0,
                       const SchirokauerSpec& sm1, LogDatabase& db, const DescentParams& params,
                       DescentTranscript* transcript) {
    DescentEngine engine{setup, cls, sm0, sm1, db, params, transcript, {}};
    for (const auto& id : roots) engine.resolve(id, 0);
}

uint64_t compute_dlog(const TowerElement& g, const TowerElement& t, const PolySetup& setup,
                      const IdealClassifier& cls, const SchirokauerSpec& sm0,
                      const SchirokauerSpec& sm1, LogDatabase& db, const DescentParams& params,
                      DescentTranscript* transcript) {
    uint64_t ell = db.ell;

    auto vlog_of = [&](const TowerElement& target, const TowerElement& base, long& shift_out) {
        SplitResult split = initial_split(target, base, setup, cls, db, params, transcript);
        // resolve all out-of-db primes of the split element
        std::vector<PrimeIdeal> pending;
        for (const auto& [pz, v] : split.norm_factors.factors) {
            uint64_t q = mpz_get_ui(pz.get_mpz_t());
            auto attr = attribute_valuations(cls, 0, q, v, split.element);
            if (!attr) throw std::logic_error("compute_dlog: split attribution regressed");
            for (const auto& [id, vv] : attr->vals)
                if (!db.lookup(id)) pending.push_back(id);
        }
        special_q_descent(pending, setup, cls, sm0, sm1, db, params, transcript);

        // vlog of the element = sum of side-0 contributions
        uint64_t acc = 0;
        for (const auto& [pz, v] : split.norm_factors.factors) {
            uint64_t q = mpz_get_ui(pz.get_mpz_t());
            auto attr = attribute_valuations(cls, 0, q, v, split.element);
            if (!attr) throw std::logic_error("compute_dlog: split attribution regressed");
            for (const auto& [id, vv] : attr->vals) {
                auto vl = db.lookup(id);
                if (!vl) throw std::logic_error("compute_dlog: unresolved ideal after descent");
                acc = addmod_u64(acc, mulmod_u64((uint64_t)vv % ell, *vl, ell), ell);
            }
        }
        auto smv = schirokauer_map(setup, sm0, split.element);
        for (size_t j = 0; j < smv.size(); j++)
            acc = addmod_u64(acc, mulmod_u64(smv[j] % ell, db.sm_vlogs[0][j], ell), ell);
        shift_out = split.shift;
        return acc;
    };

    // vlog(g): split g * g^i = g^(i+1)
    long shift_g = 0;
    uint64_t vlog_gpow = vlog_of(g, g, shift_g);
    uint64_t denom = (uint64_t)(shift_g + 1) % ell;
    if (denom == 0) throw std::runtime_error("compute_dlog: degenerate generator shift");
    uint64_t vlog_g = mulmod_u64(vlog_gpow, invmod_u64(denom, ell), ell);
    if (vlog_g == 0) throw std::runtime_error("compute_dlog: vlog(g) = 0");

    // vlog(t): split t * g^i
    long shift_t = 0;
    uint64_t vlog_tgi = vlog_of(t, g, shift_t);
    uint64_t vlog_t =
        submod_u64(vlog_tgi, mulmod_u64((uint64_t)(shift_t % (long)ell), vlog_g, ell), ell);

    return mulmod_u64(vlog_t, invmod_u64(vlog_g, ell), ell);
}

bool verify_dlog(const TowerElement& g, const TowerElement& t, const Int& vlog_g,
                 const Int& vlog_t, const PolySetup& setup) {
    TowerField F = setup.field();
    const Int& p = setup.params.p;
    Int order = p * p * p * p - 1;
    if (order % setup.params.ell != 0) return false;
    Int C = order / setup.params.ell;
    TowerElement lhs = F.pow(g, C * vlog_t);
    TowerElement rhs = F.pow(t, C * vlog_g);
    return lhs == rhs;
}

}  // namespace extnfs
