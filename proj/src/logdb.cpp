#include "extnfs/logdb.hpp"

#include <stdexcept>

#include "extnfs/arith.hpp"

namespace extnfs {

LogDatabase seed_from_nullspace(const std::vector<uint64_t>& v, const SparseSystem& sys) {
    bool nonzero = false;
    for (auto x : v)
        if (x % sys.ell != 0) nonzero = true;
    if (!nonzero) throw std::invalid_argument("seed_from_nullspace: zero vector");
    if (v.size() != sys.ncols) throw std::invalid_argument("seed_from_nullspace: size mismatch");

    LogDatabase db;
    db.ell = sys.ell;
    for (size_t i = 0; i < sys.col_ideals.size(); i++)
        db.ideal_vlogs[sys.col_ideals[i]] = v[i] % sys.ell;
    for (int side = 0; side < 2; side++) {
        db.sm_vlogs[(size_t)side].resize((size_t)sys.sm_rank[(size_t)side]);
        for (int j = 0; j < sys.sm_rank[(size_t)side]; j++)
            db.sm_vlogs[(size_t)side][(size_t)j] = v[sys.sm_col(side, j)] % sys.ell;
    }
    return db;
}

namespace {

struct RowEval {
    uint64_t known_sum = 0;   // mod ell, signed contributions folded in
    int unknowns = 0;
    PrimeIdeal unknown_ideal;
    long unknown_coeff = 0;  // signed exponent of the unknown ideal
};

RowEval eval_row(const LogDatabase& db, const Relation& rel,
                 const std::array<std::vector<uint64_t>, 2>& sm) {
    uint64_t ell = db.ell;
    RowEval ev;
    for (int side = 0; side < 2; side++) {
        long sgn = side == 0 ? 1 : -1;
        for (const auto& [id, exp] : rel.fac[(size_t)side]) {
            auto vl = db.lookup(id);
            if (!vl) {
                ev.unknowns++;
                ev.unknown_ideal = id;
                ev.unknown_coeff = sgn * exp;
                continue;
            }
            uint64_t term = mulmod_u64((uint64_t)exp % ell, *vl, ell);
            ev.known_sum = sgn > 0 ? addmod_u64(ev.known_sum, term, ell)
                                   : submod_u64(ev.known_sum, term, ell);
        }
        for (size_t j = 0; j < sm[(size_t)side].size(); j++) {
            uint64_t term = mulmod_u64(sm[(size_t)side][j] % ell, db.sm_vlogs[(size_t)side][j], ell);
            ev.known_sum = sgn > 0 ? addmod_u64(ev.known_sum, term, ell)
                                   : submod_u64(ev.known_sum, term, ell);
        }
    }
    return ev;
}

}  // namespace

std::optional<uint64_t> evaluate_relation(const LogDatabase& db, const Relation& rel,
                                          const PolySetup& setup, const SchirokauerSpec& sm0,
                                          const SchirokauerSpec& sm1) {
    std::array<std::vector<uint64_t>, 2> sm{schirokauer_map(setup, sm0, rel.e),
                                            schirokauer_map(setup, sm1, rel.e)};
    RowEval ev = eval_row(db, rel, sm);
    if (ev.unknowns > 0) return std::nullopt;
    return ev.known_sum;
}

ReconstructStats reconstruct(LogDatabase& db, const std::vector<Relation>& all_relations,
                             const PolySetup& setup, const SchirokauerSpec& sm0,
                             const SchirokauerSpec& sm1) {
    ReconstructStats stats;
    uint64_t ell = db.ell;

    // SM vectors computed once per relation
    std::vector<std::array<std::vector<uint64_t>, 2>> sm;
    sm.reserve(all_relations.size());
    for (const auto& rel : all_relations)
        sm.push_back({schirokauer_map(setup, sm0, rel.e), schirokauer_map(setup, sm1, rel.e)});

    for (;;) {
        stats.passes++;
        size_t new_logs = 0;
        for (size_t i = 0; i < all_relations.size(); i++) {
            RowEval ev = eval_row(db, all_relations[i], sm[i]);
            if (ev.unknowns == 0) {
                if (ev.known_sum % ell != 0)
                    throw std::runtime_error("reconstruct: contradiction at relation " +
                                             all_relations[i].str());
                continue;
            }
            if (ev.unknowns > 1) continue;
            // unknown_coeff * vlog + known_sum = 0 mod ell
            long c = ev.unknown_coeff % (long)ell;
            if (c < 0) c += (long)ell;
            if (c == 0) continue;
            uint64_t inv = invmod_u64((uint64_t)c, ell);
            uint64_t vlog = mulmod_u64(submod_u64(0, ev.known_sum, ell), inv, ell);
            db.ideal_vlogs[ev.unknown_ideal] = vlog;
            new_logs++;
        }
        stats.deduced += new_logs;
        if (new_logs == 0) break;
    }
    db.passes += stats.passes;
    return stats;
}

}  // namespace extnfs
