#include "extnfs/relproc.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace extnfs {

DupKey canonical_key(const std::array<long long, 4>& e, const Int& p, const IntPoly& h) {
    auto red = [&](const Int& x) {
        Int r = x % p;
        if (r < 0) r += p;
        return r;
    };
    Int h1 = red(h.coeff(1)), h0 = red(h.coeff(0));
    Int a = red(Int((long)e[0])), b = red(Int((long)e[1]));
    Int c = red(Int((long)e[2])), d = red(Int((long)e[3]));

    DupKey key;
    if (c == 0 && d == 0) {
        if (a == 0 && b == 0) throw std::invalid_argument("canonical_key: degenerate relation");
        key.infinity = true;
        key.k0 = key.k1 = 0;
        return key;
    }
    // (c + d y)^-1 via the conjugate: N = c^2 - h1 c d + h0 d^2
    Int n = red(c * c - h1 * c * d + h0 * d * d);
    Int ninv;
    if (mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()) == 0)
        throw std::invalid_argument("canonical_key: denominator not invertible");
    Int i0 = red(red(c - h1 * d) * ninv);
    Int i1 = red(-d * ninv);
    // (a + b y) * (i0 + i1 y), y^2 = -h1 y - h0
    Int t2 = b * i1 % p;
    key.k0 = red(a * i0 - t2 * h0);
    key.k1 = red(a * i1 + b * i0 - t2 * h1);
    return key;
}

std::vector<Relation> remove_duplicates(const std::vector<Relation>& rels, const Int& p,
                                        const IntPoly& h) {
    std::vector<Relation> out;
    std::set<DupKey> seen;
    for (const auto& r : rels) {
        DupKey k = canonical_key(r.e, p, h);
        if (seen.insert(k).second) out.push_back(r);
    }
    return out;
}

namespace {

std::vector<PrimeIdeal> relation_ideals(const Relation& r) {
    std::vector<PrimeIdeal> out;
    for (int side = 0; side < 2; side++)
        for (const auto& [id, e] : r.fac[(size_t)side]) out.push_back(id);
    return out;
}

}  // namespace

PurgeResult purge(const std::vector<Relation>& rels, long long min_excess,
                  long long excess_target) {
    std::vector<bool> alive(rels.size(), true);
    std::map<PrimeIdeal, long> count;
    for (const auto& r : rels)
        for (const auto& id : relation_ideals(r)) count[id]++;

    auto singleton_fixpoint = [&]() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < rels.size(); i++) {
                if (!alive[i]) continue;
                for (const auto& id : relation_ideals(rels[i])) {
                    if (count[id] == 1) {
                        alive[i] = false;
                        for (const auto& id2 : relation_ideals(rels[i])) count[id2]--;
                        changed = true;
                        break;
                    }
                }
            }
        }
    };
    auto stats = [&]() {
        long long nrel = 0, nideal = 0;
        for (size_t i = 0; i < rels.size(); i++)
            if (alive[i]) nrel++;
        for (const auto& [id, c] : count)
            if (c > 0) nideal++;
        return std::pair<long long, long long>(nrel, nideal);
    };

    singleton_fixpoint();
    auto [nrel, nideal] = stats();
    if (nrel - nideal < min_excess)
        throw std::runtime_error("purge: insufficient relations (excess " +
                                 std::to_string(nrel - nideal) + " < " +
                                 std::to_string(min_excess) + ")");

    // trim heaviest relations while the excess stays at the target; a trim
    // whose singleton cascade would undershoot is undone
    while (nrel - nideal > excess_target) {
        size_t heaviest = rels.size();
        size_t maxw = 0;
        for (size_t i = 0; i < rels.size(); i++) {
            if (!alive[i]) continue;
            size_t w = relation_ideals(rels[i]).size();
            if (w >= maxw) {
                maxw = w;
                heaviest = i;
            }
        }
        if (heaviest == rels.size()) break;
        auto alive_save = alive;
        auto count_save = count;
        alive[heaviest] = false;
        for (const auto& id : relation_ideals(rels[heaviest])) count[id]--;
        singleton_fixpoint();
        std::tie(nrel, nideal) = stats();
        if (nrel - nideal < excess_target) {
            alive = std::move(alive_save);
            count = std::move(count_save);
            std::tie(nrel, nideal) = stats();
            break;
        }
    }

    PurgeResult out;
    for (size_t i = 0; i < rels.size(); i++)
        if (alive[i]) out.kept.push_back(rels[i]);
    std::tie(nrel, nideal) = stats();
    out.distinct_ideals = (size_t)nideal;
    out.excess = nrel - nideal;
    return out;
}

MergeResult merge(const std::vector<Relation>& rels, int max_weight) {
    // live rows: ideal -> signed exponent, plus member bookkeeping
    struct Row {
        std::map<PrimeIdeal, long> val;
        std::vector<std::pair<uint32_t, int>> members;
        bool alive = true;
    };
    std::vector<Row> rows(rels.size());
    for (size_t i = 0; i < rels.size(); i++) {
        rows[i].members.push_back({(uint32_t)i, +1});
        for (int side = 0; side < 2; side++)
            for (const auto& [id, e] : rels[i].fac[(size_t)side]) rows[i].val[id] += e;
    }

    for (;;) {
        // column weights
        std::map<PrimeIdeal, std::vector<size_t>> cols;
        for (size_t i = 0; i < rows.size(); i++) {
            if (!rows[i].alive) continue;
            for (const auto& [id, v] : rows[i].val)
                if (v != 0) cols[id].push_back(i);
        }
        bool eliminated = false;
        for (const auto& [id, where] : cols) {
            if ((int)where.size() > max_weight) continue;
            if (where.size() == 1) continue;  // cannot cancel with +-1; purge should prevent
            if (where.size() == 2) {
                size_t i = where[0], j = where[1];
                long vi = rows[i].val[id], vj = rows[j].val[id];
                int ci, cj;
                if (vi + vj == 0) {
                    ci = 1;
                    cj = 1;
                } else if (vi == vj) {
                    ci = 1;
                    cj = -1;
                } else {
                    continue;  // not cancellable with unit coefficients
                }
                // combined row replaces j; i is removed from the matrix
                Row combined;
                combined.members = rows[i].members;
                for (auto& [idx, c] : combined.members) c *= ci;
                for (auto [idx, c] : rows[j].members) combined.members.push_back({idx, cj * c});
                for (const auto& [id2, v] : rows[i].val) combined.val[id2] += ci * v;
                for (const auto& [id2, v] : rows[j].val) combined.val[id2] += cj * v;
                rows[i].alive = false;
                rows[j] = std::move(combined);
                eliminated = true;
                break;
            }
        }
        if (!eliminated) break;
    }

    MergeResult out;
    std::set<PrimeIdeal> remaining;
    for (auto& row : rows) {
        if (!row.alive) continue;
        RelationSet rs;
        rs.members = row.members;
        out.rows.push_back(std::move(rs));
        for (const auto& [id, v] : row.val)
            if (v != 0) remaining.insert(id);
    }
    out.columns = remaining.size();
    return out;
}

}  // namespace extnfs
