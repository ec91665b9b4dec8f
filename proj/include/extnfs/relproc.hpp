#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "extnfs/polyselect.hpp"
#include "extnfs/sieve4d.hpp"

namespace extnfs {

/* Canonical residue pair of (a + b y)/(c + d y) in F_p[y]/(h), or the
 * infinity marker when the denominator vanishes mod p. Invariant under
 * scaling mod p and global sign flip. */
struct DupKey {
    bool infinity = false;
    Int k0, k1;

    bool operator==(const DupKey& o) const {
        return infinity == o.infinity && k0 == o.k0 && k1 == o.k1;
    }
    bool operator<(const DupKey& o) const {
        if (infinity != o.infinity) return infinity < o.infinity;
        if (k0 != o.k0) return k0 < o.k0;
        return k1 < o.k1;
    }
};

DupKey canonical_key(const std::array<long long, 4>& e, const Int& p, const IntPoly& h);

// keeps the first relation per key, in input order
std::vector<Relation> remove_duplicates(const std::vector<Relation>& rels, const Int& p,
                                        const IntPoly& h);

/* Iterative singleton removal, then trimming of the heaviest relations
 * while the excess (relations - distinct ideals) stays at least
 * excess_target. Throws "insufficient relations" when the singleton
 * fixpoint leaves excess below min_excess. */
struct PurgeResult {
    std::vector<Relation> kept;
    size_t distinct_ideals = 0;
    long long excess = 0;
};
PurgeResult purge(const std::vector<Relation>& rels, long long min_excess, long long excess_target);

/* One matrix row after merge: a +-1 combination of sieve relations. */
struct RelationSet {
    std::vector<std::pair<uint32_t, int>> members;  // (relation index, +-1)
};

struct MergeResult {
    std::vector<RelationSet> rows;
    size_t columns = 0;  // distinct ideals remaining
};
/* Eliminates ideals of column weight <= max_weight (2 by default; merging
 * is only possible when the two valuations cancel under +-1 coefficients). */
MergeResult merge(const std::vector<Relation>& rels, int max_weight = 2);

}  // namespace extnfs
