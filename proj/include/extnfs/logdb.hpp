#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "extnfs/linalg.hpp"

namespace extnfs {

/* Virtual logarithms mod ell for prime ideals and SM slots. Every stored
 * relation of the pipeline evaluates to zero under a consistent database. */
struct LogDatabase {
    uint64_t ell = 0;
    std::map<PrimeIdeal, uint64_t> ideal_vlogs;
    std::array<std::vector<uint64_t>, 2> sm_vlogs;
    int passes = 0;

    std::optional<uint64_t> lookup(const PrimeIdeal& id) const {
        auto it = ideal_vlogs.find(id);
        if (it == ideal_vlogs.end()) return std::nullopt;
        return it->second;
    }
    size_t coverage() const { return ideal_vlogs.size(); }
};

// assigns a vlog to every column of the merged system; rejects v = 0
LogDatabase seed_from_nullspace(const std::vector<uint64_t>& v, const SparseSystem& sys);

struct ReconstructStats {
    int passes = 0;
    size_t deduced = 0;
};

/* Multi-pass single-unknown deduction over the full (pre-purge) relation
 * set, in file order, until fixpoint. A relation with no unknowns that
 * evaluates nonzero aborts with the relation named. */
ReconstructStats reconstruct(LogDatabase& db, const std::vector<Relation>& all_relations,
                             const PolySetup& setup, const SchirokauerSpec& sm0,
                             const SchirokauerSpec& sm1);

/* Row residue under the database: sum of side-0 contributions minus side-1,
 * including SM terms; nullopt when any ideal vlog is missing. */
std::optional<uint64_t> evaluate_relation(const LogDatabase& db, const Relation& rel,
                                          const PolySetup& setup, const SchirokauerSpec& sm0,
                                          const SchirokauerSpec& sm1);

}  // namespace extnfs
