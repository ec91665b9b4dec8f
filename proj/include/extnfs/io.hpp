#pragma once

#include <string>
#include <vector>

#include "extnfs/factorbase.hpp"
#include "extnfs/logdb.hpp"
#include "extnfs/polyselect.hpp"
#include "extnfs/relproc.hpp"
#include "extnfs/sieve4d.hpp"

namespace extnfs {

// atomic write: temp file in the same directory, then rename
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
bool file_exists(const std::string& path);

// FNV-1a over file bytes, for the manifest
uint64_t hash_file(const std::string& path);

std::string serialize_setup(const PolySetup& setup);
PolySetup parse_setup(const std::string& text);

// one line per ideal, "side:q:degree:data..." lowercase hex; skipped primes
// recorded as "#skip:q:reason" header comments
std::string serialize_factor_base(const FactorBase& fb);
FactorBase parse_factor_base(const std::string& text);

std::string serialize_relations(const std::vector<Relation>& rels);
std::vector<Relation> parse_relations(const std::string& text);

// header "#rows cols sm0 sm1", then one row per line "idx*coeff,idx*coeff..."
std::string serialize_relsets(const std::vector<RelationSet>& sets, size_t cols, int sm0, int sm1);
std::vector<RelationSet> parse_relsets(const std::string& text);

std::string serialize_sparse_system(const SparseSystem& sys);
std::string serialize_logdb(const LogDatabase& db);
LogDatabase parse_logdb(const std::string& text, uint64_t ell);

}  // namespace extnfs
