#pragma once

#include <string>
#include <vector>

#include "extnfs/polyselect.hpp"
#include "extnfs/tower.hpp"

namespace extnfs {

/* The published 512-bit record data: tower, generator/target, final virtual
 * logs, and the initial-split factorization. */
struct RecordFixture {
    PolySetup setup;
    std::array<Int, 4> generator;  // coordinates on (1, y, x, yx)
    std::array<Int, 4> target;
    Int vlog_g, vlog_t;
    std::vector<std::pair<Int, int>> split_factors;
    int split_largest_bits = 0;
};

RecordFixture load_record_fixture(const std::string& path);
// the bundled fixture (data/record_fp4_512.txt), loaded once
const RecordFixture& record_fixture();

/* The record checks: setup validation, subgroup order, primality of every
 * initial-split factor with the largest below 2^68, and the verification
 * identity g^(C vlog_t) = t^(C vlog_g) with C = (p^4-1)/ell. */
SetupReport verify_paper_record(const RecordFixture& fix);

}  // namespace extnfs
