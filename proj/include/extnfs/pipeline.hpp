#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "extnfs/descent.hpp"
#include "extnfs/polyselect.hpp"
#include "extnfs/sieve4d.hpp"

namespace extnfs {

/* Flat key=value configuration with an `include` directive; flags override
 * file keys in the CLI layer. */
struct PipelineConfig {
    std::string workdir = "work";
    TowerParams params;
    uint64_t seed = 1;
    int workers = 4;

    long max_s = 2000;
    long max_t_coeff = 4;

    std::array<uint64_t, 2> lpb{65536, 65536};
    uint64_t sieve_bound = 2048;
    Orthotope box{{24, 24, 24, 24}};
    int threshold_slack = 35;
    uint64_t q_min = 2053, q_max = 8192;
    int special_q_side = 0;
    uint64_t rho_budget = 1u << 20;
    uint64_t max_box_points = 1ull << 30;
    uint64_t direct_cofactor_points = 0;

    long excess_buffer = 2;
    int merge_max_weight = 2;

    DescentParams descent;
    int dlog_targets = 5;

    void validate() const;  // throws on invariant violations
};

PipelineConfig parse_config(const std::string& text, const std::string& include_dir);
PipelineConfig load_config(const std::string& path);

// config text with CLI overrides appended (later keys win)
std::string read_config_with_overrides(const std::string& path,
                                       const std::map<std::string, std::string>& overrides);
std::string config_dir(const std::string& path);

/* One pipeline stage; produces its artifacts atomically and appends a
 * manifest entry. Missing prerequisites raise with the absent artifact
 * named. Stages: polyselect, makefb, sieve, dedup, purge, merge, sm,
 * linalg, logrecon, descent, verify. */
void run_stage(const std::string& stage, const PipelineConfig& config);

const std::vector<std::string>& stage_names();

}  // namespace extnfs
