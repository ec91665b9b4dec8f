#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "extnfs/io.hpp"
#include "extnfs/pipeline.hpp"

using namespace extnfs;
namespace fs = std::filesystem;

namespace {

// tiny run: a handful of special-q, enough to exercise artifacts
std::string mini_config(const std::string& workdir) {
    return "workdir = " + workdir + R"(
p = 1049093
ell = 22011922453
cofactor = 50
seed = 7
workers = 2
lpb0 = 65536
lpb1 = 65536
sieve_bound = 1024
box = 16,16,16,16
threshold_slack = 48
q_min = 1031
q_max = 1200
special_q_side = 0
)";
}

}  // namespace

TEST_CASE("config parsing, overrides and invariants") {
    PipelineConfig cfg = parse_config(mini_config("cfgtest-work"), ".");
    CHECK(cfg.params.p == 1049093);
    CHECK(cfg.q_min == 1031);
    cfg.validate();

    // q-range outside (sieve_bound, lpb] is rejected before any work
    PipelineConfig bad = cfg;
    bad.q_min = 512;
    CHECK_THROWS_WITH_AS(run_stage("sieve", bad), doctest::Contains("q-range"),
                         std::invalid_argument);
    PipelineConfig bad2 = cfg;
    bad2.q_max = 1u << 20;
    CHECK_THROWS_AS(bad2.validate(), std::invalid_argument);

    // defaults for descent bounds follow the lpb policy
    CHECK(cfg.descent.bl_bits == 2 * 16 + 8);
    CHECK(cfg.descent.bi_bits == 16 + 4);
}

TEST_CASE("include directive") {
    fs::create_directories("cfgtest-inc");
    write_file_atomic("cfgtest-inc/base.cfg", "p = 1049093\nell = 22011922453\ncofactor = 50\n");
    std::string text = "include base.cfg\nworkdir = cfgtest-work\nseed = 3\n";
    PipelineConfig cfg = parse_config(text, "cfgtest-inc");
    CHECK(cfg.params.p == 1049093);
    CHECK(cfg.seed == 3);
}

TEST_CASE("stage isolation and determinism") {
    std::string wd = "pipetest-work";
    fs::remove_all(wd);
    PipelineConfig cfg = parse_config(mini_config(wd), ".");

    // missing prerequisites are named
    CHECK_THROWS_WITH_AS(run_stage("makefb", cfg), doctest::Contains("setup.txt"),
                         std::runtime_error);

    run_stage("polyselect", cfg);
    run_stage("makefb", cfg);
    run_stage("sieve", cfg);
    run_stage("dedup", cfg);

    auto h_setup = hash_file(wd + "/setup.txt");
    auto h_fb0 = hash_file(wd + "/fb.0.txt");
    auto h_unique = hash_file(wd + "/rels.unique.txt");

    // delete outputs and rerun: byte-identical artifacts
    fs::remove(wd + "/setup.txt");
    fs::remove(wd + "/fb.0.txt");
    fs::remove(wd + "/fb.1.txt");
    fs::remove_all(wd + "/rels");
    fs::remove(wd + "/rels.unique.txt");
    run_stage("polyselect", cfg);
    run_stage("makefb", cfg);
    run_stage("sieve", cfg);
    run_stage("dedup", cfg);
    CHECK(hash_file(wd + "/setup.txt") == h_setup);
    CHECK(hash_file(wd + "/fb.0.txt") == h_fb0);
    CHECK(hash_file(wd + "/rels.unique.txt") == h_unique);

    // worker count does not change artifacts
    PipelineConfig cfg8 = cfg;
    cfg8.workers = 8;
    fs::remove_all(wd + "/rels");
    fs::remove(wd + "/rels.unique.txt");
    run_stage("sieve", cfg8);
    run_stage("dedup", cfg8);
    CHECK(hash_file(wd + "/rels.unique.txt") == h_unique);

    // factor base round trips through its file format
    FactorBase fb = parse_factor_base(read_file(wd + "/fb.0.txt"));
    CHECK(serialize_factor_base(fb) == read_file(wd + "/fb.0.txt"));

    // relations round trip
    auto rels = parse_relations(read_file(wd + "/rels.unique.txt"));
    CHECK(serialize_relations(rels) == read_file(wd + "/rels.unique.txt"));

    CHECK_THROWS(run_stage("nosuchstage", cfg));
}
