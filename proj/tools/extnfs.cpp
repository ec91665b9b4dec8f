#include <CLI11.hpp>
#include <iostream>

#include "extnfs/pipeline.hpp"
#include "extnfs/record.hpp"

#ifndef EXTNFS_DATA_DIR
#define EXTNFS_DATA_DIR "data"
#endif

using namespace extnfs;

int main(int argc, char** argv) {
    CLI::App app{"4d lattice siever and discrete-log pipeline for F_p^4"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> overrides;

    auto add_stage = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("-c,--config", config_path, "configuration file")->required();
        sub->add_option("-D,--define", overrides,
                        "override a config key, e.g. -D q_max=4096 (repeatable)");
        return sub;
    };

    add_stage("polyselect", "conjugation-method polynomial selection");
    add_stage("makefb", "enumerate the factor bases of both sides");
    add_stage("sieve", "4d lattice sieve over the special-q range");
    add_stage("dedup", "remove duplicate relations");
    add_stage("purge", "singleton removal and excess trimming");
    add_stage("merge", "light column elimination");
    add_stage("sm", "Schirokauer map columns");
    add_stage("linalg", "sparse nullspace mod ell");
    add_stage("logrecon", "virtual log reconstruction");
    add_stage("descent", "individual logarithms for sample targets");
    add_stage("verify", "check the computed logarithms in F_p^4");

    CLI::App* all = app.add_subcommand("run", "run every stage in order");
    all->add_option("-c,--config", config_path, "configuration file")->required();
    all->add_option("-D,--define", overrides, "override a config key (repeatable)");

    CLI::App* rec = app.add_subcommand("recordverify", "check the published 512-bit record data");
    std::string fixture = std::string(EXTNFS_DATA_DIR) + "/record_fp4_512.txt";
    rec->add_option("-f,--fixture", fixture, "record fixture file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (rec->parsed()) {
            RecordFixture fix = load_record_fixture(fixture);
            SetupReport rep = verify_paper_record(fix);
            std::cout << rep.str();
            std::cout << (rep.all_pass() ? "record verification: pass" : "record verification: FAIL")
                      << "\n";
            return rep.all_pass() ? 0 : 1;
        }

        std::string text = read_config_with_overrides(config_path, overrides);
        PipelineConfig cfg = parse_config(text, config_dir(config_path));

        if (all->parsed()) {
            for (const auto& stage : stage_names()) run_stage(stage, cfg);
            return 0;
        }
        for (const auto& stage : stage_names()) {
            if (app.get_subcommand(stage)->parsed()) {
                run_stage(stage, cfg);
                return 0;
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
