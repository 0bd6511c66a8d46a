#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ekap/harness.hpp"

using namespace ekap;

namespace {

struct BaseFlags {
    std::string preset;
    std::string config;
    std::string variant;
    std::string out;
    double mach = 0.0;
    double data_mach = 0.0;
    double tfinal = -1.0;
    long steps = -1;
    long snapshot_every = 0;
    bool well_prepared = false;
};

void add_base_flags(CLI::App* app, BaseFlags& f) {
    app->add_option("--preset", f.preset, "experiment preset (exp51 .. exp55)");
    app->add_option("--config", f.config, "JSON config or manifest file");
    app->add_option("--mach", f.mach, "Mach number");
    app->add_option("--variant", f.variant, "density update: newton or linearized")
        ->check(CLI::IsMember({"newton", "linearized"}));
    auto* steps = app->add_option("--steps", f.steps, "number of timesteps");
    app->add_option("--tfinal", f.tfinal, "final time (steps = tfinal / tau)")->excludes(steps);
    app->add_option("--out", f.out, "output directory");
    app->add_option("--snapshot-every", f.snapshot_every, "steps between field snapshots")
        ->check(CLI::PositiveNumber);
    app->add_flag("--well-prepared", f.well_prepared, "exp52: equilibrium data with an O(M^2) perturbation");
    app->add_option("--data-mach", f.data_mach, "exp52: Mach number used in the initial-data formula");
}

RunConfig build_config(const BaseFlags& f) {
    RunConfig c;
    if (!f.config.empty() && !f.preset.empty()) throw ConfigError("give either --preset or --config, not both");
    if (!f.config.empty()) {
        c = load_config(f.config);
    } else if (!f.preset.empty()) {
        c.preset = f.preset;
    } else {
        throw ConfigError("one of --preset or --config is required");
    }
    if (f.mach > 0.0) c.preset_options.mach = f.mach;
    if (f.data_mach > 0.0) c.preset_options.data_mach = f.data_mach;
    if (f.well_prepared) c.preset_options.well_prepared = true;
    if (!f.variant.empty()) c.preset_options.variant = f.variant == "newton" ? Variant::newton : Variant::linearized;
    if (f.steps >= 0) {
        c.steps = f.steps;
        c.t_final.reset();
    }
    if (f.tfinal >= 0.0) {
        c.t_final = f.tfinal;
        c.steps.reset();
    }
    if (!f.out.empty()) c.out_dir = f.out;
    if (f.snapshot_every > 0) c.snapshot_every = f.snapshot_every;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-implicit low-Mach Euler-Korteweg solver"};
    app.require_subcommand(1);
    app.set_version_flag("--version", code_version());

    BaseFlags run_flags;
    int run_K = 0;
    auto* run_cmd = app.add_subcommand("run", "run one configuration and write CSV/JSON outputs");
    add_base_flags(run_cmd, run_flags);
    run_cmd->add_option("--K", run_K, "cells per direction")->check(CLI::PositiveNumber);

    BaseFlags eoc_flags;
    std::vector<int> eoc_K;
    std::string reference = "finest";
    int K_ref = 0;
    std::string error_mode;
    auto* eoc_cmd = app.add_subcommand("eoc", "errors and convergence orders over a doubling K sequence");
    add_base_flags(eoc_cmd, eoc_flags);
    eoc_cmd->add_option("--K", eoc_K, "doubling K sequence, e.g. 40,80,160,320")->delimiter(',')->required();
    eoc_cmd->add_option("--reference", reference, "exact or finest")->check(CLI::IsMember({"exact", "finest"}));
    eoc_cmd->add_option("--K-ref", K_ref, "reference resolution (default 4x the largest K)");
    eoc_cmd->add_option("--error", error_mode, "absolute or relative")
        ->check(CLI::IsMember({"absolute", "relative"}));

    int cases = 500;
    std::uint64_t seed = 20240101;
    auto* check_cmd = app.add_subcommand("check", "randomized discrete identity suites");
    check_cmd->add_option("--cases", cases, "random cases per suite")->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*run_cmd) {
            RunConfig c = build_config(run_flags);
            if (run_K > 0) c.preset_options.K = run_K;
            const RunManifest m = run(c);
            const auto& s = m.json.at("summary");
            std::cout << "status " << m.status << ", " << m.json.at("steps_completed").get<long>() << " steps, t = "
                      << format_double(m.json.at("final_time").get<double>()) << "\n"
                      << "energy " << format_double(s.at("initial_total_energy").get<double>()) << " -> "
                      << format_double(s.at("final_total_energy").get<double>()) << ", max mass drift "
                      << format_double(s.at("max_relative_mass_drift").get<double>()) << "\n"
                      << "outputs in " << c.out_dir.string() << "\n";
            if (m.exit_code != kExitOk) std::cerr << m.json.at("error").get<std::string>() << "\n";
            return m.exit_code;
        }
        if (*eoc_cmd) {
            RunConfig c = build_config(eoc_flags);
            EocOptions o;
            o.K_list = eoc_K;
            o.reference = reference == "exact" ? ReferenceKind::exact_profile : ReferenceKind::finest_grid;
            o.K_ref = K_ref;
            if (!error_mode.empty()) o.mode = error_mode == "absolute" ? ErrorMode::absolute : ErrorMode::relative;
            const std::string table = eoc_table_csv(eoc_study(c, o));
            std::filesystem::create_directories(c.out_dir);
            std::ofstream(c.out_dir / "eoc.csv", std::ios::binary) << table;
            std::cout << table;
            return kExitOk;
        }
        if (*check_cmd) {
            const auto reports = run_checks(cases, seed, std::cout);
            for (const auto& r : reports)
                if (!r.passed) return kExitCheckFailed;
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return kExitOk;
}
