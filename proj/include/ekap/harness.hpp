/// @file harness.hpp
/// @brief Configuration-driven runs, EOC studies and output files.
///
/// A run writes into its output directory
///   timeseries.csv   one row per time level (n = 0 included)
///   snap_<n>.csv     nodal fields every `snapshot_every` steps and at the end
///   manifest.json    resolved configuration, summary and termination status
/// Config and manifest files carry "schema_version"; a manifest is accepted
/// wherever a config is.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ekap/checks.hpp"
#include "ekap/diagnostics.hpp"
#include "ekap/presets.hpp"

namespace ekap {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitConfigError = 1, kExitSolverFailure = 2, kExitCheckFailed = 3 };

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Explicit setup without a preset: quartic model, constant density at rest.
struct ExplicitSetup {
    int dim = 1;
    int K = 16;
    double lo = 0.0;
    double hi = 1.0;
    double gamma = 1e-3;
    double rho = 1.5;
    double mach = 1.0;
    double tau = 1e-3;
};

struct RunConfig {
    std::optional<std::string> preset;
    std::optional<ExplicitSetup> explicit_setup;
    PresetOptions preset_options;

    std::optional<long> steps;
    std::optional<double> t_final;
    std::optional<double> tau;
    std::optional<ViscosityPolicy> viscosity;
    std::optional<CflMonitor> cfl_monitor;
    /// Partial overrides of the preset's solver settings.
    nlohmann::json solver = nlohmann::json::object();

    std::filesystem::path out_dir = "out";
    long snapshot_every = 100;
    std::uint64_t seed = 20240101;

    /// Throws ConfigError when the config is inconsistent.
    void validate() const;
};

/// Fully resolved run: every default made explicit.
struct ResolvedRun {
    Preset setup;
    long steps = 0;
    long snapshot_every = 1;
    std::filesystem::path out_dir;
    nlohmann::json config;
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& file);
ResolvedRun resolve(const RunConfig& cfg);

struct RunManifest {
    nlohmann::json json;
    std::string status;
    int exit_code = kExitOk;
    std::vector<StepDiagnostics> history;
    /// Last state reached (the final state on success).
    std::optional<State> final_state;
};

/// Runs to completion or first failure. Writes outputs when `write_files`.
RunManifest run(const RunConfig& cfg, bool write_files = true);

enum class ReferenceKind { exact_profile, finest_grid };

struct EocRow {
    int K = 0;
    double e_rho = 0.0;
    double e_v = 0.0;
    /// Empty for the first row.
    std::optional<double> eoc_rho;
    std::optional<double> eoc_v;
};

struct EocOptions {
    std::vector<int> K_list;
    ReferenceKind reference = ReferenceKind::finest_grid;
    /// Reference resolution in finest-grid mode; 0 means 4x the largest K.
    int K_ref = 0;
    /// Defaults to relative against a numerical reference and absolute against an exact one.
    std::optional<ErrorMode> mode;
};

/// Runs the base config at every K (outputs not written) and measures errors at
/// the common final time. Throws ConfigError for a non-doubling or non-nested K list.
std::vector<EocRow> eoc_study(const RunConfig& base, const EocOptions& options);

std::string eoc_table_csv(const std::vector<EocRow>& rows);

/// Shortest round-trip decimal form.
std::string format_double(double x);

std::string timeseries_header();
std::string timeseries_row(const StepDiagnostics& d, double initial_energy);
std::string snapshot_csv(const State& s);

/// Text report of the randomized identity suites; returns the reports.
std::vector<IdentityReport> run_checks(int cases, std::uint64_t seed, std::ostream& out);

std::string code_version();

}  // namespace ekap
