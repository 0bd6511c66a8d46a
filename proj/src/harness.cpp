#include "ekap/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#ifndef EKAP_VERSION
#define EKAP_VERSION "unknown"
#endif

namespace ekap {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const char* to_string(Variant v) { return v == Variant::newton ? "newton" : "linearized"; }

Variant parse_variant(const std::string& s) {
    if (s == "newton") return Variant::newton;
    if (s == "linearized") return Variant::linearized;
    throw ConfigError("unknown variant '" + s + "' (expected newton or linearized)");
}

const char* to_string(CflMonitor m) {
    switch (m) {
        case CflMonitor::off: return "off";
        case CflMonitor::warn: return "warn";
        case CflMonitor::abort: return "abort";
    }
    return "warn";
}

CflMonitor parse_cfl(const std::string& s) {
    if (s == "off") return CflMonitor::off;
    if (s == "warn") return CflMonitor::warn;
    if (s == "abort") return CflMonitor::abort;
    throw ConfigError("unknown cfl_monitor '" + s + "'");
}

const char* to_string(LinearMethod m) {
    switch (m) {
        case LinearMethod::automatic: return "automatic";
        case LinearMethod::direct: return "direct";
        case LinearMethod::bicgstab: return "bicgstab";
    }
    return "automatic";
}

LinearMethod parse_linear(const std::string& s) {
    if (s == "automatic") return LinearMethod::automatic;
    if (s == "direct") return LinearMethod::direct;
    if (s == "bicgstab") return LinearMethod::bicgstab;
    throw ConfigError("unknown linear_method '" + s + "'");
}

json viscosity_json(const ViscosityPolicy& p) {
    if (const auto* f = std::get_if<FixedViscosity>(&p)) return {{"policy", "fixed"}, {"mu", f->mu}};
    return {{"policy", "proportional"}, {"v_floor", std::get<ProportionalViscosity>(p).v_floor}};
}

ViscosityPolicy parse_viscosity(const json& j) {
    const std::string policy = j.value("policy", "proportional");
    if (policy == "proportional") return ProportionalViscosity{j.value("v_floor", 0.05)};
    if (policy == "fixed") return FixedViscosity{j.at("mu").get<double>()};
    throw ConfigError("unknown viscosity policy '" + policy + "'");
}

json solver_json(const NewtonConfig& c) {
    return {{"tol_residual", c.tol_residual}, {"tol_step", c.tol_step},     {"max_iter", c.max_iter},
            {"linear_tol", c.linear_tol},     {"line_search", c.line_search}, {"max_halvings", c.max_halvings},
            {"linear_method", to_string(c.linear_method)}};
}

void apply_solver(NewtonConfig& c, const json& j) {
    static const char* known[] = {"tol_residual", "tol_step",     "max_iter",     "linear_tol",
                                  "line_search",  "max_halvings", "linear_method"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("unknown solver setting '" + key + "'");
    }
    c.tol_residual = j.value("tol_residual", c.tol_residual);
    c.tol_step = j.value("tol_step", c.tol_step);
    c.max_iter = j.value("max_iter", c.max_iter);
    c.linear_tol = j.value("linear_tol", c.linear_tol);
    c.line_search = j.value("line_search", c.line_search);
    c.max_halvings = j.value("max_halvings", c.max_halvings);
    if (j.contains("linear_method")) c.linear_method = parse_linear(j.at("linear_method").get<std::string>());
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

Preset explicit_preset(const ExplicitSetup& e) {
    const GridSpec g = GridSpec::box(e.dim, e.K, e.lo, e.hi);
    Preset p{"explicit", g, quartic_double_well(e.gamma), {ScalarField(g, e.rho), VectorField(g), true}, {}, {}, 100,
             0.0, {}, "constant density at rest"};
    p.params.mach = e.mach;
    p.params.tau = e.tau;
    p.t_final = 100 * e.tau;
    return p;
}

json explicit_json(const ExplicitSetup& e) {
    return {{"dim", e.dim},     {"K", e.K},     {"lo", e.lo},     {"hi", e.hi},
            {"gamma", e.gamma}, {"rho", e.rho}, {"mach", e.mach}, {"tau", e.tau}};
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << text;
}

struct Summary {
    double mass0 = 0.0;
    double max_mass_drift = 0.0;
    double energy0 = 0.0;
    double energy_final = 0.0;
    int max_newton = 0;
    long total_newton = 0;
    double max_residual = 0.0;
    double min_density = std::numeric_limits<double>::infinity();
    double max_cfl = 0.0;
    double max_energy_step_ratio = 0.0;
    long energy_step_unbounded = 0;
    long warnings = 0;
    std::vector<std::string> first_warnings;

    void add(const StepDiagnostics& d) {
        max_mass_drift = std::max(max_mass_drift, std::abs(d.mass - mass0) / std::abs(mass0));
        energy_final = d.total_energy;
        max_newton = std::max(max_newton, d.newton_iters);
        total_newton += d.newton_iters;
        max_residual = std::max(max_residual, d.max_residual);
        min_density = std::min(min_density, d.min_density);
        max_cfl = std::max(max_cfl, d.cfl_ratio);
        if (std::isfinite(d.energy_step_ratio))
            max_energy_step_ratio = std::max(max_energy_step_ratio, d.energy_step_ratio);
        else
            ++energy_step_unbounded;
        warnings += static_cast<long>(d.warnings.size());
        for (const auto& w : d.warnings)
            if (first_warnings.size() < 10) first_warnings.push_back(w);
    }

    json to_json() const {
        return {{"initial_mass", mass0},
                {"max_relative_mass_drift", max_mass_drift},
                {"initial_total_energy", energy0},
                {"final_total_energy", energy_final},
                {"max_newton_iters", max_newton},
                {"total_newton_iters", total_newton},
                {"max_residual", max_residual},
                {"min_density", min_density},
                {"max_cfl_ratio", max_cfl},
                {"max_energy_step_ratio", max_energy_step_ratio},
                {"energy_step_ratio_unbounded_steps", energy_step_unbounded},
                {"warning_count", warnings},
                {"first_warnings", first_warnings}};
    }
};

}  // namespace

std::string code_version() { return EKAP_VERSION; }

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------

void RunConfig::validate() const {
    if (preset.has_value() == explicit_setup.has_value())
        throw ConfigError("exactly one of 'preset' and 'explicit' must be given");
    if (steps && t_final) throw ConfigError("give at most one of 'steps' and 't_final'");
    if (steps && *steps < 0) throw ConfigError("steps must be nonnegative");
    if (t_final && !(*t_final >= 0.0)) throw ConfigError("t_final must be nonnegative");
    if (tau && !(*tau > 0.0)) throw ConfigError("tau must be positive");
    if (snapshot_every < 1) throw ConfigError("snapshot_every must be at least 1");
    if (preset) {
        const auto names = preset_names();
        if (std::find(names.begin(), names.end(), *preset) == names.end())
            throw ConfigError("unknown preset '" + *preset + "'");
    }
}

RunConfig config_from_json(const json& in) {
    // a manifest embeds the resolved config
    const json& j = in.contains("config") && in.at("config").is_object() ? in.at("config") : in;
    const int version = j.value("schema_version", 0);
    if (version != kSchemaVersion)
        throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
    static const char* known[] = {"schema_version", "preset", "explicit",  "K",      "mach",   "variant",
                                  "well_prepared",  "data_mach", "steps",   "t_final", "tau",  "viscosity",
                                  "cfl_monitor",    "solver",    "out",     "snapshot_every",  "seed", "derived"};
    for (const auto& [key, value] : j.items())
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError("unknown config key '" + key + "'");

    RunConfig c;
    try {
        if (j.contains("preset") && !j.at("preset").is_null()) c.preset = j.at("preset").get<std::string>();
        if (j.contains("explicit") && !j.at("explicit").is_null()) {
            const json& e = j.at("explicit");
            ExplicitSetup s;
            s.dim = e.value("dim", s.dim);
            s.K = e.value("K", s.K);
            s.lo = e.value("lo", s.lo);
            s.hi = e.value("hi", s.hi);
            s.gamma = e.value("gamma", s.gamma);
            s.rho = e.value("rho", s.rho);
            s.mach = e.value("mach", s.mach);
            s.tau = e.value("tau", s.tau);
            c.explicit_setup = s;
        }
        auto opt_int = [&](const char* key) -> std::optional<int> {
            if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
            return j.at(key).get<int>();
        };
        auto opt_double = [&](const char* key) -> std::optional<double> {
            if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
            return j.at(key).get<double>();
        };
        c.preset_options.K = opt_int("K");
        c.preset_options.mach = opt_double("mach");
        c.preset_options.data_mach = opt_double("data_mach");
        if (j.contains("variant") && !j.at("variant").is_null())
            c.preset_options.variant = parse_variant(j.at("variant").get<std::string>());
        c.preset_options.well_prepared = j.value("well_prepared", false);
        if (j.contains("steps") && !j.at("steps").is_null()) c.steps = j.at("steps").get<long>();
        c.t_final = opt_double("t_final");
        c.tau = opt_double("tau");
        if (j.contains("viscosity") && !j.at("viscosity").is_null()) c.viscosity = parse_viscosity(j.at("viscosity"));
        if (j.contains("cfl_monitor") && !j.at("cfl_monitor").is_null())
            c.cfl_monitor = parse_cfl(j.at("cfl_monitor").get<std::string>());
        if (j.contains("solver")) c.solver = j.at("solver");
        if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
        c.snapshot_every = j.value("snapshot_every", c.snapshot_every);
        c.seed = j.value("seed", c.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream f(file);
    if (!f) throw ConfigError("cannot open config file " + file.string());
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ConfigError("cannot parse " + file.string() + ": " + e.what());
    }
    return config_from_json(j);
}

ResolvedRun resolve(const RunConfig& cfg) {
    cfg.validate();
    Preset p = [&] {
        try {
            if (cfg.preset) return make_preset(*cfg.preset, cfg.preset_options);
            ExplicitSetup e = *cfg.explicit_setup;
            if (cfg.preset_options.K) e.K = *cfg.preset_options.K;
            if (cfg.preset_options.mach) e.mach = *cfg.preset_options.mach;
            Preset q = explicit_preset(e);
            if (cfg.preset_options.variant) q.params.variant = *cfg.preset_options.variant;
            return q;
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        } catch (const PositivityFailure& e) {
            throw ConfigError(e.what());
        }
    }();

    if (cfg.tau) p.params.tau = *cfg.tau;
    if (cfg.viscosity) p.params.viscosity = *cfg.viscosity;
    if (cfg.cfl_monitor) p.params.cfl_monitor = *cfg.cfl_monitor;
    apply_solver(p.solver, cfg.solver);
    try {
        p.params.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    long steps = p.steps;
    if (cfg.steps)
        steps = *cfg.steps;
    else if (cfg.t_final)
        steps = std::lround(*cfg.t_final / p.params.tau);
    else if (cfg.tau)
        steps = std::lround(p.t_final / p.params.tau);
    ResolvedRun r{std::move(p), steps, cfg.snapshot_every, cfg.out_dir, {}};
    const Preset& q = r.setup;

    json c;
    c["schema_version"] = kSchemaVersion;
    c["preset"] = cfg.preset ? json(*cfg.preset) : json(nullptr);
    if (cfg.explicit_setup) {
        ExplicitSetup e = *cfg.explicit_setup;
        e.K = q.grid.K();
        e.mach = q.params.mach;
        e.tau = q.params.tau;
        c["explicit"] = explicit_json(e);
    } else {
        c["explicit"] = nullptr;
    }
    c["K"] = q.grid.K();
    c["mach"] = q.params.mach;
    c["variant"] = to_string(q.params.variant);
    c["well_prepared"] = cfg.preset_options.well_prepared;
    c["data_mach"] = cfg.preset_options.data_mach ? json(*cfg.preset_options.data_mach) : json(nullptr);
    c["steps"] = r.steps;
    c["tau"] = q.params.tau;
    c["viscosity"] = viscosity_json(q.params.viscosity);
    c["cfl_monitor"] = to_string(q.params.cfl_monitor);
    c["solver"] = solver_json(q.solver);
    c["out"] = r.out_dir.string();
    c["snapshot_every"] = r.snapshot_every;
    c["seed"] = cfg.seed;
    c["derived"] = {{"dim", q.grid.dim()},
                    {"lo", q.grid.lo()},
                    {"hi", q.grid.hi()},
                    {"h", q.grid.h()},
                    {"t_final", static_cast<double>(r.steps) * q.params.tau},
                    {"gamma", q.model.gamma},
                    {"kappa_v", q.model.kappa_v},
                    {"admissible_density", {q.model.rho_lo, q.model.rho_hi}},
                    {"model", q.model.description},
                    {"initial_data", q.notes},
                    {"well_prepared_data", q.initial.well_prepared}};
    r.config = std::move(c);
    return r;
}

// ---------------------------------------------------------------------------

std::string timeseries_header() {
    return "t,mass,total_energy,normalized_energy,kinetic_energy,newton_iters,max_residual,min_density,cfl_ratio\n";
}

std::string timeseries_row(const StepDiagnostics& d, double initial_energy) {
    // with a zero initial energy the column carries the raw energy
    const double normalized = initial_energy != 0.0 ? d.total_energy / initial_energy : d.total_energy;
    std::string s;
    for (double x : {d.t, d.mass, d.total_energy, normalized, d.kinetic_energy}) s += format_double(x) + ",";
    s += std::to_string(d.newton_iters) + ",";
    s += format_double(d.max_residual) + "," + format_double(d.min_density) + "," + format_double(d.cfl_ratio) + "\n";
    return s;
}

std::string snapshot_csv(const State& s) {
    const GridSpec& g = s.grid();
    std::string out = g.dim() == 1 ? "x,rho,u,lambda\n" : "x,y,rho,u,w,lambda\n";
    const int K = g.K();
    for (int i = 0; i <= K; ++i) {
        if (g.dim() == 1) {
            out += format_double(g.coord(i)) + "," + format_double(s.rho(i)) + "," + format_double(s.v[0](i)) + "," +
                   format_double(s.lambda(i)) + "\n";
            continue;
        }
        for (int j = 0; j <= K; ++j) {
            out += format_double(g.coord(i)) + "," + format_double(g.coord(j)) + "," + format_double(s.rho(i, j)) +
                   "," + format_double(s.v[0](i, j)) + "," + format_double(s.v[1](i, j)) + "," +
                   format_double(s.lambda(i, j)) + "\n";
        }
    }
    return out;
}

RunManifest run(const RunConfig& cfg, bool write_files) {
    const auto started = std::chrono::steady_clock::now();
    const ResolvedRun r = resolve(cfg);
    const Preset& p = r.setup;

    std::ofstream series;
    if (write_files) {
        fs::create_directories(r.out_dir);
        series.open(r.out_dir / "timeseries.csv", std::ios::binary);
        if (!series) throw std::runtime_error("cannot write into " + r.out_dir.string());
        series << timeseries_header();
    }

    RunManifest m;
    State state(p.initial.rho, p.initial.v);
    StepDiagnostics d0 = describe(state, p.model, p.params);
    Summary summary;
    summary.mass0 = d0.mass;
    summary.energy0 = d0.total_energy;
    summary.add(d0);
    m.history.push_back(d0);
    if (write_files) {
        series << timeseries_row(d0, summary.energy0);
        write_file(r.out_dir / "snap_0.csv", snapshot_csv(state));
    }

    m.status = "completed";
    std::string error;
    for (long n = 0; n < r.steps; ++n) {
        try {
            auto [next, d] = advance(state, p.params, p.model, p.solver);
            state = std::move(next);
            summary.add(d);
            if (write_files) {
                series << timeseries_row(d, summary.energy0);
                if (state.n % r.snapshot_every == 0 || state.n == r.steps)
                    write_file(r.out_dir / ("snap_" + std::to_string(state.n) + ".csv"), snapshot_csv(state));
            }
            m.history.push_back(std::move(d));
        } catch (const std::exception& e) {
            // every failure inside a step is a solver failure: divergence,
            // blow-up, lost positivity, linear breakdown or a CFL abort
            m.status = "solver_failure";
            m.exit_code = kExitSolverFailure;
            error = e.what();
            break;
        }
    }
    if (write_files) series.flush();

    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    m.json = {{"schema_version", kSchemaVersion},
              {"code_version", code_version()},
              {"config", r.config},
              {"status", m.status},
              {"error", error.empty() ? json(nullptr) : json(error)},
              {"steps_completed", state.n},
              {"final_time", state.t},
              {"wall_clock_seconds", seconds},
              {"summary", summary.to_json()},
              {"outputs", {{"timeseries", "timeseries.csv"}, {"snapshot_pattern", "snap_<n>.csv"}}}};
    if (write_files) write_file(r.out_dir / "manifest.json", m.json.dump(2) + "\n");
    m.final_state = std::move(state);
    return m;
}

// ---------------------------------------------------------------------------

std::vector<EocRow> eoc_study(const RunConfig& base, const EocOptions& options) {
    const auto& Ks = options.K_list;
    if (Ks.size() < 2) throw ConfigError("eoc study needs at least two K values");
    for (std::size_t k = 1; k < Ks.size(); ++k)
        if (Ks[k] != 2 * Ks[k - 1]) throw ConfigError("eoc study: K values must form a doubling sequence");

    auto final_state = [&](int K) {
        RunConfig c = base;
        c.preset_options.K = K;
        RunManifest m = run(c, false);
        if (m.exit_code != kExitOk)
            throw std::runtime_error("eoc study: run at K=" + std::to_string(K) + " failed: " +
                                     m.json.at("error").get<std::string>());
        return std::move(*m.final_state);
    };

    const ErrorMode mode =
        options.mode.value_or(options.reference == ReferenceKind::exact_profile ? ErrorMode::absolute : ErrorMode::relative);

    std::optional<State> ref;
    std::function<double(double)> exact;
    if (options.reference == ReferenceKind::finest_grid) {
        const int K_ref = options.K_ref > 0 ? options.K_ref : 4 * Ks.back();
        for (int K : Ks)
            if (K_ref % K != 0) throw ConfigError("eoc study: reference K must be a multiple of every K");
        ref = final_state(K_ref);
    } else {
        exact = resolve(base).setup.exact_density;
        if (!exact) throw ConfigError("eoc study: the configuration has no exact profile");
    }

    std::vector<EocRow> rows;
    std::optional<double> t_end = ref ? std::optional<double>(ref->t) : std::nullopt;
    for (int K : Ks) {
        const State s = final_state(K);
        if (!t_end) t_end = s.t;
        if (std::abs(*t_end - s.t) > 1e-12 * std::max(1.0, s.t))
            throw ConfigError("eoc study: runs end at different times (K=" + std::to_string(K) + " stops at t=" +
                              format_double(s.t) + ")");
        EocRow row;
        row.K = K;
        if (ref) {
            row.e_rho = l2_error(s.rho, ref->rho, mode);
            row.e_v = l2_error(s.v, ref->v, mode);
        } else {
            const GridSpec& g = s.grid();
            ScalarField ex(g);
            if (g.dim() != 1) throw ConfigError("eoc study: exact profiles are one-dimensional");
            for (int i = 0; i <= g.K(); ++i) ex(i) = exact(g.coord(i));
            row.e_rho = l2_error(s.rho, ex, mode);
            // the exact velocity is zero, so its error is always absolute
            row.e_v = l2_error(s.v, VectorField(g), ErrorMode::absolute);
        }
        if (!rows.empty()) {
            const EocRow& prev = rows.back();
            if (prev.e_rho > 0.0 && row.e_rho > 0.0) row.eoc_rho = std::log2(prev.e_rho / row.e_rho);
            if (prev.e_v > 0.0 && row.e_v > 0.0) row.eoc_v = std::log2(prev.e_v / row.e_v);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string eoc_table_csv(const std::vector<EocRow>& rows) {
    std::string out = "K,e_rho,eoc_rho,e_v,eoc_v\n";
    for (const auto& r : rows) {
        out += std::to_string(r.K) + "," + format_double(r.e_rho) + ",";
        out += (r.eoc_rho ? format_double(*r.eoc_rho) : "") + "," + format_double(r.e_v) + ",";
        out += (r.eoc_v ? format_double(*r.eoc_v) : "") + "\n";
    }
    return out;
}

std::vector<IdentityReport> run_checks(int cases, std::uint64_t seed, std::ostream& out) {
    std::vector<IdentityReport> reports = run_identity_suite(cases, seed);
    for (const auto& r : reports) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << " dim=" << r.dim << " K=" << r.K << " cases=" << r.cases
            << " worst=" << format_double(r.worst) << " tol=" << format_double(r.tolerance) << "\n";
    }
    return reports;
}

}  // namespace ekap
