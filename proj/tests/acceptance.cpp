// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ekap/harness.hpp"

using namespace ekap;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(const char* id, const std::function<void(Outcome&)>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.passed) ++failures;
    std::printf("%s %s (%.1fs):%s\n", o.passed ? "PASS" : "FAIL", id, s, o.detail.str().c_str());
    std::fflush(stdout);
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

RunConfig preset_config(const std::string& name, int K) {
    RunConfig c;
    c.preset = name;
    c.preset_options.K = K;
    return c;
}

RunManifest run_quiet(const RunConfig& c) { return run(c, false); }

std::vector<EocRow> study(const std::string& name, Variant variant, ReferenceKind ref, int K_ref) {
    RunConfig c;
    c.preset = name;
    c.preset_options.variant = variant;
    EocOptions o;
    o.K_list = {40, 80, 160, 320};
    o.reference = ref;
    o.K_ref = K_ref;
    return eoc_study(c, o);
}

std::string table(const std::vector<EocRow>& rows) {
    std::string s;
    for (const auto& r : rows) {
        s += " K=" + std::to_string(r.K) + " e_rho=" + fmt(r.e_rho) + " e_v=" + fmt(r.e_v);
        if (r.eoc_rho) s += " eoc_rho=" + fmt(*r.eoc_rho) + " eoc_v=" + fmt(*r.eoc_v);
        s += ";";
    }
    return s;
}

struct StepProblem {
    State state;
    SchemeParams params;
    EnergyModel model;
    VectorField flux;
};

StepProblem make_problem(const GridSpec& g, ScalarField rho, VectorField v, SchemeParams p, EnergyModel m) {
    State s(std::move(rho), std::move(v));
    VectorField flux = explicit_flux(s, p.tau, viscosity(p, s));
    return {std::move(s), p, std::move(m), std::move(flux)};
}

std::vector<StepProblem> oracle_problems() {
    std::vector<StepProblem> out;
    for (Variant variant : {Variant::newton, Variant::linearized}) {
        {
            const GridSpec g = GridSpec::box(1, 8, -1.0, 1.0);
            ScalarField rho(g);
            for (int i = 0; i <= 8; ++i) rho(i) = 1.5 + 0.1 * std::sin(2 * std::numbers::pi * g.coord(i));
            SchemeParams p;
            p.tau = g.h() / 100;
            p.variant = variant;
            out.push_back(make_problem(g, rho, VectorField(g), p, quartic_double_well(1e-3)));
        }
        {
            Preset p = make_preset("exp54", {.K = 16});
            p.params.variant = variant;
            out.push_back(make_problem(p.grid, p.initial.rho, p.initial.v, p.params, p.model));
        }
        for (int dim : {1, 2}) {
            const GridSpec g = GridSpec::unit(dim, dim == 1 ? 16 : 8);
            std::mt19937_64 rng(1000 + dim);
            SchemeParams p;
            p.mach = 0.3;
            p.tau = 0.2 * g.h();
            p.variant = variant;
            out.push_back(make_problem(g, random_scalar(g, 1.0, 2.5, rng), random_vector(g, -0.5, 0.5, rng), p,
                                       quartic_double_well(1e-3)));
        }
    }
    return out;
}

}  // namespace

int main() {
    std::printf("acceptance suite, build %s\n", code_version().c_str());

    criterion("identities: compatibility, inverse inequality, summation by parts", [](Outcome& o) {
        const auto reports = run_identity_suite(500, 20240101);
        double worst_identity = 0.0, worst_inverse = 0.0;
        for (const auto& r : reports) {
            if (r.name == "inverse_inequality")
                worst_inverse = std::max(worst_inverse, r.worst);
            else
                worst_identity = std::max(worst_identity, r.worst);
            o.require(r.cases >= 500, r.name + " ran fewer than 500 cases");
            o.require(r.passed, r.name + " dim=" + std::to_string(r.dim) + " K=" + std::to_string(r.K) +
                                    " worst=" + fmt(r.worst));
        }
        o.detail << " " << reports.size() << " suites x 500 cases, dims {1,2}, K {4,8,16}; worst relative defect "
                 << fmt(worst_identity) << " (tol 1e-12); worst inverse-inequality ratio " << fmt(worst_inverse)
                 << " (<= 1)";
    });

    criterion("mass conservation for every preset run, both variants", [](Outcome& o) {
        struct Case {
            const char* name;
            int K;
            long steps;
        };
        for (const Case c : {Case{"exp51", 20, 500}, Case{"exp53", 80, -1}, Case{"exp54", 40, -1}})
            for (Variant variant : {Variant::newton, Variant::linearized}) {
                RunConfig cfg = preset_config(c.name, c.K);
                cfg.preset_options.variant = variant;
                if (c.steps >= 0) cfg.steps = c.steps;
                const RunManifest m = run_quiet(cfg);
                const std::string tag = std::string(c.name) + (variant == Variant::newton ? "/newton" : "/linearized");
                o.require(m.exit_code == kExitOk, tag + " did not complete");
                const double m0 = m.history.front().mass;
                double drift = 0.0;
                for (const auto& d : m.history) drift = std::max(drift, std::abs(d.mass - m0) / m0);
                o.require(drift <= 1e-6, tag + " drift " + fmt(drift));
                o.detail << " " << tag << " " << m.history.size() - 1 << " steps drift " << fmt(drift) << ";";
            }
    });

    criterion("fixed points, dense oracle and jacobian consistency", [](Outcome& o) {
        double worst_fixed = 0.0;
        for (int dim : {1, 2})
            for (Variant variant : {Variant::newton, Variant::linearized})
                for (double c : {0.8, 1.5, 2.0, 3.1}) {
                    const GridSpec g = GridSpec::unit(dim, 16);
                    SchemeParams p;
                    p.variant = variant;
                    p.tau = 1e-2;
                    State s(ScalarField(g, c), VectorField(g));
                    for (int n = 0; n < 3; ++n) s = advance(s, p, quartic_double_well(), NewtonConfig{}).first;
                    worst_fixed = std::max({worst_fixed, (s.rho - ScalarField(g, c)).max_abs(), s.v.max_norm()});
                }
        o.require(worst_fixed <= 1e-10, "constant state moved by " + fmt(worst_fixed));

        NewtonConfig cfg;
        cfg.tol_residual = 1e-12;
        double worst_oracle = 0.0;
        for (const auto& pb : oracle_problems()) {
            const ResidualFn r = density_residual(pb.state, pb.flux, pb.params, pb.model);
            const NewtonResult nr = newton_solve(r, density_jacobian(pb.state, pb.params, pb.model), pb.state.rho, cfg);
            worst_oracle = std::max(worst_oracle, (nr.solution - dense_oracle_solve(r, pb.state.rho, cfg)).max_abs());
        }
        o.require(worst_oracle <= 1e-8, "oracle disagreement " + fmt(worst_oracle));

        double worst_fd = 0.0;
        for (Variant variant : {Variant::newton, Variant::linearized})
            for (int dim : {1, 2})
                for (int K : {4, 8, 16}) {
                    const GridSpec g = GridSpec::unit(dim, K);
                    std::mt19937_64 rng(77 * K + dim);
                    SchemeParams p;
                    p.mach = 0.3;
                    p.tau = 0.2 * g.h();
                    p.variant = variant;
                    const StepProblem pb = make_problem(g, random_scalar(g, 1.0, 2.5, rng),
                                                        random_vector(g, -0.5, 0.5, rng), p, quartic_double_well());
                    const ResidualFn r = density_residual(pb.state, pb.flux, pb.params, pb.model);
                    const ScalarField x = random_scalar(g, 1.0, 2.5, rng);
                    const SparseOperator J = density_jacobian(pb.state, pb.params, pb.model)(x);
                    const ScalarField rx = r(x);
                    for (int c = 0; c < 20; ++c) {
                        const ScalarField d = random_scalar(g, -1.0, 1.0, rng);
                        const double eps = 1e-6;
                        const ScalarField jd = J.apply(d);
                        const ScalarField fd = (1.0 / eps) * (r(x + eps * d) - rx);
                        worst_fd = std::max(worst_fd, (fd - jd).max_abs() / jd.max_abs());
                    }
                }
        o.require(worst_fd <= 1e-5, "jacobian mismatch " + fmt(worst_fd));
        o.detail << " constants held to " << fmt(worst_fixed) << " (tol 1e-10); newton vs dense oracle "
                 << fmt(worst_oracle) << " (tol 1e-8); jacobian vs finite differences " << fmt(worst_fd)
                 << " relative (tol 1e-5)";
    });

    criterion("stationary-profile convergence table (exp54, absolute errors)", [](Outcome& o) {
        const auto rows = study("exp54", Variant::newton, ReferenceKind::exact_profile, 0);
        const double target[] = {4.314e-2, 1.997e-2, 9.864e-3, 4.891e-3};
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const double rel = std::abs(rows[k].e_rho - target[k]) / target[k];
            o.require(rel <= 0.2, "K=" + std::to_string(rows[k].K) + " e_rho " + fmt(rows[k].e_rho) + " vs " +
                                      fmt(target[k]));
            if (rows[k].eoc_rho)
                o.require(std::abs(*rows[k].eoc_rho - 1.0) <= 0.3,
                          "K=" + std::to_string(rows[k].K) + " eoc " + fmt(*rows[k].eoc_rho));
        }
        o.detail << table(rows);
    });

    std::vector<EocRow> newton_rows;
    criterion("front convergence trend (exp53, reference K=1280)", [&](Outcome& o) {
        newton_rows = study("exp53", Variant::newton, ReferenceKind::finest_grid, 1280);
        const auto& r = newton_rows;
        for (std::size_t k = 1; k < r.size(); ++k) {
            const std::string tag = "K=" + std::to_string(r[k].K);
            o.require(*r[k].eoc_rho >= 0.7 && *r[k].eoc_rho <= 1.4, tag + " density eoc " + fmt(*r[k].eoc_rho));
            o.require(r[k].e_rho < r[k - 1].e_rho, tag + " density error did not decrease");
            o.require(r[k].e_v < r[k - 1].e_v, tag + " velocity error did not decrease");
        }
        const double levels = static_cast<double>(r.size() - 1);
        const double rate_rho = std::log2(r.front().e_rho / r.back().e_rho) / levels;
        const double rate_v = std::log2(r.front().e_v / r.back().e_v) / levels;
        o.require(rate_v < rate_rho, "velocity rate " + fmt(rate_v) + " not below density rate " + fmt(rate_rho));
        o.detail << table(r) << " mean rates rho " << fmt(rate_rho) << " v " << fmt(rate_v);
    });

    criterion("linearized variant (exp55) converges and is no better than newton", [&](Outcome& o) {
        const auto rows = study("exp55", Variant::linearized, ReferenceKind::finest_grid, 1280);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::string tag = "K=" + std::to_string(rows[k].K);
            if (rows[k].eoc_rho) o.require(*rows[k].eoc_rho > 0.0, tag + " density eoc " + fmt(*rows[k].eoc_rho));
            if (k < newton_rows.size()) {
                o.require(rows[k].e_rho >= newton_rows[k].e_rho, tag + " density error below newton");
                o.require(rows[k].e_v >= newton_rows[k].e_v, tag + " velocity error below newton");
            } else {
                o.require(false, "newton table missing");
            }
        }
        o.detail << table(rows);
    });

    criterion("stability at M=1 (exp51, K=20, 500 steps)", [](Outcome& o) {
        RunConfig c = preset_config("exp51", 20);
        c.steps = 500;
        const RunManifest m = run_quiet(c);
        o.require(m.exit_code == kExitOk, "solver failure");
        const double e0 = m.history.front().total_energy, e1 = m.history.back().total_energy;
        double min_rho = std::numeric_limits<double>::infinity();
        for (const auto& d : m.history) min_rho = std::min(min_rho, d.min_density);
        o.require(e1 < e0, "energy did not decrease");
        o.require(min_rho > 0.0, "density lost positivity");
        o.detail << " energy " << fmt(e0) << " -> " << fmt(e1) << ", min density " << fmt(min_rho) << ", "
                 << m.history.size() - 1 << " steps";
    });

    criterion("asymptotic preservation on well-prepared data (K=20, T=0.1)", [](Outcome& o) {
        double deviation[2];
        int k = 0;
        for (double mach : {1e-1, 1e-2}) {
            RunConfig c = preset_config("exp52", 20);
            c.preset_options.mach = mach;
            c.preset_options.well_prepared = true;
            c.t_final = 0.1;
            const RunManifest m = run_quiet(c);
            o.require(m.exit_code == kExitOk, "run at M=" + fmt(mach) + " failed");
            // replay for the density deviation, which the summary does not carry
            const ResolvedRun r = resolve(c);
            State s(r.setup.initial.rho, r.setup.initial.v);
            double dev = 0.0;
            std::vector<double> ke;
            for (long n = 0; n < r.steps; ++n) {
                s = advance(s, r.setup.params, r.setup.model, r.setup.solver).first;
                dev = std::max(dev, (s.rho - r.setup.initial.rho).max_abs());
                ke.push_back(kinetic_energy(s));
            }
            for (std::size_t n = 30; n < ke.size(); ++n)
                if (ke[n] > ke[n - 1]) {
                    o.require(false, "kinetic energy rose at step " + std::to_string(n + 1) + " for M=" + fmt(mach));
                    break;
                }
            deviation[k++] = dev;
            o.detail << " M=" << fmt(mach) << " max deviation " << fmt(dev) << ";";
        }
        const double exponent = std::log10(deviation[0] / deviation[1]);
        o.require(exponent >= 1.8, "exponent " + fmt(exponent));
        o.detail << " exponent " << fmt(exponent) << " (>= 1.8)";
    });

    criterion("timestep independent of M (exp52 data, tau=5e-4, M=1 and 1e-3)", [](Outcome& o) {
        for (double mach : {1.0, 1e-3}) {
            RunConfig c = preset_config("exp52", 20);
            c.preset_options.mach = mach;
            // the raw bubble formula is negative at M=1, so both runs share the M=1e-3 datum
            c.preset_options.data_mach = 1e-3;
            c.steps = 200;
            const RunManifest m = run_quiet(c);
            const auto& err = m.json.at("error");
            o.require(m.exit_code == kExitOk, "M=" + fmt(mach) + " failed: " + (err.is_string() ? err.get<std::string>() : ""));
            o.detail << " M=" << fmt(mach) << " " << m.json.at("steps_completed").get<long>() << " steps, max newton "
                     << m.json.at("summary").at("max_newton_iters").get<int>() << ";";
        }
    });

    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
