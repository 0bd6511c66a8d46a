#include "ekap/presets.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseLU>

#include "ekap/assembly.hpp"
#include "ekap/operators.hpp"

namespace ekap {

namespace {

long step_count(double t_final, double tau) { return std::lround(t_final / tau); }

ScalarField sample_1d(const GridSpec& g, const std::function<double(double)>& fn) {
    ScalarField f(g);
    for (int i = 0; i <= g.K(); ++i) f(i) = fn(g.coord(i));
    return f;
}

ScalarField bubble(const GridSpec& g, double gamma, double amplitude) {
    ScalarField f(g);
    const int K = g.K();
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) {
            const double x = static_cast<double>(i) / K - 0.5;
            const double y = static_cast<double>(j) / K - 0.5;
            const double r = std::sqrt(x * x + y * y);
            f(i, j) = 1.5 - amplitude * std::tanh(std::sqrt(2.0 / gamma) * (r - 0.25));
        }
    return f;
}

Preset base_2d(const std::string& name, int K, double mach) {
    Preset p{name, GridSpec::unit(2, K), quartic_double_well(9e-4), {ScalarField(GridSpec::unit(2, K)),
             VectorField(GridSpec::unit(2, K)), false}, {}, {}, 2000, 1.0, {}, {}};
    p.params.mach = mach;
    p.params.tau = 5e-4;
    return p;
}

Preset make_exp51(const PresetOptions& o) {
    const int K = o.K.value_or(40);
    Preset p = base_2d("exp51", K, o.mach.value_or(1.0));
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) {
            const double x = static_cast<double>(i) / K;
            const double y = static_cast<double>(j) / K;
            double value = 1.0;
            if (std::abs(x - 0.25) + std::abs(y - 0.25) <= 0.25)
                value = 3.0;
            else if (std::abs(x - 0.75) + std::abs(y - 0.75) <= 0.25)
                value = 2.0;
            p.initial.rho(i, j) = value;
        }
    p.notes = "two diamonds of density 3 and 2 in a background of 1; 2000 steps of 5e-4 reach T = 1";
    return p;
}

Preset make_exp52(const PresetOptions& o) {
    const int K = o.K.value_or(40);
    const double mach = o.mach.value_or(1e-2);
    Preset p = base_2d("exp52", K, mach);
    const double gamma = p.model.gamma;
    const double data_mach = o.data_mach.value_or(mach);
    if (o.well_prepared) {
        const ScalarField eq = discrete_equilibrium(bubble(p.grid, gamma, 0.5), p.model);
        const ScalarField shape = bubble(p.grid, gamma, 1.0) - ScalarField(p.grid, 1.5);
        p.initial.rho = eq + (4.0 * data_mach * data_mach) * shape;
        p.initial.well_prepared = true;
        p.notes = "discrete equilibrium bubble plus a 4 M^2 tanh perturbation";
    } else {
        p.initial.rho = bubble(p.grid, gamma, 0.5 + 4.0 * data_mach);
        p.notes = "radial tanh bubble of amplitude 1/2 + 4M";
    }
    return p;
}

Preset make_front(const std::string& name, const PresetOptions& o, Variant variant) {
    const int K = o.K.value_or(80);
    const GridSpec g = GridSpec::box(1, K, -1.0, 1.0);
    const double gamma = 1e-3;
    Preset p{name, g, quartic_double_well(gamma), {ScalarField(g), VectorField(g), false}, {}, {}, 0, 0.0125, {}, {}};
    p.initial.rho = sample_1d(g, [gamma](double x) { return 1.5 + std::tanh(2.0 * x / std::sqrt(gamma)); });
    p.params.mach = o.mach.value_or(1.0);
    p.params.tau = g.h() / 100.0;
    p.params.variant = variant;
    p.steps = step_count(p.t_final, p.params.tau);
    p.notes = "far-from-equilibrium front on [-1,1], errors measured at t = 0.0125";
    return p;
}

Preset make_exp54(const PresetOptions& o) {
    const int K = o.K.value_or(40);
    const GridSpec g = GridSpec::box(1, K, -1.0, 1.0);
    const double gamma = 1e-3;
    auto exact = [gamma](double x) { return 1.5 + 0.5 * std::tanh(x / std::sqrt(2.0 * gamma)); };
    Preset p{"exp54", g, quartic_double_well(gamma), {ScalarField(g), VectorField(g), true}, {}, {}, 0, 0.25,
             exact, {}};
    p.initial.rho = sample_1d(g, exact);
    p.params.mach = o.mach.value_or(0.05);
    p.params.tau = g.h() / 5.0;
    p.solver.tol_residual = 1e-11;
    p.steps = step_count(p.t_final, p.params.tau);
    p.notes = "stationary tanh profile sampled nodally; gamma = 1e-3 (not given for this test, taken from exp53)";
    return p;
}

}  // namespace

std::vector<std::string> preset_names() { return {"exp51", "exp52", "exp53", "exp54", "exp55"}; }

Preset make_preset(const std::string& name, const PresetOptions& options) {
    if (options.K && *options.K < 2) throw std::invalid_argument("preset: K must be at least 2");
    if (options.mach && !(*options.mach > 0.0)) throw std::invalid_argument("preset: Mach number must be positive");
    if ((options.well_prepared || options.data_mach) && name != "exp52")
        throw std::invalid_argument("preset: well-prepared data and data_mach are only defined for exp52");
    if (options.data_mach && !(*options.data_mach > 0.0))
        throw std::invalid_argument("preset: data Mach number must be positive");

    Preset p = [&] {
        if (name == "exp51") return make_exp51(options);
        if (name == "exp52") return make_exp52(options);
        if (name == "exp53") return make_front("exp53", options, Variant::newton);
        if (name == "exp54") return make_exp54(options);
        if (name == "exp55") return make_front("exp55", options, Variant::linearized);
        throw std::invalid_argument("unknown preset '" + name + "'");
    }();
    if (options.variant) p.params.variant = *options.variant;
    require_positive(p.initial.rho, "preset");
    return p;
}

double equilibrium_defect(const ScalarField& rho, const EnergyModel& model) {
    const ScalarField lap = laplacian5(rho, Parity::symmetric);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double mu = model.dW(rho[k]) - model.gamma * lap[k];
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
    }
    return hi - lo;
}

ScalarField discrete_equilibrium(const ScalarField& guess, const EnergyModel& model, double tol, int max_iter) {
    const GridSpec& g = guess.grid();
    const auto n = static_cast<Eigen::Index>(g.size());
    const SparseMatrix L = assemble_laplacian(g, Parity::symmetric);
    const double target = guess.sum();

    Eigen::VectorXd x(n + 1);
    for (Eigen::Index k = 0; k < n; ++k) x[k] = guess[static_cast<std::size_t>(k)];
    x[n] = 0.0;
    {
        // start the multiplier at the mean chemical potential
        const ScalarField lap = laplacian5(guess, Parity::symmetric);
        double s = 0.0;
        for (std::size_t k = 0; k < guess.size(); ++k) s += model.dW(guess[k]) - model.gamma * lap[k];
        x[n] = s / static_cast<double>(guess.size());
    }

    auto residual = [&](const Eigen::VectorXd& y) {
        Eigen::VectorXd r(n + 1);
        const Eigen::VectorXd lap = L * y.head(n);
        for (Eigen::Index k = 0; k < n; ++k) r[k] = model.dW(y[k]) - model.gamma * lap[k] - y[n];
        r[n] = y.head(n).sum() - target;
        return r;
    };

    Eigen::VectorXd r = residual(x);
    std::vector<double> history{r.lpNorm<Eigen::Infinity>()};
    for (int it = 0; it < max_iter && history.back() > tol; ++it) {
        std::vector<Eigen::Triplet<double>> t;
        for (Eigen::Index row = 0; row < L.outerSize(); ++row)
            for (SparseMatrix::InnerIterator e(L, row); e; ++e) t.emplace_back(row, e.col(), -model.gamma * e.value());
        for (Eigen::Index k = 0; k < n; ++k) {
            t.emplace_back(k, k, model.d2W(x[k]));
            t.emplace_back(k, n, -1.0);
            t.emplace_back(n, k, 1.0);
        }
        Eigen::SparseMatrix<double> J(n + 1, n + 1);
        J.setFromTriplets(t.begin(), t.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(J);
        if (lu.info() != Eigen::Success) break;
        const Eigen::VectorXd dx = lu.solve(r);

        double alpha = 1.0;
        Eigen::VectorXd trial = x - dx;
        Eigen::VectorXd rt = residual(trial);
        for (int h = 0; h < 30 && !(rt.lpNorm<Eigen::Infinity>() < history.back()); ++h) {
            alpha *= 0.5;
            trial = x - alpha * dx;
            rt = residual(trial);
        }
        x = trial;
        r = rt;
        history.push_back(r.lpNorm<Eigen::Infinity>());
        if (alpha * dx.lpNorm<Eigen::Infinity>() < 1e-15) break;
    }

    ScalarField out(g);
    for (Eigen::Index k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = x[k];
    if (!(history.back() <= tol)) throw SolverDiverged("discrete_equilibrium: no convergence", out, history);
    return out;
}

}  // namespace ekap
