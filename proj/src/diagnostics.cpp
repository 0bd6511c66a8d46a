#include "ekap/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ekap/operators.hpp"

namespace ekap {

double mass(const ScalarField& rho) { return rho.sum(); }

double total_energy(const ScalarField& rho, const VectorField& v, const EnergyModel& model, double mach) {
    const VectorField grad = grad_forward(rho, Parity::symmetric);
    const double inv_m2 = 1.0 / (mach * mach);
    double e = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        double g2 = 0.0, v2 = 0.0;
        for (int d = 0; d < rho.grid().dim(); ++d) {
            g2 += grad[d][k] * grad[d][k];
            v2 += v[d][k] * v[d][k];
        }
        e += inv_m2 * (model.W(rho[k]) + 0.5 * model.gamma * g2) + 0.5 * rho[k] * v2;
    }
    return e;
}

double total_energy(const State& s, const EnergyModel& model, double mach) {
    return total_energy(s.rho, s.v, model, mach);
}

double total_energy_weighted(const ScalarField& rho, const VectorField& v, const EnergyModel& model, double mach) {
    return rho.grid().cell_measure() * total_energy(rho, v, model, mach);
}

double kinetic_energy(const ScalarField& rho, const VectorField& v) {
    double e = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
        const double vn = v.norm_at(k);
        e += 0.5 * rho[k] * vn * vn;
    }
    return e;
}

double kinetic_energy(const State& s) { return kinetic_energy(s.rho, s.v); }

double cfl_ratio(const ScalarField& rho, const VectorField& v, double tau) {
    const double vmax = v.max_norm();
    if (vmax == 0.0) return 0.0;
    const double rmax = rho.max_abs();
    const double bound = rho.grid().h() / vmax * rho.min() / (9.0 * rmax * rmax + 8.0);
    return tau / bound;
}

double energy_step_ratio(double tau, const ScalarField& rho_old, const VectorField& v_old,
                         const ScalarField& rho_new, const VectorField& v_new) {
    const double a = v_old.max_norm();
    const double b = v_new.max_norm();
    if (a == 0.0 && b == 0.0) return 0.0;
    if (a == 0.0) return std::numeric_limits<double>::infinity();
    const double r = rho_new.max_abs();
    const double bound = rho_old.grid().h() * a * rho_old.min() / (8.0 * (2.0 * r * r * (a + b) * (a + b) + a * a));
    return tau / bound;
}

ScalarField restrict_to(const ScalarField& fine, const GridSpec& coarse) {
    const GridSpec& g = fine.grid();
    if (g == coarse) return fine;
    if (g.dim() != coarse.dim() || g.lo() != coarse.lo() || g.hi() != coarse.hi() || g.K() % coarse.K() != 0)
        throw std::invalid_argument("restrict_to: grids are not nested");
    const int r = g.K() / coarse.K();
    ScalarField out(coarse);
    const int K = coarse.K();
    if (coarse.dim() == 1) {
        for (int i = 0; i <= K; ++i) out(i) = fine(r * i);
        return out;
    }
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) out(i, j) = fine(r * i, r * j);
    return out;
}

VectorField restrict_to(const VectorField& fine, const GridSpec& coarse) {
    VectorField out(coarse);
    for (int d = 0; d < fine.dim(); ++d) out[d] = restrict_to(fine[d], coarse);
    return out;
}

namespace {

double finish(double diff2, double ref2, double measure, ErrorMode mode) {
    const double abs_err = std::sqrt(measure * diff2);
    if (mode == ErrorMode::absolute) return abs_err;
    const double ref_norm = std::sqrt(measure * ref2);
    if (ref_norm == 0.0) throw std::domain_error("l2_error: relative error against a zero reference");
    return abs_err / ref_norm;
}

}  // namespace

double l2_error(const ScalarField& f, const ScalarField& ref, ErrorMode mode) {
    const ScalarField r = restrict_to(ref, f.grid());
    double d2 = 0.0, r2 = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        d2 += (f[k] - r[k]) * (f[k] - r[k]);
        r2 += r[k] * r[k];
    }
    return finish(d2, r2, f.grid().cell_measure(), mode);
}

double l2_error(const VectorField& f, const VectorField& ref, ErrorMode mode) {
    const VectorField r = restrict_to(ref, f.grid());
    double d2 = 0.0, r2 = 0.0;
    for (int d = 0; d < f.dim(); ++d)
        for (std::size_t k = 0; k < f[d].size(); ++k) {
            d2 += (f[d][k] - r[d][k]) * (f[d][k] - r[d][k]);
            r2 += r[d][k] * r[d][k];
        }
    return finish(d2, r2, f.grid().cell_measure(), mode);
}

std::vector<double> eoc(const std::vector<std::pair<int, double>>& errors) {
    std::vector<double> out;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k].second > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
        if (k == 0) continue;
        if (errors[k].first != 2 * errors[k - 1].first) throw std::invalid_argument("eoc: K values must double");
        out.push_back(std::log2(errors[k - 1].second / errors[k].second));
    }
    return out;
}

}  // namespace ekap
