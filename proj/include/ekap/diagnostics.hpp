/// @file diagnostics.hpp
/// @brief Discrete energies, error norms and convergence orders.
///
/// Sums are plain node sums unless the name says otherwise.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ekap/grid.hpp"
#include "ekap/model.hpp"
#include "ekap/state.hpp"

namespace ekap {

struct StepDiagnostics {
    double t = 0.0;
    long n = 0;
    double mass = 0.0;
    double total_energy = 0.0;
    double kinetic_energy = 0.0;
    int newton_iters = 0;
    /// Largest infinity-norm residual of the three scheme equations.
    double max_residual = 0.0;
    double min_density = 0.0;
    /// tau over the kinetic-energy timestep bound at the old level (0 at rest).
    double cfl_ratio = 0.0;
    /// tau over the full energy-estimate bound, evaluated after the step.
    double energy_step_ratio = 0.0;
    double mu_h = 0.0;
    std::vector<std::string> warnings;
};

double mass(const ScalarField& rho);

/// sum (1/M^2)(W(rho) + gamma/2 |forward grad rho|^2) + 1/2 rho |v|^2,
/// forward differences with symmetric ghosts.
double total_energy(const ScalarField& rho, const VectorField& v, const EnergyModel& model, double mach);
double total_energy(const State& s, const EnergyModel& model, double mach);
/// Same density weighted by h^dim.
double total_energy_weighted(const ScalarField& rho, const VectorField& v, const EnergyModel& model, double mach);

/// sum 1/2 rho |v|^2.
double kinetic_energy(const ScalarField& rho, const VectorField& v);
double kinetic_energy(const State& s);

/// tau / [ (h/||v||_inf) rho_min / (9 ||rho||_inf^2 + 8) ]; 0 when v = 0.
double cfl_ratio(const ScalarField& rho, const VectorField& v, double tau);

/// tau / [ h ||v^n|| rho^n_min / (8 (2 ||rho^{n+1}||^2 (||v^n|| + ||v^{n+1}||)^2 + ||v^n||^2)) ].
/// 0 when both velocities vanish, +inf when only v^n does.
double energy_step_ratio(double tau, const ScalarField& rho_old, const VectorField& v_old,
                         const ScalarField& rho_new, const VectorField& v_new);

enum class ErrorMode { absolute, relative };

/// Nodal restriction of a field on a nested finer grid (K_fine a multiple of K).
ScalarField restrict_to(const ScalarField& fine, const GridSpec& coarse);
VectorField restrict_to(const VectorField& fine, const GridSpec& coarse);

/// sqrt(h^dim sum (f - ref)^2), divided by sqrt(h^dim sum ref^2) in relative mode.
/// `ref` may live on a nested finer grid. Throws std::domain_error for a zero
/// reference in relative mode and std::invalid_argument for incompatible grids.
double l2_error(const ScalarField& f, const ScalarField& ref, ErrorMode mode);
double l2_error(const VectorField& f, const VectorField& ref, ErrorMode mode);

/// log2(e_K / e_2K) for consecutive entries of a doubling sequence.
std::vector<double> eoc(const std::vector<std::pair<int, double>>& errors);

}  // namespace ekap
