/// @file presets.hpp
/// @brief Named experiment configurations.
///
///  exp51  2D two-diamond datum (values 3/2/1), M = 1, gamma = 9e-4, tau = 5e-4, 2000 steps.
///  exp52  2D radial tanh bubble with amplitude 1/2 + 4M, otherwise as exp51.
///  exp53  1D front 1.5 + tanh(2x/sqrt(gamma)) on [-1,1], gamma = 1e-3, M = 1, tau = h/100, t = 0.0125.
///  exp54  1D stationary profile 1.5 + 0.5 tanh(x/sqrt(2 gamma)), M = 0.05, tau = h/5, t = 0.25,
///         Newton tolerance 1e-11.
///  exp55  exp53 with the linearized density update.
///
/// The step count is t_final / tau rounded to the nearest integer; exp51 runs
/// to T = 1.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekap/grid.hpp"
#include "ekap/model.hpp"
#include "ekap/solver.hpp"
#include "ekap/stepper.hpp"

namespace ekap {

struct InitialData {
    ScalarField rho;
    VectorField v;
    bool well_prepared = false;
};

struct PresetOptions {
    std::optional<int> K;
    std::optional<double> mach;
    std::optional<Variant> variant;
    /// exp52 only: start from a discrete equilibrium perturbed by O(M^2).
    bool well_prepared = false;
    /// exp52 only: Mach number used in the initial-data formula when it
    /// should differ from the scheme's (the formula is negative for M = 1).
    std::optional<double> data_mach;
};

struct Preset {
    std::string name;
    GridSpec grid;
    EnergyModel model;
    InitialData initial;
    SchemeParams params;
    NewtonConfig solver;
    long steps = 0;
    double t_final = 0.0;
    /// Exact density profile in physical coordinates, when one is known.
    std::function<double(double)> exact_density;
    std::string notes;
};

std::vector<std::string> preset_names();

/// Throws std::invalid_argument for an unknown name or an incompatible K.
Preset make_preset(const std::string& name, const PresetOptions& options = {});

/// Solves W'(rho) - gamma Lap_h rho = lambda with sum(rho) fixed to sum(guess),
/// symmetric ghosts. Throws SolverDiverged when the bordered Newton iteration fails.
ScalarField discrete_equilibrium(const ScalarField& guess, const EnergyModel& model, double tol = 1e-12,
                                 int max_iter = 100);

/// Spread of W'(rho) - gamma Lap_h rho over the nodes (zero for exact equilibria).
double equilibrium_defect(const ScalarField& rho, const EnergyModel& model);

}  // namespace ekap
