/// @file stepper.hpp
/// @brief One timestep of the semi-implicit scheme.
///
/// A step assembles the explicit momentum flux Phi from level n, solves the
/// eliminated implicit density equation
///   rho' - (tau^2/M^2) div_h(rho^n grad_h Lambda(rho')) = rho^n - tau div_h Phi
/// with Lambda(rho') = U'(rho') - V'(rho^n) - gamma Lap_h rho', and finally
/// recovers v' = (Phi - rho^n (tau/M^2) grad_h Lambda) / rho'.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "ekap/diagnostics.hpp"
#include "ekap/grid.hpp"
#include "ekap/model.hpp"
#include "ekap/solver.hpp"
#include "ekap/state.hpp"

namespace ekap {

/// mu_h = h * max(||v^n||_inf, v_floor).
struct ProportionalViscosity {
    double v_floor = 0.05;
};

/// Constant mu_h, e.g. a physical viscosity.
struct FixedViscosity {
    double mu = 0.0;
};

using ViscosityPolicy = std::variant<ProportionalViscosity, FixedViscosity>;

enum class CflMonitor { off, warn, abort };
enum class Variant { newton, linearized };

struct SchemeParams {
    double mach = 1.0;
    double tau = 1e-3;
    ViscosityPolicy viscosity = ProportionalViscosity{};
    CflMonitor cfl_monitor = CflMonitor::warn;
    Variant variant = Variant::newton;

    void validate() const;
};

struct PositivityFailure : std::runtime_error {
    PositivityFailure(const std::string& what, int i, int j, double value)
        : std::runtime_error(what), i(i), j(j), value(value) {}
    int i, j;
    double value;
};

struct CflViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DensityStep {
    ScalarField rho;
    ScalarField lambda;
    int iterations = 0;
    double residual = 0.0;
};

/// Infinity norms of the three scheme equations evaluated on (old, new).
struct SchemeResiduals {
    double continuity = 0.0;
    double momentum = 0.0;
    double chemical_potential = 0.0;

    double max() const;
};

double viscosity(const SchemeParams& params, const State& state);

/// Phi = rho v - tau div_adv(rho v (x) v) + mu_h tau Lap_h v.
VectorField explicit_flux(const State& state, double tau, double mu_h);

/// Lambda from the density pair; the linearized variant expands U' about rho_old.
ScalarField chemical_potential(const ScalarField& rho_new, const ScalarField& rho_old, const EnergyModel& model,
                               Variant variant);

/// Residual and Jacobian of the eliminated density equation.
ResidualFn density_residual(const State& state, const VectorField& flux, const SchemeParams& params,
                            const EnergyModel& model);
JacobianFn density_jacobian(const State& state, const SchemeParams& params, const EnergyModel& model);

DensityStep implicit_density_step(const State& state, const VectorField& flux, const SchemeParams& params,
                                  const EnergyModel& model, const NewtonConfig& cfg);

/// One linear solve; the system is affine in the new density.
DensityStep linearized_density_step(const State& state, const VectorField& flux, const SchemeParams& params,
                                    const EnergyModel& model, const NewtonConfig& cfg);

VectorField velocity_update(const State& state, const ScalarField& rho_new, const ScalarField& lambda_new,
                            const VectorField& flux, const SchemeParams& params);

SchemeResiduals scheme_residuals(const State& old_state, const State& new_state, const SchemeParams& params,
                                 const EnergyModel& model, double mu_h);

/// Diagnostics of a state without a step (t, mass, energies, min density).
StepDiagnostics describe(const State& state, const EnergyModel& model, const SchemeParams& params);

std::pair<State, StepDiagnostics> advance(const State& state, const SchemeParams& params,
                                          const EnergyModel& model, const NewtonConfig& cfg);

/// Throws PositivityFailure at the first nonpositive node.
void require_positive(const ScalarField& rho, const char* what);

}  // namespace ekap
