#include "ekap/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "ekap/assembly.hpp"
#include "ekap/operators.hpp"

namespace ekap {

namespace {

ScalarField map(const ScalarField& f, const ScalarFn& fn) {
    ScalarField out(f.grid());
    for (std::size_t k = 0; k < f.size(); ++k) out[k] = fn(f[k]);
    return out;
}

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
    ScalarField out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] *= b[k];
    return out;
}

double coupling(const SchemeParams& p) { return p.tau * p.tau / (p.mach * p.mach); }

/// div_h(rho grad_h f), ghosts: f symmetric, rho grad f antisymmetric.
ScalarField weighted_div_grad(const ScalarField& rho, const ScalarField& f) {
    return div_centered(scale(rho, grad_centered(f, Parity::symmetric)), Parity::antisymmetric);
}

/// sum_d D_d diag(rho) G_d.
SparseMatrix assemble_weighted_div_grad(const ScalarField& rho) {
    const GridSpec& g = rho.grid();
    const SparseMatrix R = diagonal(rho);
    SparseMatrix A(static_cast<Eigen::Index>(g.size()), static_cast<Eigen::Index>(g.size()));
    for (int d = 0; d < g.dim(); ++d) {
        const SparseMatrix G = assemble_centered_difference(g, d, Parity::symmetric);
        const SparseMatrix D = assemble_centered_difference(g, d, Parity::antisymmetric);
        A += SparseMatrix(D * SparseMatrix(R * G));
    }
    return A;
}

std::pair<int, int> node_of(const GridSpec& g, std::size_t k) {
    if (g.dim() == 1) return {static_cast<int>(k), 0};
    const auto n = static_cast<std::size_t>(g.n());
    return {static_cast<int>(k / n), static_cast<int>(k % n)};
}

}  // namespace

void SchemeParams::validate() const {
    if (!(mach > 0.0)) throw std::invalid_argument("SchemeParams: Mach number must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("SchemeParams: timestep must be positive");
    if (const auto* p = std::get_if<ProportionalViscosity>(&viscosity); p && !(p->v_floor >= 0.0))
        throw std::invalid_argument("SchemeParams: v_floor must be nonnegative");
    if (const auto* f = std::get_if<FixedViscosity>(&viscosity); f && !(f->mu >= 0.0))
        throw std::invalid_argument("SchemeParams: viscosity must be nonnegative");
}

double SchemeResiduals::max() const { return std::max({continuity, momentum, chemical_potential}); }

void require_positive(const ScalarField& rho, const char* what) {
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (!(rho[k] > 0.0)) {
            const auto [i, j] = node_of(rho.grid(), k);
            std::ostringstream msg;
            msg << what << ": nonpositive density " << rho[k] << " at node (" << i << ", " << j << ")";
            throw PositivityFailure(msg.str(), i, j, rho[k]);
        }
    }
}

double viscosity(const SchemeParams& params, const State& state) {
    if (const auto* f = std::get_if<FixedViscosity>(&params.viscosity)) return f->mu;
    const auto& p = std::get<ProportionalViscosity>(params.viscosity);
    return state.grid().h() * std::max(state.v.max_norm(), p.v_floor);
}

VectorField explicit_flux(const State& state, double tau, double mu_h) {
    VectorField flux = scale(state.rho, state.v);
    const VectorField adv = div_advection(state.rho, state.v);
    const VectorField lap = laplacian5(state.v, Parity::antisymmetric);
    for (int d = 0; d < flux.dim(); ++d)
        for (std::size_t k = 0; k < state.rho.size(); ++k) flux[d][k] += -tau * adv[d][k] + mu_h * tau * lap[d][k];
    return flux;
}

ScalarField chemical_potential(const ScalarField& rho_new, const ScalarField& rho_old, const EnergyModel& model,
                               Variant variant) {
    const ScalarField lap = laplacian5(rho_new, Parity::symmetric);
    ScalarField out(rho_new.grid());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double r = rho_new[k];
        const double r0 = rho_old[k];
        const double implicit_part =
            variant == Variant::newton ? model.dU(r) : model.dU(r0) + model.d2U(r0) * (r - r0);
        out[k] = implicit_part - model.dV(r0) - model.gamma * lap[k];
    }
    return out;
}

ResidualFn density_residual(const State& state, const VectorField& flux, const SchemeParams& params,
                            const EnergyModel& model) {
    auto rhs = std::make_shared<ScalarField>(state.rho - params.tau * div_centered(flux, Parity::antisymmetric));
    auto rho_old = std::make_shared<ScalarField>(state.rho);
    const double c = coupling(params);
    const Variant variant = params.variant;
    return [rhs, rho_old, c, variant, model](const ScalarField& x) {
        const ScalarField lambda = chemical_potential(x, *rho_old, model, variant);
        ScalarField r = x - c * weighted_div_grad(*rho_old, lambda);
        r -= *rhs;
        return r;
    };
}

JacobianFn density_jacobian(const State& state, const SchemeParams& params, const EnergyModel& model) {
    const GridSpec g = state.grid();
    auto rho_old = std::make_shared<ScalarField>(state.rho);
    auto A = std::make_shared<SparseMatrix>(assemble_weighted_div_grad(state.rho));
    auto AL = std::make_shared<SparseMatrix>(*A * assemble_laplacian(g, Parity::symmetric));
    const double c = coupling(params);
    const Variant variant = params.variant;
    return [g, rho_old, A, AL, c, variant, model](const ScalarField& x) {
        const ScalarField curvature = map(variant == Variant::newton ? x : *rho_old, model.d2U);
        SparseMatrix J = *A * diagonal(curvature);
        J -= model.gamma * *AL;
        J *= -c;
        for (Eigen::Index k = 0; k < J.rows(); ++k) J.coeffRef(k, k) += 1.0;
        auto apply = [rho_old, curvature, c, gamma = model.gamma](const ScalarField& d) {
            ScalarField inner = hadamard(curvature, d);
            inner -= gamma * laplacian5(d, Parity::symmetric);
            return d - c * weighted_div_grad(*rho_old, inner);
        };
        return SparseOperator(g, apply, std::move(J));
    };
}

DensityStep implicit_density_step(const State& state, const VectorField& flux, const SchemeParams& params,
                                  const EnergyModel& model, const NewtonConfig& cfg) {
    require_positive(state.rho, "implicit density step");
    SchemeParams p = params;
    p.variant = Variant::newton;
    const NewtonResult res = newton_solve(density_residual(state, flux, p, model), density_jacobian(state, p, model),
                                          state.rho, cfg);
    require_positive(res.solution, "implicit density step");
    ScalarField lambda = chemical_potential(res.solution, state.rho, model, Variant::newton);
    return {res.solution, std::move(lambda), res.iterations, res.residual};
}

DensityStep linearized_density_step(const State& state, const VectorField& flux, const SchemeParams& params,
                                    const EnergyModel& model, const NewtonConfig& cfg) {
    require_positive(state.rho, "linearized density step");
    SchemeParams p = params;
    p.variant = Variant::linearized;
    const ResidualFn residual = density_residual(state, flux, p, model);
    const SparseOperator J = density_jacobian(state, p, model)(state.rho);
    const ScalarField r0 = residual(state.rho);
    ScalarField rho = state.rho - linear_solve(J, r0, cfg.linear_tol, cfg.linear_method);
    const double rn = residual(rho).max_abs();
    if (!std::isfinite(rn)) throw NumericalBlowup("linearized density step: non-finite residual");
    require_positive(rho, "linearized density step");
    ScalarField lambda = chemical_potential(rho, state.rho, model, Variant::linearized);
    return {std::move(rho), std::move(lambda), 1, rn};
}

VectorField velocity_update(const State& state, const ScalarField& rho_new, const ScalarField& lambda_new,
                            const VectorField& flux, const SchemeParams& params) {
    require_positive(rho_new, "velocity update");
    const VectorField grad = grad_centered(lambda_new, Parity::symmetric);
    const double s = params.tau / (params.mach * params.mach);
    VectorField v(state.grid());
    for (int d = 0; d < v.dim(); ++d)
        for (std::size_t k = 0; k < rho_new.size(); ++k)
            v[d][k] = (flux[d][k] - state.rho[k] * s * grad[d][k]) / rho_new[k];
    return v;
}

SchemeResiduals scheme_residuals(const State& old_state, const State& new_state, const SchemeParams& params,
                                 const EnergyModel& model, double mu_h) {
    const double tau = params.tau;
    SchemeResiduals out;

    const VectorField m_new = scale(new_state.rho, new_state.v);
    ScalarField cont = new_state.rho - old_state.rho;
    cont += tau * div_centered(m_new, Parity::antisymmetric);
    out.continuity = cont.max_abs();

    const VectorField m_old = scale(old_state.rho, old_state.v);
    const VectorField adv = div_advection(old_state.rho, old_state.v);
    const VectorField grad = grad_centered(new_state.lambda, Parity::symmetric);
    const VectorField lap = laplacian5(old_state.v, Parity::antisymmetric);
    const double s = tau / (params.mach * params.mach);
    for (int d = 0; d < m_new.dim(); ++d)
        for (std::size_t k = 0; k < m_new[d].size(); ++k) {
            const double r = m_new[d][k] - m_old[d][k] + tau * adv[d][k] + old_state.rho[k] * s * grad[d][k] -
                             mu_h * tau * lap[d][k];
            out.momentum = std::max(out.momentum, std::abs(r));
        }

    const ScalarField lam = chemical_potential(new_state.rho, old_state.rho, model, params.variant);
    out.chemical_potential = (new_state.lambda - lam).max_abs();
    return out;
}

StepDiagnostics describe(const State& state, const EnergyModel& model, const SchemeParams& params) {
    StepDiagnostics d;
    d.t = state.t;
    d.n = state.n;
    d.mass = mass(state.rho);
    d.total_energy = total_energy(state, model, params.mach);
    d.kinetic_energy = kinetic_energy(state);
    d.min_density = state.rho.min();
    d.cfl_ratio = cfl_ratio(state.rho, state.v, params.tau);
    d.mu_h = viscosity(params, state);
    return d;
}

std::pair<State, StepDiagnostics> advance(const State& state, const SchemeParams& params, const EnergyModel& model,
                                          const NewtonConfig& cfg) {
    params.validate();
    require_positive(state.rho, "advance");
    std::vector<std::string> warnings;

    const double mu_h = viscosity(params, state);
    const double cfl = cfl_ratio(state.rho, state.v, params.tau);
    if (cfl >= 1.0 && params.cfl_monitor != CflMonitor::off) {
        std::ostringstream msg;
        msg << "step " << state.n << ": timestep exceeds the kinetic-energy bound (ratio " << cfl << ")";
        if (params.cfl_monitor == CflMonitor::abort) throw CflViolation(msg.str());
        warnings.push_back(msg.str());
    }

    const VectorField flux = explicit_flux(state, params.tau, mu_h);
    DensityStep step = params.variant == Variant::newton ? implicit_density_step(state, flux, params, model, cfg)
                                                         : linearized_density_step(state, flux, params, model, cfg);
    VectorField v = velocity_update(state, step.rho, step.lambda, flux, params);

    State next(std::move(step.rho), std::move(v));
    next.lambda = std::move(step.lambda);
    next.t = state.t + params.tau;
    next.n = state.n + 1;

    StepDiagnostics d = describe(next, model, params);
    d.cfl_ratio = cfl;
    d.mu_h = mu_h;
    d.newton_iters = step.iterations;
    d.max_residual = scheme_residuals(state, next, params, model, mu_h).max();
    d.energy_step_ratio = energy_step_ratio(params.tau, state.rho, state.v, next.rho, next.v);
    if (next.rho.min() < model.rho_lo || next.rho.max() > model.rho_hi) {
        std::ostringstream msg;
        msg << "step " << next.n << ": density range [" << next.rho.min() << ", " << next.rho.max()
            << "] leaves the admissible range [" << model.rho_lo << ", " << model.rho_hi << "]";
        warnings.push_back(msg.str());
    }
    d.warnings = std::move(warnings);
    return {std::move(next), std::move(d)};
}

}  // namespace ekap
