/// @file model.hpp
/// @brief Double-well energy with a convex splitting W = U - V.

#pragma once

#include <functional>
#include <string>

namespace ekap {

using ScalarFn = std::function<double(double)>;

/// Free energy density W = U - V with U and V convex on the admissible range.
/// Only U', U'' and V' enter the scheme; kappa_v is reported, never used.
struct EnergyModel {
    ScalarFn U, dU, d2U;
    ScalarFn V, dV, d2V;
    /// Capillarity coefficient gamma.
    double gamma = 1e-3;
    /// Lower bound on V'' over the admissible range.
    double kappa_v = 0.0;
    double rho_lo = 0.25;
    double rho_hi = 4.0;
    std::string description;

    double W(double rho) const { return U(rho) - V(rho); }
    double dW(double rho) const { return dU(rho) - dV(rho); }
    double d2W(double rho) const { return d2U(rho) - d2V(rho); }

    bool admissible(double rho) const { return rho >= rho_lo && rho <= rho_hi; }
};

/// W = (rho-1)^2 (rho-2)^2 = (rho^4 + 13 rho^2 + 4) - (6 rho^3 + 12 rho).
/// kappa_v is 36 * kappa_floor since V'' = 36 rho has no positive lower bound on (0, inf).
EnergyModel quartic_double_well(double gamma = 1e-3, double kappa_floor = 0.5);

/// p = rho W'(rho) - W(rho). Throws std::domain_error for rho <= 0.
double pressure(const EnergyModel& model, double rho);

}  // namespace ekap
