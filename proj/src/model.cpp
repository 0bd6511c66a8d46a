#include "ekap/model.hpp"

#include <stdexcept>

namespace ekap {

EnergyModel quartic_double_well(double gamma, double kappa_floor) {
    EnergyModel m;
    m.U = [](double r) { return r * r * r * r + 13.0 * r * r + 4.0; };
    m.dU = [](double r) { return 4.0 * r * r * r + 26.0 * r; };
    m.d2U = [](double r) { return 12.0 * r * r + 26.0; };
    m.V = [](double r) { return 6.0 * r * r * r + 12.0 * r; };
    m.dV = [](double r) { return 18.0 * r * r + 12.0; };
    m.d2V = [](double r) { return 36.0 * r; };
    m.gamma = gamma;
    m.kappa_v = 36.0 * kappa_floor;
    m.rho_lo = 0.25;
    m.rho_hi = 4.0;
    m.description = "quartic double well (rho-1)^2 (rho-2)^2";
    return m;
}

double pressure(const EnergyModel& model, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("pressure: density must be positive");
    return rho * model.dW(rho) - model.W(rho);
}

}  // namespace ekap
