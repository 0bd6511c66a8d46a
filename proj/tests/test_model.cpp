#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ekap/model.hpp"

using namespace ekap;

namespace {

// Written out from the factored double well, independent of the split.
double well(double r) { return (r - 1) * (r - 1) * (r - 2) * (r - 2); }
double well_slope(double r) { return 2 * (r - 1) * (r - 2) * (2 * r - 3); }

}  // namespace

TEST_CASE("quartic well values") {
    const EnergyModel m = quartic_double_well();
    CHECK(m.W(1.0) == doctest::Approx(0.0));
    CHECK(m.W(2.0) == doctest::Approx(0.0));
    CHECK(m.W(1.5) == doctest::Approx(0.0625));
    CHECK(m.dW(1.5) == doctest::Approx(0.0));
    CHECK(m.W(3.0) == doctest::Approx(4.0));
    CHECK(m.dW(3.0) == doctest::Approx(12.0));
}

TEST_CASE("split matches the factored well at sampled densities") {
    const EnergyModel m = quartic_double_well();
    for (int k = 0; k < 1000; ++k) {
        const double r = 0.25 + 3.75 * k / 999.0;
        CHECK(std::abs(m.W(r) - well(r)) <= 1e-12 * std::max(1.0, well(r)));
        CHECK(std::abs(m.dW(r) - well_slope(r)) <= 1e-12 * std::max(1.0, std::abs(well_slope(r))));
    }
}

TEST_CASE("derivatives are consistent and both parts convex") {
    const EnergyModel m = quartic_double_well();
    const double eps = 1e-5;
    for (double r : {0.3, 0.9, 1.5, 2.2, 3.7}) {
        CHECK(m.dU(r) == doctest::Approx((m.U(r + eps) - m.U(r - eps)) / (2 * eps)).epsilon(1e-8));
        CHECK(m.dV(r) == doctest::Approx((m.V(r + eps) - m.V(r - eps)) / (2 * eps)).epsilon(1e-8));
        CHECK(m.d2U(r) == doctest::Approx((m.dU(r + eps) - m.dU(r - eps)) / (2 * eps)).epsilon(1e-8));
        CHECK(m.d2V(r) == doctest::Approx((m.dV(r + eps) - m.dV(r - eps)) / (2 * eps)).epsilon(1e-8));
        CHECK(m.d2U(r) >= 26.0);
        CHECK(m.d2V(r) > 0.0);
    }
    CHECK(m.kappa_v == doctest::Approx(18.0));
    CHECK(m.admissible(0.25));
    CHECK_FALSE(m.admissible(4.5));
}

TEST_CASE("pressure") {
    const EnergyModel m = quartic_double_well();
    CHECK(pressure(m, 1.0) == doctest::Approx(0.0));
    CHECK(pressure(m, 3.0) == doctest::Approx(32.0));
    const double r = 1.5, eps = 1e-5;
    const double fd = (pressure(m, r + eps) - pressure(m, r - eps)) / (2 * eps);
    CHECK(std::abs(fd - r * m.d2W(r)) <= 1e-6);
    CHECK_THROWS_AS(pressure(m, 0.0), std::domain_error);
    CHECK_THROWS_AS(pressure(m, -1.0), std::domain_error);
}
