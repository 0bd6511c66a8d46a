#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "ekap/presets.hpp"

using namespace ekap;

TEST_CASE("two-diamond datum") {
    const Preset p = make_preset("exp51");
    CHECK(p.grid.dim() == 2);
    CHECK(p.grid.K() == 40);
    CHECK(p.grid.h() == doctest::Approx(2.5e-2));
    CHECK(p.params.mach == 1.0);
    CHECK(p.params.tau == 5e-4);
    CHECK(p.model.gamma == 9e-4);
    CHECK(p.steps == 2000);
    CHECK(p.initial.v.max_norm() == 0.0);
    const std::set<double> values(p.initial.rho.values().begin(), p.initial.rho.values().end());
    CHECK(values == std::set<double>{1.0, 2.0, 3.0});
    CHECK(p.initial.rho(10, 10) == 3.0);
    CHECK(p.initial.rho(30, 30) == 2.0);
    CHECK(p.initial.rho(10, 30) == 1.0);
    // diamond tip on the diagonal lattice
    CHECK(p.initial.rho(0, 10) == 3.0);
    CHECK(p.initial.rho(0, 11) == 1.0);
}

TEST_CASE("stationary tanh profile") {
    const Preset p = make_preset("exp54", {.K = 40});
    CHECK(p.params.mach == 0.05);
    CHECK(p.params.tau == doctest::Approx(p.grid.h() / 5));
    CHECK(p.solver.tol_residual == 1e-11);
    CHECK(p.steps == 25);
    CHECK(p.grid.lo() == -1.0);
    CHECK(p.grid.hi() == 1.0);
    const double gamma = p.model.gamma;
    for (int i = 0; i <= 40; ++i) {
        const double x = -1.0 + i * 0.05;
        CHECK(p.initial.rho(i) == doctest::Approx(1.5 + 0.5 * std::tanh(x / std::sqrt(2 * gamma))).epsilon(1e-14));
        CHECK(p.exact_density(x) == doctest::Approx(p.initial.rho(i)).epsilon(1e-14));
    }
    MESSAGE("equilibrium defect of the sampled profile at K=40: ", equilibrium_defect(p.initial.rho, p.model));
}

TEST_CASE("front data") {
    for (const char* name : {"exp53", "exp55"}) {
        const Preset p = make_preset(name);
        CHECK(p.grid.K() == 80);
        CHECK(p.params.tau == doctest::Approx(p.grid.h() / 100));
        CHECK(p.steps == 50);
        CHECK(static_cast<double>(p.steps) * p.params.tau == doctest::Approx(0.0125));
        CHECK(p.initial.rho(40) == doctest::Approx(1.5));
        CHECK(p.initial.rho(80) == doctest::Approx(1.5 + std::tanh(2.0 / std::sqrt(1e-3))));
    }
    CHECK(make_preset("exp53").params.variant == Variant::newton);
    CHECK(make_preset("exp55").params.variant == Variant::linearized);
    CHECK(make_preset("exp53", {.variant = Variant::linearized}).params.variant == Variant::linearized);
}

TEST_CASE("bubble amplitude") {
    PresetOptions o;
    o.K = 40;
    o.mach = 1e-3;
    const Preset p = make_preset("exp52", o);
    // far corner r = sqrt(2)/2 and the centre r = 0
    const double arg = std::sqrt(2.0 / 9e-4);
    CHECK(p.initial.rho(20, 20) == doctest::Approx(1.5 - 0.504 * std::tanh(-0.25 * arg)).epsilon(1e-14));
    CHECK(p.initial.rho(0, 0) ==
          doctest::Approx(1.5 - 0.504 * std::tanh((std::sqrt(0.5) - 0.25) * arg)).epsilon(1e-14));
    CHECK(p.params.mach == 1e-3);
}

TEST_CASE("well-prepared bubble deviates from equilibrium by O(M^2)") {
    double defect[2];
    int k = 0;
    for (double m : {1e-1, 1e-2}) {
        PresetOptions o;
        o.K = 16;
        o.mach = m;
        o.well_prepared = true;
        const Preset p = make_preset("exp52", o);
        CHECK(p.initial.well_prepared);
        defect[k++] = equilibrium_defect(p.initial.rho, p.model);
    }
    CHECK(std::log10(defect[0] / defect[1]) == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("all presets start positive") {
    for (const auto& name : preset_names()) {
        const Preset p = make_preset(name, {.K = 16});
        CHECK(p.initial.rho.min() > 0.0);
        CHECK(p.initial.v.max_norm() == 0.0);
    }
}

TEST_CASE("invalid requests") {
    CHECK_THROWS_AS(make_preset("exp56"), std::invalid_argument);
    CHECK_THROWS_AS(make_preset("exp51", {.K = 1}), std::invalid_argument);
    CHECK_THROWS_AS(make_preset("exp51", {.mach = -1.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_preset("exp53", {.well_prepared = true}), std::invalid_argument);
    // the raw bubble formula turns negative at M = 1
    CHECK_THROWS(make_preset("exp52", {.mach = 1.0}));
}
