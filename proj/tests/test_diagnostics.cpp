#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "ekap/checks.hpp"
#include "ekap/diagnostics.hpp"

using namespace ekap;

TEST_CASE("energies of constant states") {
    const EnergyModel m = quartic_double_well();
    for (int K : {4, 9}) {
        const GridSpec g = GridSpec::unit(2, K);
        const double nodes = (K + 1.0) * (K + 1.0);
        CHECK(total_energy(ScalarField(g, 1.0), VectorField(g), m, 1.0) == doctest::Approx(0.0));
        CHECK(total_energy(ScalarField(g, 3.0), VectorField(g), m, 1.0) == doctest::Approx(4.0 * nodes));
        CHECK(total_energy(ScalarField(g, 3.0), VectorField(g), m, 0.5) == doctest::Approx(16.0 * nodes));
        CHECK(total_energy_weighted(ScalarField(g, 3.0), VectorField(g), m, 1.0) ==
              doctest::Approx(4.0 * nodes * g.h() * g.h()));

        VectorField v(g);
        v[0] = ScalarField(g, 1.0);
        CHECK(kinetic_energy(ScalarField(g, 2.0), VectorField(g)) == 0.0);
        CHECK(kinetic_energy(ScalarField(g, 2.0), v) == doctest::Approx(nodes));
    }
}

TEST_CASE("gradient part of the energy uses forward differences") {
    // 1D, K=2, h=1/2, rho = (1, 2, 2): one jump of 1 -> gamma/2 * (1/h)^2 = 2 gamma
    const EnergyModel m = quartic_double_well(0.01);
    const GridSpec g = GridSpec::unit(1, 2);
    const ScalarField rho(g, {1.0, 2.0, 2.0});
    CHECK(total_energy(rho, VectorField(g), m, 1.0) == doctest::Approx(2.0 * 0.01));
}

TEST_CASE("energies are invariant under relabeling") {
    std::mt19937_64 rng(7);
    const GridSpec g = GridSpec::unit(2, 6);
    const ScalarField rho = random_scalar(g, 0.5, 3.0, rng);
    const VectorField v = random_vector(g, -1.0, 1.0, rng);
    ScalarField rho_t(g);
    VectorField v_t(g);
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
            rho_t(j, i) = rho(i, j);
            v_t[0](j, i) = v[1](i, j);
            v_t[1](j, i) = v[0](i, j);
        }
    CHECK(kinetic_energy(rho_t, v_t) == doctest::Approx(kinetic_energy(rho, v)).epsilon(1e-14));
    const EnergyModel m = quartic_double_well();
    CHECK(total_energy(rho_t, v_t, m, 0.3) == doctest::Approx(total_energy(rho, v, m, 0.3)).epsilon(1e-14));
}

TEST_CASE("l2 error") {
    const GridSpec g = GridSpec::unit(1, 2);
    const ScalarField ref(g, {0.0, 1.0, 2.0});
    CHECK(l2_error(ref, ref, ErrorMode::absolute) == 0.0);
    const ScalarField f(g, {1.0, 2.0, 3.0});
    CHECK(l2_error(f, ref, ErrorMode::absolute) == doctest::Approx(std::sqrt(1.5)));
    CHECK(l2_error(f, ref, ErrorMode::relative) == doctest::Approx(std::sqrt(1.5) / std::sqrt(0.5 * 5.0)));
    CHECK_THROWS_AS(l2_error(f, ScalarField(g), ErrorMode::relative), std::domain_error);
    CHECK_THROWS_AS(l2_error(f, ScalarField(GridSpec::unit(1, 3)), ErrorMode::absolute), std::invalid_argument);
}

TEST_CASE("l2 error against a nested reference samples coincident nodes") {
    const GridSpec coarse = GridSpec::unit(2, 4), fine = GridSpec::unit(2, 12);
    ScalarField ref(fine);
    for (int i = 0; i <= 12; ++i)
        for (int j = 0; j <= 12; ++j) ref(i, j) = std::sin(fine.coord(i)) + fine.coord(j);
    ScalarField f(coarse);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j) f(i, j) = std::sin(coarse.coord(i)) + coarse.coord(j);
    CHECK(l2_error(f, ref, ErrorMode::absolute) <= 1e-15);
    CHECK(restrict_to(ref, coarse) == f);
    CHECK_THROWS_AS(restrict_to(ref, GridSpec::unit(2, 5)), std::invalid_argument);
}

TEST_CASE("l2 error is a norm in absolute mode") {
    std::mt19937_64 rng(11);
    const GridSpec g = GridSpec::unit(2, 8);
    for (int c = 0; c < 50; ++c) {
        const ScalarField a = random_scalar(g, -1.0, 1.0, rng);
        const ScalarField b = random_scalar(g, -1.0, 1.0, rng);
        const ScalarField z(g);
        CHECK(l2_error(a + b, z, ErrorMode::absolute) <=
              l2_error(a, z, ErrorMode::absolute) + l2_error(b, z, ErrorMode::absolute) + 1e-15);
        CHECK(l2_error(3.0 * a, z, ErrorMode::absolute) ==
              doctest::Approx(3.0 * l2_error(a, z, ErrorMode::absolute)).epsilon(1e-14));
    }
}

TEST_CASE("experimental orders") {
    auto r = eoc({{10, 1.0}, {20, 0.5}, {40, 0.25}});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(eoc({{40, 4e-2}, {80, 1e-2}})[0] == doctest::Approx(2.0));
    // front-test density errors
    r = eoc({{40, 5.545e-2}, {80, 2.806e-2}, {160, 1.120e-2}});
    CHECK(r[0] == doctest::Approx(0.98).epsilon(0.01));
    CHECK(r[1] == doctest::Approx(1.3).epsilon(0.02));
    CHECK_THROWS_AS(eoc({{10, 1.0}, {30, 0.5}}), std::invalid_argument);
    CHECK_THROWS_AS(eoc({{10, 1.0}, {20, 0.0}}), std::invalid_argument);
}

TEST_CASE("cfl ratio") {
    const GridSpec g = GridSpec::unit(1, 4);
    const ScalarField rho(g, 1.0);
    VectorField v(g);
    CHECK(cfl_ratio(rho, v, 0.1) == 0.0);
    v[0] = ScalarField(g, 2.0);
    // bound = (h/2) * 1 / (9 + 8) with h = 1/4
    CHECK(cfl_ratio(rho, v, 0.1) == doctest::Approx(0.1 / (0.125 / 17.0)));
}
