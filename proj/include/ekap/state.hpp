/// @file state.hpp
/// @brief Time-level state of the scheme.

#pragma once

#include "ekap/grid.hpp"

namespace ekap {

struct State {
    ScalarField rho;
    VectorField v;
    /// Chemical potential from the last implicit solve (zero before the first step).
    ScalarField lambda;
    double t = 0.0;
    long n = 0;

    State(ScalarField density, VectorField velocity)
        : rho(std::move(density)), v(std::move(velocity)), lambda(rho.grid()) {}

    const GridSpec& grid() const { return rho.grid(); }
};

}  // namespace ekap
