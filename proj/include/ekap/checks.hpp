/// @file checks.hpp
/// @brief Randomized discrete identity suites (compatibility of the advection
/// operator, inverse inequality, summation by parts, divergence telescoping).
///
/// Each suite draws fields from a seeded generator and reports the worst
/// relative defect over all cases.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ekap/grid.hpp"

namespace ekap {

struct IdentityReport {
    std::string name;
    int dim = 1;
    int K = 0;
    int cases = 0;
    /// Worst relative defect; for inequalities, the worst ratio lhs/rhs.
    double worst = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

ScalarField random_scalar(const GridSpec& grid, double lo, double hi, std::mt19937_64& rng);
VectorField random_vector(const GridSpec& grid, double lo, double hi, std::mt19937_64& rng);

/// sum div_advection(rho,v).v  vs  sum 1/2|v|^2 div_h(rho v).
IdentityReport check_compatibility(int dim, int K, int cases, std::uint64_t seed, double tol = 1e-12);

/// sum_{0..K-1} |D_h v|^2 <= 8/h^2 sum_{0..K} |v|^2; worst is the largest ratio.
IdentityReport check_inverse_inequality(int dim, int K, int cases, std::uint64_t seed);

/// -sum Lap(a).b = sum over grid edges of (forward diff a).(forward diff b)
///                 + 2/h^2 sum over boundary faces of a.b
/// with antisymmetric ghosts. With b = a this is the energy form. In 1D the
/// edge sum is exactly sum_{i<K} D_h a : D_h b and the faces are the nodes 0, K.
IdentityReport check_sbp(int dim, int K, int cases, std::uint64_t seed, bool bilinear, double tol = 1e-12);

/// sum over all nodes of div_h F with antisymmetric ghosts vanishes.
IdentityReport check_telescoping(int dim, int K, int cases, std::uint64_t seed, double tol = 1e-12);

/// Full suite over K in {4,8,16}, dim in {1,2}, at least `cases` per entry.
std::vector<IdentityReport> run_identity_suite(int cases, std::uint64_t seed);

/// Edge-sum side of the summation-by-parts identity (exposed for tests).
double edge_form(const VectorField& a, const VectorField& b);
/// Boundary-face side, 2/h^2 sum_faces a.b.
double boundary_face_form(const VectorField& a, const VectorField& b);

}  // namespace ekap
