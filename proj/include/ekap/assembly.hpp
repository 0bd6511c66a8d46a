/// @file assembly.hpp
/// @brief Sparse matrix forms of the nodal stencils, with ghost rows folded in.

#pragma once

#include <Eigen/SparseCore>

#include "ekap/grid.hpp"

namespace ekap {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Centered first difference (f(+1) - f(-1)) / 2h along `direction`.
SparseMatrix assemble_centered_difference(const GridSpec& grid, int direction, Parity parity);

/// 5-point (3-point in 1D) Laplacian.
SparseMatrix assemble_laplacian(const GridSpec& grid, Parity parity);

/// Diagonal matrix from nodal values.
SparseMatrix diagonal(const ScalarField& d);

}  // namespace ekap
