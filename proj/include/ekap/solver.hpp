/// @file solver.hpp
/// @brief Newton iteration, sparse linear solves and a dense brute-force oracle.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ekap/assembly.hpp"
#include "ekap/grid.hpp"

namespace ekap {

enum class LinearMethod {
    /// SparseLU in 1D, BiCGSTAB with a diagonal preconditioner in 2D.
    automatic,
    direct,
    bicgstab,
};

struct NewtonConfig {
    double tol_residual = 1e-7;
    double tol_step = 1e-12;
    int max_iter = 50;
    double linear_tol = 1e-10;
    bool line_search = true;
    int max_halvings = 20;
    LinearMethod linear_method = LinearMethod::automatic;

    /// Throws std::invalid_argument on nonpositive tolerances or max_iter < 1.
    void validate() const;
};

/// Linear operator over nodal fields, held both matrix-free and assembled.
class SparseOperator {
public:
    using Apply = std::function<ScalarField(const ScalarField&)>;

    SparseOperator(GridSpec grid, Apply apply, SparseMatrix matrix);

    const GridSpec& grid() const { return grid_; }
    ScalarField apply(const ScalarField& x) const { return apply_(x); }
    /// Product with the assembled matrix.
    ScalarField apply_assembled(const ScalarField& x) const;
    const SparseMatrix& matrix() const { return matrix_; }
    int max_row_nonzeros() const;

    static SparseOperator identity(const GridSpec& grid);

private:
    GridSpec grid_;
    Apply apply_;
    SparseMatrix matrix_;
};

struct SolverDiverged : std::runtime_error {
    SolverDiverged(const std::string& what, ScalarField last, std::vector<double> history)
        : std::runtime_error(what), last_iterate(std::move(last)), residual_history(std::move(history)) {}
    ScalarField last_iterate;
    std::vector<double> residual_history;
};

struct NumericalBlowup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LinearSolveFailed : std::runtime_error {
    LinearSolveFailed(const std::string& what, double residual)
        : std::runtime_error(what), relative_residual(residual) {}
    double relative_residual;
};

using ResidualFn = std::function<ScalarField(const ScalarField&)>;
using JacobianFn = std::function<SparseOperator(const ScalarField&)>;

struct NewtonResult {
    ScalarField solution;
    int iterations = 0;
    /// Infinity norm of the residual at the returned solution.
    double residual = 0.0;
    std::vector<double> history;
};

/// Newton with an optional residual-halving line search. Converged means
/// ||r(x)||_inf <= tol_residual; otherwise SolverDiverged is thrown.
NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, ScalarField guess,
                          const NewtonConfig& cfg);

/// Solves A x = b with ||Ax - b||_2 <= tol ||b||_2.
ScalarField linear_solve(const SparseOperator& A, const ScalarField& b, double tol,
                         LinearMethod method = LinearMethod::automatic);

/// Newton with a forward-difference dense Jacobian and dense LU.
/// Limited to (K+1)^dim <= 512 unknowns.
ScalarField dense_oracle_solve(const ResidualFn& residual, ScalarField guess, const NewtonConfig& cfg);

inline constexpr std::size_t kOracleMaxUnknowns = 512;

}  // namespace ekap
