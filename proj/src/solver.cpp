#include "ekap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace ekap {

namespace {

using Vec = Eigen::VectorXd;

Vec to_vec(const ScalarField& f) {
    const auto s = f.values();
    return Eigen::Map<const Vec>(s.data(), static_cast<Eigen::Index>(s.size()));
}

ScalarField to_field(const GridSpec& g, const Vec& v) {
    return ScalarField(g, std::vector<double>(v.data(), v.data() + v.size()));
}

double inf_norm(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values()) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
    }
    return m;
}

ScalarField solve_direct(const SparseOperator& A, const Vec& b, double tol) {
    Eigen::SparseMatrix<double> cm = A.matrix();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(cm);
    if (lu.info() != Eigen::Success) throw LinearSolveFailed("sparse LU factorization failed", 1.0);
    Vec x = lu.solve(b);
    const double bn = b.norm();
    const double rel = bn > 0.0 ? (cm * x - b).norm() / bn : (cm * x).norm();
    if (lu.info() != Eigen::Success || !std::isfinite(rel)) throw LinearSolveFailed("sparse LU solve failed", rel);
    if (rel > tol) {
        // one step of iterative refinement recovers most of the round-off loss
        x += lu.solve(b - cm * x);
        const double rel2 = (cm * x - b).norm() / bn;
        if (rel2 > tol) throw LinearSolveFailed("sparse LU residual above tolerance", rel2);
    }
    return to_field(A.grid(), x);
}

ScalarField solve_krylov(const SparseOperator& A, const Vec& b, double tol) {
    Eigen::BiCGSTAB<SparseMatrix, Eigen::DiagonalPreconditioner<double>> solver;
    solver.setTolerance(tol);
    solver.setMaxIterations(std::max<Eigen::Index>(1000, 4 * b.size()));
    solver.compute(A.matrix());
    const Vec x = solver.solve(b);
    const double bn = b.norm();
    const double rel = bn > 0.0 ? (A.matrix() * x - b).norm() / bn : (A.matrix() * x).norm();
    if (solver.info() != Eigen::Success || !(rel <= tol)) throw LinearSolveFailed("BiCGSTAB did not converge", rel);
    return to_field(A.grid(), x);
}

}  // namespace

void NewtonConfig::validate() const {
    if (!(tol_residual > 0.0) || !(tol_step > 0.0) || !(linear_tol > 0.0))
        throw std::invalid_argument("NewtonConfig: tolerances must be positive");
    if (max_iter < 1) throw std::invalid_argument("NewtonConfig: max_iter must be at least 1");
    if (max_halvings < 0) throw std::invalid_argument("NewtonConfig: max_halvings must be nonnegative");
}

// ---------------------------------------------------------------------------

SparseOperator::SparseOperator(GridSpec grid, Apply apply, SparseMatrix matrix)
    : grid_(std::move(grid)), apply_(std::move(apply)), matrix_(std::move(matrix)) {
    matrix_.makeCompressed();
}

ScalarField SparseOperator::apply_assembled(const ScalarField& x) const {
    return to_field(grid_, matrix_ * to_vec(x));
}

int SparseOperator::max_row_nonzeros() const {
    int m = 0;
    for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
        int count = 0;
        for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it)
            if (it.value() != 0.0) ++count;
        m = std::max(m, count);
    }
    return m;
}

SparseOperator SparseOperator::identity(const GridSpec& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    SparseMatrix I(n, n);
    I.setIdentity();
    return SparseOperator(grid, [](const ScalarField& x) { return x; }, I);
}

// ---------------------------------------------------------------------------

ScalarField linear_solve(const SparseOperator& A, const ScalarField& b, double tol, LinearMethod method) {
    if (method == LinearMethod::automatic)
        method = A.grid().dim() == 1 ? LinearMethod::direct : LinearMethod::bicgstab;
    const Vec rhs = to_vec(b);
    if (rhs.norm() == 0.0) return ScalarField(A.grid(), 0.0);
    return method == LinearMethod::direct ? solve_direct(A, rhs, tol) : solve_krylov(A, rhs, tol);
}

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian, ScalarField guess,
                          const NewtonConfig& cfg) {
    cfg.validate();
    NewtonResult out{std::move(guess), 0, 0.0, {}};
    ScalarField& x = out.solution;
    ScalarField r = residual(x);
    double rn = inf_norm(r);
    if (!std::isfinite(rn)) throw NumericalBlowup("Newton: non-finite residual at the initial guess");
    out.history.push_back(rn);

    while (rn > cfg.tol_residual && out.iterations < cfg.max_iter) {
        const ScalarField dx = linear_solve(jacobian(x), r, cfg.linear_tol, cfg.linear_method);
        ++out.iterations;

        double alpha = 1.0;
        ScalarField trial = x - dx;
        ScalarField rt = residual(trial);
        double rtn = inf_norm(rt);
        if (cfg.line_search) {
            for (int k = 0; k < cfg.max_halvings && !(rtn < rn); ++k) {
                alpha *= 0.5;
                trial = x - alpha * dx;
                rt = residual(trial);
                rtn = inf_norm(rt);
            }
        }
        if (!std::isfinite(rtn)) throw NumericalBlowup("Newton: non-finite residual");

        x = std::move(trial);
        r = std::move(rt);
        rn = rtn;
        out.history.push_back(rn);
        if (alpha * dx.max_abs() <= cfg.tol_step) break;
    }

    out.residual = rn;
    if (rn > cfg.tol_residual) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "Newton: no convergence after %d iterations (residual %.3e > %.3e%s)",
                      out.iterations, rn, cfg.tol_residual,
                      out.iterations < cfg.max_iter ? ", update below tol_step" : "");
        throw SolverDiverged(msg, x, out.history);
    }
    return out;
}

ScalarField dense_oracle_solve(const ResidualFn& residual, ScalarField guess, const NewtonConfig& cfg) {
    cfg.validate();
    const std::size_t n = guess.size();
    if (n > kOracleMaxUnknowns) throw std::invalid_argument("dense_oracle_solve: problem too large");
    const GridSpec g = guess.grid();
    ScalarField x = std::move(guess);
    ScalarField r = residual(x);
    const auto N = static_cast<Eigen::Index>(n);
    for (int it = 0; it < cfg.max_iter && inf_norm(r) > 1e-3 * cfg.tol_residual; ++it) {
        Eigen::MatrixXd J(N, N);
        for (std::size_t c = 0; c < n; ++c) {
            const double eps = 1e-7 * std::max(1.0, std::abs(x[c]));
            ScalarField xp = x, xm = x;
            xp[c] += eps;
            xm[c] -= eps;
            const Vec col = (to_vec(residual(xp)) - to_vec(residual(xm))) / (2.0 * eps);
            J.col(static_cast<Eigen::Index>(c)) = col;
        }
        const Vec dx = J.partialPivLu().solve(to_vec(r));
        x -= to_field(g, dx);
        r = residual(x);
        if (!std::isfinite(inf_norm(r))) throw NumericalBlowup("dense oracle: non-finite residual");
        if (dx.lpNorm<Eigen::Infinity>() <= cfg.tol_step) break;
    }
    return x;
}

}  // namespace ekap
