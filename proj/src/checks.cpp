#include "ekap/checks.hpp"

#include <algorithm>
#include <cmath>

#include "ekap/operators.hpp"

namespace ekap {

namespace {

double rel_defect(double lhs, double rhs, double scale) {
    const double denom = std::max({std::abs(lhs), std::abs(rhs), scale, 1e-300});
    return std::abs(lhs - rhs) / denom;
}

GridSpec grid_for(int dim, int K) { return GridSpec::unit(dim, K); }

IdentityReport make_report(const char* name, int dim, int K, int cases, double tol) {
    IdentityReport r;
    r.name = name;
    r.dim = dim;
    r.K = K;
    r.cases = cases;
    r.tolerance = tol;
    return r;
}

}  // namespace

ScalarField random_scalar(const GridSpec& grid, double lo, double hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField f(grid);
    for (double& v : f.values()) v = dist(rng);
    return f;
}

VectorField random_vector(const GridSpec& grid, double lo, double hi, std::mt19937_64& rng) {
    VectorField V(grid);
    for (int d = 0; d < grid.dim(); ++d) V[d] = random_scalar(grid, lo, hi, rng);
    return V;
}

double edge_form(const VectorField& a, const VectorField& b) {
    const GridSpec& g = a.grid();
    const int K = g.K();
    const double s = 1.0 / (g.h() * g.h());
    double sum = 0.0;
    for (int c = 0; c < a.dim(); ++c) {
        const ScalarField& x = a[c];
        const ScalarField& y = b[c];
        if (g.dim() == 1) {
            for (int i = 0; i < K; ++i) sum += (x(i + 1) - x(i)) * (y(i + 1) - y(i));
            continue;
        }
        for (int i = 0; i <= K; ++i) {
            for (int j = 0; j <= K; ++j) {
                if (i < K) sum += (x(i + 1, j) - x(i, j)) * (y(i + 1, j) - y(i, j));
                if (j < K) sum += (x(i, j + 1) - x(i, j)) * (y(i, j + 1) - y(i, j));
            }
        }
    }
    return s * sum;
}

double boundary_face_form(const VectorField& a, const VectorField& b) {
    const GridSpec& g = a.grid();
    const int K = g.K();
    const double s = 2.0 / (g.h() * g.h());
    double sum = 0.0;
    for (int c = 0; c < a.dim(); ++c) {
        const ScalarField& x = a[c];
        const ScalarField& y = b[c];
        if (g.dim() == 1) {
            sum += x(0) * y(0) + x(K) * y(K);
            continue;
        }
        for (int m = 0; m <= K; ++m) {
            sum += x(0, m) * y(0, m) + x(K, m) * y(K, m);
            sum += x(m, 0) * y(m, 0) + x(m, K) * y(m, K);
        }
    }
    return s * sum;
}

IdentityReport check_compatibility(int dim, int K, int cases, std::uint64_t seed, double tol) {
    IdentityReport r = make_report("compatibility", dim, K, cases, tol);
    const GridSpec g = grid_for(dim, K);
    std::mt19937_64 rng(seed);
    for (int n = 0; n < cases; ++n) {
        const ScalarField rho = random_scalar(g, 0.5, 2.0, rng);
        const VectorField V = random_vector(g, -1.0, 1.0, rng);
        const VectorField adv = div_advection(rho, V);
        const ScalarField dm = div_centered(scale(rho, V), Parity::antisymmetric);
        double lhs = 0.0, rhs = 0.0, mag = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            double a = 0.0, v2 = 0.0;
            for (int d = 0; d < dim; ++d) {
                a += adv[d][k] * V[d][k];
                v2 += V[d][k] * V[d][k];
            }
            const double b = 0.5 * v2 * dm[k];
            lhs += a;
            rhs += b;
            mag += std::abs(a) + std::abs(b);
        }
        r.worst = std::max(r.worst, rel_defect(lhs, rhs, mag));
    }
    r.passed = r.worst <= tol;
    return r;
}

IdentityReport check_inverse_inequality(int dim, int K, int cases, std::uint64_t seed) {
    IdentityReport r = make_report("inverse_inequality", dim, K, cases, 1.0);
    const GridSpec g = grid_for(dim, K);
    std::mt19937_64 rng(seed);
    for (int n = 0; n < cases; ++n) {
        const VectorField V = random_vector(g, -1.0, 1.0, rng);
        const double lhs = jacobian_forward(V).sum_squared();
        const double rhs = 8.0 / (g.h() * g.h()) * dot(V, V);
        r.worst = std::max(r.worst, lhs / rhs);
    }
    r.passed = r.worst <= 1.0;
    return r;
}

IdentityReport check_sbp(int dim, int K, int cases, std::uint64_t seed, bool bilinear, double tol) {
    IdentityReport r = make_report(bilinear ? "sbp_bilinear" : "sbp_energy", dim, K, cases, tol);
    const GridSpec g = grid_for(dim, K);
    std::mt19937_64 rng(seed);
    for (int n = 0; n < cases; ++n) {
        const VectorField a = random_vector(g, -1.0, 1.0, rng);
        const VectorField b = bilinear ? random_vector(g, -1.0, 1.0, rng) : a;
        const double lhs = -dot(laplacian5(a, Parity::antisymmetric), b);
        const double edges = edge_form(a, b);
        const double faces = boundary_face_form(a, b);
        r.worst = std::max(r.worst, rel_defect(lhs, edges + faces, std::abs(edges) + std::abs(faces)));
    }
    r.passed = r.worst <= tol;
    return r;
}

IdentityReport check_telescoping(int dim, int K, int cases, std::uint64_t seed, double tol) {
    IdentityReport r = make_report("telescoping", dim, K, cases, tol);
    const GridSpec g = grid_for(dim, K);
    std::mt19937_64 rng(seed);
    for (int n = 0; n < cases; ++n) {
        const VectorField F = random_vector(g, -1.0, 1.0, rng);
        const ScalarField dv = div_centered(F, Parity::antisymmetric);
        double mag = 0.0;
        for (double x : dv.values()) mag += std::abs(x);
        r.worst = std::max(r.worst, std::abs(dv.sum()) / std::max(mag, 1e-300));
    }
    r.passed = r.worst <= tol;
    return r;
}

std::vector<IdentityReport> run_identity_suite(int cases, std::uint64_t seed) {
    std::vector<IdentityReport> out;
    std::uint64_t s = seed;
    for (int dim : {1, 2}) {
        for (int K : {4, 8, 16}) {
            out.push_back(check_compatibility(dim, K, cases, ++s));
            out.push_back(check_inverse_inequality(dim, K, cases, ++s));
            out.push_back(check_sbp(dim, K, cases, ++s, false));
            out.push_back(check_sbp(dim, K, cases, ++s, true));
            out.push_back(check_telescoping(dim, K, cases, ++s));
        }
    }
    return out;
}

}  // namespace ekap
