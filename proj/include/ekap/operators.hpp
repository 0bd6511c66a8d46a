/// @file operators.hpp
/// @brief Discrete differential operators on the node grid.
///
/// Every operator extends its input by one ghost layer with the parity given
/// by the caller and evaluates the stencil at all nodes 0..K. In 1D the
/// j-direction terms are dropped.

#pragma once

#include <vector>

#include "ekap/grid.hpp"

namespace ekap {

/// Forward-difference Jacobian D_h V, defined on {0..K-1}^dim.
/// entry(a,b) = (V_a(x + h e_b) - V_a(x)) / h.
class TensorField {
public:
    explicit TensorField(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    /// Nodes per direction on the stencil domain, K.
    int n() const { return grid_.K(); }
    std::size_t size() const;

    double operator()(int a, int b, int i, int j = 0) const { return data_[offset(a, b) + node(i, j)]; }
    double& operator()(int a, int b, int i, int j = 0) { return data_[offset(a, b) + node(i, j)]; }

    /// Sum over the stencil domain of the squared Frobenius norm.
    double sum_squared() const;
    /// Sum over the stencil domain of A:B.
    double contract(const TensorField& other) const;

private:
    std::size_t node(int i, int j) const;
    std::size_t offset(int a, int b) const;

    GridSpec grid_;
    std::vector<double> data_;
};

/// (f(i+1) - f(i-1)) / 2h per direction.
VectorField grad_centered(const ScalarField& f, Parity parity);

/// (f(i+1) - f(i)) / h per direction; at i = K the ghost value is used.
VectorField grad_forward(const ScalarField& f, Parity parity);

/// Centered divergence (F1(i+1) - F1(i-1) + F2(j+1) - F2(j-1)) / 2h.
ScalarField div_centered(const VectorField& F, Parity parity);

/// Forward-difference Jacobian; reads no ghosts.
TensorField jacobian_forward(const VectorField& V);

/// 5-point Laplacian (3-point in 1D).
ScalarField laplacian5(const ScalarField& f, Parity parity);
/// Componentwise Laplacian.
VectorField laplacian5(const VectorField& V, Parity parity);

/// Advection divergence of rho v (x) v built from averaged face fluxes:
///   1/(4h) [ (v_i + v_{i+1})(m_i + m_{i+1}) - (v_i + v_{i-1})(m_i + m_{i-1}) + y-terms ]
/// with m = rho u in x and m = rho w in y. rho is extended symmetrically and
/// v antisymmetrically. Summed against v it reproduces 1/2 |v|^2 div_h(rho v)
/// exactly, which is what makes the kinetic-energy estimate close.
VectorField div_advection(const ScalarField& rho, const VectorField& V);

/// Pointwise product rho * V.
VectorField scale(const ScalarField& rho, const VectorField& V);

/// Sum over all nodes of f * g.
double dot(const ScalarField& f, const ScalarField& g);
/// Sum over all nodes of F . G.
double dot(const VectorField& F, const VectorField& G);

}  // namespace ekap
