/// @file grid.hpp
/// @brief Cartesian node grids, nodal fields and one-layer ghost extension.
///
/// Nodes are indexed 0..K in every direction. In 2D the value of node (i,j)
/// lives at flat index i*(K+1) + j. Ghost nodes (index -1 or K+1) are never
/// stored on a field; operators materialize them through extend().

#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ekap {

/// Reflection rule used to fill the ghost layer.
///  - symmetric:     f(-1) = f(0),  f(K+1) = f(K)   (density, chemical potential)
///  - antisymmetric: f(-1) = -f(0), f(K+1) = -f(K)  (velocity, momentum-like fields)
enum class Parity { symmetric, antisymmetric };

class GridSpec {
public:
    /// Unit interval / unit square with h = 1/K.
    static GridSpec unit(int dim, int K);
    /// [lo,hi]^dim with h = (hi-lo)/K.
    static GridSpec box(int dim, int K, double lo, double hi);

    int dim() const { return dim_; }
    int K() const { return K_; }
    double h() const { return h_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double edge_length() const { return hi_ - lo_; }

    /// Nodes per direction, K+1.
    int n() const { return K_ + 1; }
    /// Total node count (K+1)^dim.
    std::size_t size() const;

    double coord(int i) const { return lo_ + i * h_; }

    std::size_t index(int i) const { return static_cast<std::size_t>(i); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n()) + static_cast<std::size_t>(j);
    }

    /// Node weight h^dim for quadrature-style sums.
    double cell_measure() const { return dim_ == 1 ? h_ : h_ * h_; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    GridSpec(int dim, int K, double lo, double hi);

    int dim_ = 1;
    int K_ = 1;
    double lo_ = 0.0;
    double hi_ = 1.0;
    double h_ = 1.0;
};

/// Nodal scalar values over {0..K}^dim.
class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid, double value = 0.0);
    ScalarField(const GridSpec& grid, std::vector<double> values);

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }

    double operator()(int i) const { return values_[grid_.index(i)]; }
    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator()(int i) { return values_[grid_.index(i)]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    double sum() const;
    double max_abs() const;
    double min() const;
    double max() const;
    bool all_finite() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    ScalarField& operator*=(double s);

    friend bool operator==(const ScalarField&, const ScalarField&) = default;

private:
    GridSpec grid_;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

/// Nodal vector field; components u (and w in 2D).
class VectorField {
public:
    explicit VectorField(const GridSpec& grid, double value = 0.0);

    const GridSpec& grid() const { return comps_[0].grid(); }
    int dim() const { return grid().dim(); }

    const ScalarField& operator[](int d) const { return comps_[static_cast<std::size_t>(d)]; }
    ScalarField& operator[](int d) { return comps_[static_cast<std::size_t>(d)]; }

    /// |v| at flat node k.
    double norm_at(std::size_t k) const;
    /// max over nodes of |v|.
    double max_norm() const;
    bool all_finite() const;

    friend bool operator==(const VectorField&, const VectorField&) = default;

private:
    std::vector<ScalarField> comps_;
};

/// A scalar field together with its ghost halo, indexed -1..K+1.
/// Corner ghosts (both indices outside 0..K) are set to 0 and are never read.
class ExtendedField {
public:
    ExtendedField(const ScalarField& f, Parity parity);

    const GridSpec& grid() const { return grid_; }

    double operator()(int i) const { return values_[static_cast<std::size_t>(i + 1)]; }
    double operator()(int i, int j) const {
        return values_[static_cast<std::size_t>(i + 1) * stride_ + static_cast<std::size_t>(j + 1)];
    }

private:
    GridSpec grid_;
    std::size_t stride_;
    std::vector<double> values_;
};

ExtendedField extend(const ScalarField& f, Parity parity);
std::vector<ExtendedField> extend(const VectorField& v, Parity parity);

/// Orthogonal projection onto mean-zero node functions.
ScalarField mean_subtract(const ScalarField& f);

/// Index sets of boundary nodes and of the ghost halo.
struct BoundaryIndexSets {
    std::vector<std::array<int, 2>> boundary;
    std::vector<std::array<int, 2>> extended_boundary;
};

/// In 1D the second index of every entry is 0.
BoundaryIndexSets boundary_sets(const GridSpec& grid);

bool is_boundary_node(const GridSpec& grid, int i, int j = 0);

}  // namespace ekap
