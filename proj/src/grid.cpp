#include "ekap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ekap {

GridSpec::GridSpec(int dim, int K, double lo, double hi) : dim_(dim), K_(K), lo_(lo), hi_(hi) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("GridSpec: dimension must be 1 or 2");
    if (K < 1) throw std::invalid_argument("GridSpec: K must be positive");
    if (!(hi > lo)) throw std::invalid_argument("GridSpec: empty domain");
    h_ = (hi - lo) / K;
}

GridSpec GridSpec::unit(int dim, int K) { return GridSpec(dim, K, 0.0, 1.0); }

GridSpec GridSpec::box(int dim, int K, double lo, double hi) { return GridSpec(dim, K, lo, hi); }

std::size_t GridSpec::size() const {
    const auto m = static_cast<std::size_t>(n());
    return dim_ == 1 ? m : m * m;
}

bool is_boundary_node(const GridSpec& grid, int i, int j) {
    const int K = grid.K();
    if (i == 0 || i == K) return true;
    return grid.dim() == 2 && (j == 0 || j == K);
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(const GridSpec& grid, double value) : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw std::invalid_argument("ScalarField: value count does not match grid");
}

double ScalarField::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

// ---------------------------------------------------------------------------

VectorField::VectorField(const GridSpec& grid, double value)
    : comps_(static_cast<std::size_t>(grid.dim()), ScalarField(grid, value)) {}

double VectorField::norm_at(std::size_t k) const {
    double s = 0.0;
    for (const auto& c : comps_) s += c[k] * c[k];
    return std::sqrt(s);
}

double VectorField::max_norm() const {
    double m = 0.0;
    for (std::size_t k = 0; k < comps_[0].size(); ++k) m = std::max(m, norm_at(k));
    return m;
}

bool VectorField::all_finite() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const ScalarField& c) { return c.all_finite(); });
}

// ---------------------------------------------------------------------------

ExtendedField::ExtendedField(const ScalarField& f, Parity parity)
    : grid_(f.grid()), stride_(static_cast<std::size_t>(f.grid().n() + 2)) {
    const int K = grid_.K();
    const double sign = parity == Parity::symmetric ? 1.0 : -1.0;
    if (grid_.dim() == 1) {
        values_.assign(stride_, 0.0);
        for (int i = 0; i <= K; ++i) values_[static_cast<std::size_t>(i + 1)] = f(i);
        values_[0] = sign * f(0);
        values_[static_cast<std::size_t>(K + 2)] = sign * f(K);
        return;
    }
    values_.assign(stride_ * stride_, 0.0);
    auto at = [&](int i, int j) -> double& {
        return values_[static_cast<std::size_t>(i + 1) * stride_ + static_cast<std::size_t>(j + 1)];
    };
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) at(i, j) = f(i, j);
    for (int m = 0; m <= K; ++m) {
        at(-1, m) = sign * f(0, m);
        at(K + 1, m) = sign * f(K, m);
        at(m, -1) = sign * f(m, 0);
        at(m, K + 1) = sign * f(m, K);
    }
}

ExtendedField extend(const ScalarField& f, Parity parity) { return ExtendedField(f, parity); }

std::vector<ExtendedField> extend(const VectorField& v, Parity parity) {
    std::vector<ExtendedField> out;
    out.reserve(static_cast<std::size_t>(v.dim()));
    for (int d = 0; d < v.dim(); ++d) out.emplace_back(v[d], parity);
    return out;
}

ScalarField mean_subtract(const ScalarField& f) {
    const double mean = f.sum() / static_cast<double>(f.size());
    ScalarField out = f;
    for (double& v : out.values()) v -= mean;
    return out;
}

BoundaryIndexSets boundary_sets(const GridSpec& grid) {
    BoundaryIndexSets sets;
    const int K = grid.K();
    if (grid.dim() == 1) {
        sets.boundary = {{0, 0}, {K, 0}};
        sets.extended_boundary = {{-1, 0}, {K + 1, 0}};
        return sets;
    }
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j)
            if (is_boundary_node(grid, i, j)) sets.boundary.push_back({i, j});
    for (int i = -1; i <= K + 1; ++i)
        for (int j = -1; j <= K + 1; ++j)
            if (i == -1 || i == K + 1 || j == -1 || j == K + 1) sets.extended_boundary.push_back({i, j});
    return sets;
}

}  // namespace ekap
