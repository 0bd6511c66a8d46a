#include "ekap/assembly.hpp"

#include <vector>

namespace ekap {

namespace {

using Triplet = Eigen::Triplet<double>;

struct Neighbor {
    std::size_t index;
    double sign;
};

/// Node reached by moving `step` (+-1) along `direction`; a ghost folds back
/// onto its mirror node with the parity sign.
Neighbor neighbor(const GridSpec& g, int i, int j, int direction, int step, Parity parity) {
    int a = direction == 0 ? i + step : i;
    int b = direction == 1 ? j + step : j;
    double sign = 1.0;
    const int K = g.K();
    const double flip = parity == Parity::symmetric ? 1.0 : -1.0;
    if (a < 0) { a = 0; sign = flip; }
    if (a > K) { a = K; sign = flip; }
    if (b < 0) { b = 0; sign = flip; }
    if (b > K) { b = K; sign = flip; }
    return {g.dim() == 1 ? g.index(a) : g.index(a, b), sign};
}

template <typename Fn>
void for_each_node(const GridSpec& g, Fn&& fn) {
    const int K = g.K();
    if (g.dim() == 1) {
        for (int i = 0; i <= K; ++i) fn(i, 0, g.index(i));
        return;
    }
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) fn(i, j, g.index(i, j));
}

SparseMatrix from_triplets(const GridSpec& g, const std::vector<Triplet>& t) {
    const auto n = static_cast<Eigen::Index>(g.size());
    SparseMatrix m(n, n);
    m.setFromTriplets(t.begin(), t.end());
    m.prune(0.0);
    return m;
}

}  // namespace

SparseMatrix assemble_centered_difference(const GridSpec& grid, int direction, Parity parity) {
    const double s = 1.0 / (2.0 * grid.h());
    std::vector<Triplet> t;
    t.reserve(2 * grid.size());
    for_each_node(grid, [&](int i, int j, std::size_t row) {
        const auto r = static_cast<Eigen::Index>(row);
        const Neighbor up = neighbor(grid, i, j, direction, +1, parity);
        const Neighbor dn = neighbor(grid, i, j, direction, -1, parity);
        t.emplace_back(r, static_cast<Eigen::Index>(up.index), s * up.sign);
        t.emplace_back(r, static_cast<Eigen::Index>(dn.index), -s * dn.sign);
    });
    return from_triplets(grid, t);
}

SparseMatrix assemble_laplacian(const GridSpec& grid, Parity parity) {
    const double s = 1.0 / (grid.h() * grid.h());
    std::vector<Triplet> t;
    t.reserve(5 * grid.size());
    for_each_node(grid, [&](int i, int j, std::size_t row) {
        const auto r = static_cast<Eigen::Index>(row);
        t.emplace_back(r, r, -2.0 * grid.dim() * s);
        for (int d = 0; d < grid.dim(); ++d)
            for (int step : {-1, 1}) {
                const Neighbor nb = neighbor(grid, i, j, d, step, parity);
                t.emplace_back(r, static_cast<Eigen::Index>(nb.index), s * nb.sign);
            }
    });
    return from_triplets(grid, t);
}

SparseMatrix diagonal(const ScalarField& d) {
    const auto n = static_cast<Eigen::Index>(d.size());
    SparseMatrix m(n, n);
    m.reserve(Eigen::VectorXi::Constant(n, 1));
    for (Eigen::Index k = 0; k < n; ++k) m.insert(k, k) = d[static_cast<std::size_t>(k)];
    m.makeCompressed();
    return m;
}

}  // namespace ekap
