#include "ekap/operators.hpp"

namespace ekap {

TensorField::TensorField(const GridSpec& grid) : grid_(grid) {
    const auto d = static_cast<std::size_t>(grid.dim());
    data_.assign(d * d * size(), 0.0);
}

std::size_t TensorField::size() const {
    const auto m = static_cast<std::size_t>(n());
    return grid_.dim() == 1 ? m : m * m;
}

std::size_t TensorField::node(int i, int j) const {
    return grid_.dim() == 1 ? static_cast<std::size_t>(i)
                            : static_cast<std::size_t>(i) * static_cast<std::size_t>(n()) + static_cast<std::size_t>(j);
}

std::size_t TensorField::offset(int a, int b) const {
    return (static_cast<std::size_t>(a) * static_cast<std::size_t>(grid_.dim()) + static_cast<std::size_t>(b)) * size();
}

double TensorField::sum_squared() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return s;
}

double TensorField::contract(const TensorField& other) const {
    double s = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) s += data_[k] * other.data_[k];
    return s;
}

VectorField grad_centered(const ScalarField& f, Parity parity) {
    const GridSpec& g = f.grid();
    const ExtendedField e = extend(f, parity);
    const int K = g.K();
    const double s = 1.0 / (2.0 * g.h());
    VectorField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i <= K; ++i) out[0](i) = s * (e(i + 1) - e(i - 1));
        return out;
    }
    for (int i = 0; i <= K; ++i) {
        for (int j = 0; j <= K; ++j) {
            out[0](i, j) = s * (e(i + 1, j) - e(i - 1, j));
            out[1](i, j) = s * (e(i, j + 1) - e(i, j - 1));
        }
    }
    return out;
}

VectorField grad_forward(const ScalarField& f, Parity parity) {
    const GridSpec& g = f.grid();
    const ExtendedField e = extend(f, parity);
    const int K = g.K();
    const double s = 1.0 / g.h();
    VectorField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i <= K; ++i) out[0](i) = s * (e(i + 1) - e(i));
        return out;
    }
    for (int i = 0; i <= K; ++i) {
        for (int j = 0; j <= K; ++j) {
            out[0](i, j) = s * (e(i + 1, j) - e(i, j));
            out[1](i, j) = s * (e(i, j + 1) - e(i, j));
        }
    }
    return out;
}

ScalarField div_centered(const VectorField& F, Parity parity) {
    const GridSpec& g = F.grid();
    const int K = g.K();
    const double s = 1.0 / (2.0 * g.h());
    ScalarField out(g);
    if (g.dim() == 1) {
        const ExtendedField e = extend(F[0], parity);
        for (int i = 0; i <= K; ++i) out(i) = s * (e(i + 1) - e(i - 1));
        return out;
    }
    const ExtendedField ex = extend(F[0], parity);
    const ExtendedField ey = extend(F[1], parity);
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j) out(i, j) = s * (ex(i + 1, j) - ex(i - 1, j) + ey(i, j + 1) - ey(i, j - 1));
    return out;
}

TensorField jacobian_forward(const VectorField& V) {
    const GridSpec& g = V.grid();
    const int K = g.K();
    const double s = 1.0 / g.h();
    TensorField D(g);
    if (g.dim() == 1) {
        for (int i = 0; i < K; ++i) D(0, 0, i) = s * (V[0](i + 1) - V[0](i));
        return D;
    }
    for (int a = 0; a < 2; ++a) {
        for (int i = 0; i < K; ++i) {
            for (int j = 0; j < K; ++j) {
                D(a, 0, i, j) = s * (V[a](i + 1, j) - V[a](i, j));
                D(a, 1, i, j) = s * (V[a](i, j + 1) - V[a](i, j));
            }
        }
    }
    return D;
}

ScalarField laplacian5(const ScalarField& f, Parity parity) {
    const GridSpec& g = f.grid();
    const ExtendedField e = extend(f, parity);
    const int K = g.K();
    const double s = 1.0 / (g.h() * g.h());
    ScalarField out(g);
    if (g.dim() == 1) {
        for (int i = 0; i <= K; ++i) out(i) = s * (e(i + 1) + e(i - 1) - 2.0 * e(i));
        return out;
    }
    for (int i = 0; i <= K; ++i)
        for (int j = 0; j <= K; ++j)
            out(i, j) = s * (e(i + 1, j) + e(i - 1, j) + e(i, j + 1) + e(i, j - 1) - 4.0 * e(i, j));
    return out;
}

VectorField laplacian5(const VectorField& V, Parity parity) {
    VectorField out(V.grid());
    for (int d = 0; d < V.dim(); ++d) out[d] = laplacian5(V[d], parity);
    return out;
}

VectorField div_advection(const ScalarField& rho, const VectorField& V) {
    const GridSpec& g = rho.grid();
    const int K = g.K();
    const double s = 1.0 / (4.0 * g.h());
    const ExtendedField r = extend(rho, Parity::symmetric);
    const auto v = extend(V, Parity::antisymmetric);
    VectorField out(g);

    if (g.dim() == 1) {
        const ExtendedField& u = v[0];
        for (int i = 0; i <= K; ++i) {
            const double m = r(i) * u(i);
            const double right = (u(i) + u(i + 1)) * (m + r(i + 1) * u(i + 1));
            const double left = (u(i) + u(i - 1)) * (m + r(i - 1) * u(i - 1));
            out[0](i) = s * (right - left);
        }
        return out;
    }

    const ExtendedField& u = v[0];
    const ExtendedField& w = v[1];
    for (int i = 0; i <= K; ++i) {
        for (int j = 0; j <= K; ++j) {
            const double mu = r(i, j) * u(i, j);
            const double mw = r(i, j) * w(i, j);
            const double fe = mu + r(i + 1, j) * u(i + 1, j);
            const double fw = mu + r(i - 1, j) * u(i - 1, j);
            const double fn = mw + r(i, j + 1) * w(i, j + 1);
            const double fs = mw + r(i, j - 1) * w(i, j - 1);
            for (int a = 0; a < 2; ++a) {
                const ExtendedField& c = v[static_cast<std::size_t>(a)];
                const double here = c(i, j);
                out[a](i, j) = s * ((here + c(i + 1, j)) * fe - (here + c(i - 1, j)) * fw +
                                    (here + c(i, j + 1)) * fn - (here + c(i, j - 1)) * fs);
            }
        }
    }
    return out;
}

VectorField scale(const ScalarField& rho, const VectorField& V) {
    VectorField out = V;
    for (int d = 0; d < V.dim(); ++d)
        for (std::size_t k = 0; k < rho.size(); ++k) out[d][k] *= rho[k];
    return out;
}

double dot(const ScalarField& f, const ScalarField& g) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += f[k] * g[k];
    return s;
}

double dot(const VectorField& F, const VectorField& G) {
    double s = 0.0;
    for (int d = 0; d < F.dim(); ++d) s += dot(F[d], G[d]);
    return s;
}

}  // namespace ekap
