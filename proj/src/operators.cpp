#include "tentlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tentlab {

namespace {

void require_rank(const Field& f, Rank rank, const char* where) {
    if (f.rank() != rank)
        throw std::invalid_argument(std::string(where) + ": expected a " + rank_name(rank) + " field");
}

double kd2(const Point& kd, int n) {
    double s = 0.0;
    for (int d = 0; d < n; ++d) s += kd[d] * kd[d];
    return s;
}

// out_j(k) = factor(k) · [ℙ(k) (i f(k) k̃)]_j for a tensor f, or [ℙ v]_j for a vector v.
template <class Factor>
Field leray_rowdiv(const Field& f, Factor factor) {
    const Grid& grid = f.grid();
    const int n = grid.dim();
    const auto& kd = grid.waves().kd;
    Field out(grid, Rank::vector);
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double scale = factor(k);
        std::array<cplx, 3> v{};
        for (int j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (int l = 0; l < n; ++l) acc += kd[k][l] * f.coeffs(j * n + l)[k];
            v[j] = I * acc;
        }
        const double q = kd2(kd[k], n);
        if (q > 0.0) {
            cplx dot = 0.0;
            for (int j = 0; j < n; ++j) dot += kd[k][j] * v[j];
            for (int j = 0; j < n; ++j) v[j] -= kd[k][j] * dot / q;
        }
        for (int j = 0; j < n; ++j) out.coeffs(j)[k] = scale * v[j];
    }
    return out;
}

}  // namespace

Field heat_evolve(const Field& field, double t) {
    if (t < 0.0 || !std::isfinite(t)) throw std::invalid_argument("heat_evolve: t must be finite and >= 0");
    Field out = field;
    if (t == 0.0) return out;
    const auto& waves = field.grid().waves();
    std::vector<double> decay(waves.shell_k2.size());
    for (std::size_t s = 0; s < decay.size(); ++s) decay[s] = std::exp(-t * waves.shell_k2[s]);
    for (int c = 0; c < out.components(); ++c) {
        auto data = out.coeffs(c);
        for (std::size_t k = 0; k < data.size(); ++k) data[k] *= decay[static_cast<std::size_t>(waves.shell[k])];
    }
    return out;
}

Field leray_project(const Field& u) {
    require_rank(u, Rank::vector, "leray_project");
    const Grid& grid = u.grid();
    const int n = grid.dim();
    const auto& kd = grid.waves().kd;
    Field out = u;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double q = kd2(kd[k], n);
        if (q == 0.0) continue;
        cplx dot = 0.0;
        for (int j = 0; j < n; ++j) dot += kd[k][j] * u.coeffs(j)[k];
        for (int j = 0; j < n; ++j) out.coeffs(j)[k] -= kd[k][j] * dot / q;
    }
    return out;
}

Field leray_divergence(const Field& alpha) {
    require_rank(alpha, Rank::tensor, "leray_divergence");
    return leray_rowdiv(alpha, [](std::size_t) { return 1.0; });
}

Field pdiv_apply(const Field& alpha, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("pdiv_apply: tau must be positive");
    require_rank(alpha, Rank::tensor, "pdiv_apply");
    const auto& k2 = alpha.grid().waves().k2;
    return leray_rowdiv(alpha, [&](std::size_t k) { return std::exp(-tau * k2[k]); });
}

double decay_quotient(double r) noexcept {
    if (r < 1e-6) return 2.0 - 2.0 * r;
    return -std::expm1(-2.0 * r) / r;
}

Field ts_apply(const Field& f, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("ts_apply: s must be positive");
    require_rank(f, Rank::tensor, "ts_apply");
    const auto& k2 = f.grid().waves().k2;
    const double root = std::sqrt(s);
    return leray_rowdiv(f, [&](std::size_t k) { return -root * decay_quotient(s * k2[k]); });
}

Field kts_apply(const Field& f, double t, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("kts_apply: s must be positive");
    if (t < 0.0) throw std::invalid_argument("kts_apply: t must be >= 0");
    require_rank(f, Rank::tensor, "kts_apply");
    const auto& k2 = f.grid().waves().k2;
    const double inv_root = 1.0 / std::sqrt(s);
    return leray_rowdiv(f, [&](std::size_t k) { return inv_root * std::exp(-(t + s) * k2[k]); });
}

double ts_symbol_sup() {
    auto g = [](double r) { return -std::expm1(-2.0 * r) / std::sqrt(r); };
    double a = 1e-3, b = 5.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (g(c) > g(d)) b = d;
        else a = c;
        c = b - phi * (b - a);
        d = a + phi * (b - a);
    }
    return g(0.5 * (a + b));
}

double ts_discrete_norm(const Grid& grid, double s) {
    const auto& waves = grid.waves();
    double m = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double q = std::sqrt(kd2(waves.kd[k], grid.dim()));
        m = std::max(m, std::sqrt(s) * q * decay_quotient(s * waves.k2[k]));
    }
    return m;
}

double kts_discrete_norm(const Grid& grid, double t, double s) {
    const auto& waves = grid.waves();
    double m = 0.0;
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double q = std::sqrt(kd2(waves.kd[k], grid.dim()));
        m = std::max(m, q * std::exp(-(t + s) * waves.k2[k]) / std::sqrt(s));
    }
    return m;
}

MultiplierOp::MultiplierOp(std::string label, SymbolFn symbol) : label_(std::move(label)), symbol_(std::move(symbol)) {}

Field MultiplierOp::apply(const Field& field) const {
    const Grid& grid = field.grid();
    const int n = grid.dim();
    Field out(grid, field.rank());
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const Symbol s = symbol_(grid, k);
        if (!s.is_matrix) {
            for (int c = 0; c < field.components(); ++c) out.coeffs(c)[k] = s.scalar * field.coeffs(c)[k];
            continue;
        }
        require_rank(field, Rank::vector, "matrix multiplier");
        for (int i = 0; i < n; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < n; ++j) acc += s.matrix[static_cast<std::size_t>(i * n + j)] * field.coeffs(j)[k];
            out.coeffs(i)[k] = acc;
        }
    }
    return out;
}

MultiplierOp MultiplierOp::then(const MultiplierOp& next) const {
    auto first = symbol_;
    auto second = next.symbol_;
    return MultiplierOp(next.label_ + "∘" + label_, [first, second](const Grid& grid, std::size_t k) {
        const Symbol a = first(grid, k);
        const Symbol b = second(grid, k);
        const int n = grid.dim();
        Symbol out;
        if (!a.is_matrix && !b.is_matrix) {
            out.scalar = b.scalar * a.scalar;
            return out;
        }
        auto as_matrix = [n](const Symbol& s) {
            if (s.is_matrix) return s.matrix;
            std::array<cplx, 9> m{};
            for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = s.scalar;
            return m;
        };
        const auto ma = as_matrix(a), mb = as_matrix(b);
        out.is_matrix = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx acc = 0.0;
                for (int l = 0; l < n; ++l)
                    acc += mb[static_cast<std::size_t>(i * n + l)] * ma[static_cast<std::size_t>(l * n + j)];
                out.matrix[static_cast<std::size_t>(i * n + j)] = acc;
            }
        return out;
    });
}

MultiplierOp MultiplierOp::heat(double t) {
    if (t < 0.0) throw std::invalid_argument("heat multiplier: t must be >= 0");
    return MultiplierOp("heat", [t](const Grid& grid, std::size_t k) {
        Symbol s;
        s.scalar = std::exp(-t * grid.waves().k2[k]);
        return s;
    });
}

MultiplierOp MultiplierOp::leray() {
    return MultiplierOp("leray", [](const Grid& grid, std::size_t k) {
        const int n = grid.dim();
        const Point& kd = grid.waves().kd[k];
        const double q = kd2(kd, n);
        Symbol s;
        s.is_matrix = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s.matrix[static_cast<std::size_t>(i * n + j)] = (i == j ? 1.0 : 0.0) - (q > 0.0 ? kd[i] * kd[j] / q : 0.0);
        return s;
    });
}

MultiplierOp MultiplierOp::heat_derivative(double t) {
    if (t < 0.0) throw std::invalid_argument("heat derivative multiplier: t must be >= 0");
    return MultiplierOp("t_laplacian_heat", [t](const Grid& grid, std::size_t k) {
        const double k2 = grid.waves().k2[k];
        Symbol s;
        s.scalar = -t * k2 * std::exp(-t * k2);
        return s;
    });
}

}  // namespace tentlab
