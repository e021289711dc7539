#include "tentlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace tentlab {

void QuadratureScheme::validate() const {
    if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("quadrature: split must lie in (0, 1)");
    if (nodes_per_half < 1) throw std::invalid_argument("quadrature: nodes_per_half must be >= 1");
}

std::vector<Cell> duhamel_cells(double t, const QuadratureScheme& scheme) {
    scheme.validate();
    if (!(t > 0.0)) throw std::invalid_argument("duhamel_cells: t must be positive");
    const int K = scheme.nodes_per_half;
    const double m = scheme.split * t;
    std::vector<Cell> cells;
    cells.reserve(static_cast<std::size_t>(2 * K));
    const double lower = std::sqrt(m);
    for (int i = 0; i < K; ++i) {
        const double a = lower * i / K, b = lower * (i + 1) / K, c = lower * (i + 0.5) / K;
        cells.push_back({a * a, i + 1 == K ? m : b * b, c * c});
    }
    const double upper = std::sqrt(t - m);
    for (int i = K - 1; i >= 0; --i) {
        const double a = upper * i / K, b = upper * (i + 1) / K, c = upper * (i + 0.5) / K;
        cells.push_back({i + 1 == K ? m : t - b * b, t - a * a, t - c * c});
    }
    return cells;
}

NodesWeights duhamel_rule(double t, const QuadratureScheme& scheme) {
    NodesWeights nw;
    for (const Cell& c : duhamel_cells(t, scheme)) {
        nw.nodes.push_back(c.node);
        nw.weights.push_back(c.width());
    }
    return nw;
}

SpanCells span_cells(const TimeGrid& times, const QuadratureScheme& scheme) {
    scheme.validate();
    const int K = scheme.nodes_per_half;
    SpanCells out;
    const double root = std::sqrt(times.t_min());
    for (int i = 0; i < K; ++i) {
        const double a = root * i / K, b = root * (i + 1) / K, c = root * (i + 0.5) / K;
        out.cells.push_back({a * a, i + 1 == K ? times.t_min() : b * b, c * c});
        out.piece.push_back(-1);
    }
    for (int j = 0; j + 1 < times.count(); ++j) {
        const double lo = times.at(j), hi = times.at(j + 1);
        for (int i = 0; i < K; ++i) {
            const double a = lo + (hi - lo) * i / K;
            const double b = i + 1 == K ? hi : lo + (hi - lo) * (i + 1) / K;
            out.cells.push_back({a, b, 0.5 * (a + b)});
            out.piece.push_back(j);
        }
    }
    return out;
}

double exp_integral(double lo, double hi, double k2) noexcept {
    if (k2 == 0.0) return hi - lo;
    return std::exp(-lo * k2) * (-std::expm1(-(hi - lo) * k2)) / k2;
}

}  // namespace tentlab
