#pragma once

#include "tentlab/grid.hpp"

#include <vector>

namespace tentlab {

/// Graded composite midpoint rule for ∫₀^t ds.
///
/// [0, split·t] uses s = σ² and [split·t, t] uses s = t − σ², each with
/// nodes_per_half uniform σ-cells. Cells carry exact s-endpoints so kernels
/// can be integrated in closed form over each cell.
struct QuadratureScheme {
    double split = 0.5;
    int nodes_per_half = 64;

    void validate() const;
};

struct Cell {
    double lo = 0.0;
    double hi = 0.0;
    double node = 0.0;  ///< image of the σ-midpoint

    double width() const noexcept { return hi - lo; }
};

/// 2K cells tiling [0, t], ordered by increasing s.
std::vector<Cell> duhamel_cells(double t, const QuadratureScheme& scheme);

/// Nodes and weights (cell widths) of the rule on [0, t].
struct NodesWeights {
    std::vector<double> nodes;
    std::vector<double> weights;
};
NodesWeights duhamel_rule(double t, const QuadratureScheme& scheme);

/// How integrals over the time-grid span ∫ ds are discretized.
///
/// graded: K σ²-cells on [0, t_min] and K uniform cells per sample interval;
/// sample: the samples themselves with the time grid's trapezoid weights.
enum class SpanRule { graded, sample };

/// Graded span cells; piece −1 is [0, t_min], piece i is [t_i, t_{i+1}].
struct SpanCells {
    std::vector<Cell> cells;
    std::vector<int> piece;
};
SpanCells span_cells(const TimeGrid& times, const QuadratureScheme& scheme);

/// ∫_lo^hi e^{−u·k2} du, exact for k2 ≥ 0.
double exp_integral(double lo, double hi, double k2) noexcept;

}  // namespace tentlab
