#pragma once

#include "tentlab/operators.hpp"

#include <json.hpp>

#include <vector>

namespace tentlab {

/// One row of a kernel or off-diagonal table.
struct KernelRow {
    double t = 0.0;
    double d = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
};

struct KernelReport {
    std::vector<KernelRow> rows;
    double constant = 0.0;  ///< max ratio over rows
};

/// Samples the periodized kernel σ_t of e^{tΔ}ℙ along the first axis for
/// |x| ≤ L/4 and reports |σ_t(x)|·t^{n/2}·(1 + |x|/√t)^n per point.
KernelReport oseen_kernel_check(const Grid& grid, double t);

/// Same, over several times; constant is the max over all rows.
KernelReport oseen_kernel_check(const Grid& grid, const std::vector<double>& times);

/// Ball of grid points: centre position and radius (closed, dist ≤ radius).
struct SpatialBall {
    Point center{};
    double radius = 0.0;
};

struct OffDiagReport {
    std::vector<double> separations;  ///< one per time (the E–F distance)
    std::vector<double> times;
    std::vector<double> ratios;
    double fitted_order = 0.0;  ///< M in ratio ≈ C(1 + d²/t)^{−M}
    double fitted_constant = 0.0;
    std::vector<KernelRow> rows() const;
};

/// Point-set torus distance between two balls of grid points.
double ball_separation(const Grid& grid, const SpatialBall& e, const SpatialBall& f);

/// For each t: max over corpus of ‖1_E T_t 1_F f‖₂ / ‖1_F f‖₂, then a
/// least-squares fit of log ratio against log(1 + d²/t).
OffDiagReport offdiag_probe(const std::function<MultiplierOp(double)>& family, const SpatialBall& e,
                            const SpatialBall& f, const std::vector<double>& t_list,
                            const std::vector<Field>& corpus);

nlohmann::json to_json(const KernelReport& report);
nlohmann::json to_json(const OffDiagReport& report);

}  // namespace tentlab
