#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace tentlab {

using cplx = std::complex<double>;

/// Integer multi-index or offset on the grid; unused trailing entries are zero.
using Index = std::array<int, 3>;

/// Continuous position in the box; unused trailing entries are zero.
using Point = std::array<double, 3>;

/// Per-mode spectral tables shared by all copies of a Grid.
struct WaveTable {
    std::vector<Point> k;           ///< true wavevector (2π/L)·m
    std::vector<Point> kd;          ///< derivative wavevector, Nyquist component set to 0
    std::vector<double> k2;         ///< |k|², true wavevector
    std::vector<int> shell;         ///< index into shell_k2
    std::vector<double> shell_k2;   ///< distinct |k|² values, ascending
    std::vector<std::size_t> conj;  ///< flat index of the mode −m
    std::vector<char> keep;         ///< 2/3-rule mask: all |m_i| ≤ N/3
};

/// Periodic box [0, L)^n sampled with N points per axis.
///
/// Flat indices are row-major with axis 0 slowest, so the last axis is
/// contiguous. Copies share the immutable wave table.
class Grid {
public:
    Grid(int dim, int size, double box);

    int dim() const noexcept { return dim_; }
    int size() const noexcept { return size_; }
    double box() const noexcept { return box_; }
    double spacing() const noexcept { return box_ / size_; }
    std::size_t points() const noexcept { return points_; }
    double cell_volume() const noexcept;
    double volume() const noexcept;
    double wavenumber_unit() const noexcept;

    /// Signed mode number of array index i along one axis.
    int mode(int i) const noexcept { return i < size_ / 2 ? i : i - size_; }

    Index unflatten(std::size_t flat) const noexcept;
    /// Wraps each component periodically.
    std::size_t flatten(const Index& idx) const noexcept;
    std::size_t shifted(std::size_t flat, const Index& offset) const noexcept;

    Point position(std::size_t flat) const noexcept;
    /// Squared torus distance between two grid points, in units of h².
    long index_distance2(std::size_t a, std::size_t b) const noexcept;
    double distance(std::size_t a, std::size_t b) const noexcept;
    double distance(std::size_t a, const Point& p) const noexcept;
    double distance(const Point& a, const Point& b) const noexcept;

    const WaveTable& waves() const noexcept { return *waves_; }

    bool operator==(const Grid& other) const noexcept {
        return dim_ == other.dim_ && size_ == other.size_ && box_ == other.box_;
    }

private:
    int dim_;
    int size_;
    double box_;
    std::size_t points_;
    std::shared_ptr<const WaveTable> waves_;
};

Grid make_grid(int dim, int size, double box);

/// Geometric time samples t_j = t_min·ratio^j.
class TimeGrid {
public:
    TimeGrid(double t_min, double ratio, int count);

    /// Samples at per_octave points per doubling, from t_min up to t_max.
    static TimeGrid spanning(double t_min, int per_octave, double t_max);
    /// Default solver grid: (L/N)² to L², four samples per octave.
    static TimeGrid for_grid(const Grid& grid, int per_octave = 4);

    double t_min() const noexcept { return t_min_; }
    double ratio() const noexcept { return ratio_; }
    int count() const noexcept { return count_; }
    double at(int j) const noexcept { return values_[static_cast<std::size_t>(j)]; }
    double last() const noexcept { return values_.back(); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Trapezoid weights on the samples for ∫_0^upper dt.
    ///
    /// The piece [0, t_min] takes the integrand constant at t_min, and a
    /// partial last interval uses the linear interpolant to the endpoint.
    /// Samples beyond upper get weight 0; the integral stops at last().
    std::vector<double> weights(double upper) const;
    std::vector<double> weights() const { return weights(last()); }

    /// Same samples in a rescaled clock t ↦ factor·t.
    TimeGrid scaled(double factor) const;

    bool operator==(const TimeGrid& other) const noexcept {
        return t_min_ == other.t_min_ && ratio_ == other.ratio_ && count_ == other.count_;
    }

private:
    double t_min_;
    double ratio_;
    int count_;
    std::vector<double> values_;
};

/// Hat weights for log-linear interpolation between samples.
///
/// Below t_min the first slice is held; above last() the field is zero.
struct Interpolant {
    int lo = -1;
    int hi = -1;
    double w_lo = 0.0;
    double w_hi = 0.0;
};

Interpolant interpolant(const TimeGrid& times, double s);

}  // namespace tentlab
