#pragma once

#include "tentlab/grid.hpp"

#include <span>
#include <string>
#include <vector>

namespace tentlab {

struct Ball {
    Point center{};
    double radius = 0.0;
};

/// Dyadic radii 2h, 4h, … up to L/2.
std::vector<double> dyadic_radii(const Grid& grid);

/// Open balls B(c, r) = {y : dist(y, c) < r} centred on a sublattice of
/// grid points with spacing stride·h.
class BallFamily {
public:
    /// stride 0 means N/16 (at least 1); empty radii means dyadic_radii.
    explicit BallFamily(const Grid& grid, int stride = 0, std::vector<double> radii = {});

    const Grid& grid() const noexcept { return grid_; }
    int stride() const noexcept { return stride_; }
    const std::vector<std::size_t>& centers() const noexcept { return centers_; }
    const std::vector<double>& radii() const noexcept { return radii_; }
    std::size_t size() const noexcept { return centers_.size() * radii_.size(); }

    Ball ball(std::size_t center_index, std::size_t radius_index) const;
    /// Offsets of grid points strictly inside a ball of the given radius.
    const std::vector<Index>& offsets(std::size_t radius_index) const { return offsets_[radius_index]; }
    /// |B| = member count · hⁿ
    double volume(std::size_t radius_index) const;

    std::string id() const;

private:
    Grid grid_;
    int stride_;
    std::vector<std::size_t> centers_;
    std::vector<double> radii_;
    std::vector<std::vector<Index>> offsets_;
};

/// Grid-point offsets with torus distance < radius (open) or ≤ radius (closed).
std::vector<Index> ball_offsets(const Grid& grid, double radius, bool closed);

/// A ball about a grid point decomposed into segments along the last axis.
///
/// Each entry shifts the first n−1 axes and covers last-axis offsets
/// |b| ≤ half_width; half_width < 0 marks a full row.
struct BallRows {
    std::vector<Index> row_offsets;
    std::vector<int> half_width;
};

BallRows ball_rows(const Grid& grid, double radius, bool closed);

/// Closed cone slices {y : dist(x, y) ≤ √t_j}, one BallRows per time sample.
struct ConeIndex {
    std::vector<BallRows> slices;
};

ConeIndex cone_index(const Grid& grid, const std::vector<double>& times);

/// Periodic row tables over a scalar grid array answering ball sums and
/// maxima in O(rows) per query.
class RowScanner {
public:
    RowScanner(const Grid& grid, std::span<const double> values, bool want_max);

    double sum(std::size_t center, const BallRows& rows) const;
    double max(std::size_t center, const BallRows& rows) const;

    std::vector<double> sums(const BallRows& rows) const;
    std::vector<double> maxima(const BallRows& rows) const;

private:
    std::size_t row_of(std::size_t row, const Index& offset) const noexcept;
    double row_sum(std::size_t row, int j, int w) const noexcept;
    double row_max(std::size_t row, int j, int w) const noexcept;

    Grid grid_;
    int n_;
    std::size_t rows_;
    std::vector<double> prefix_;            // rows × (N + 1)
    std::vector<std::vector<double>> sparse_;  // levels × rows × 2N
    std::vector<double> row_total_;
    std::vector<double> row_peak_;
};

}  // namespace tentlab
