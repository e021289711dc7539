#pragma once

#include "tentlab/field.hpp"

#include <functional>
#include <vector>

namespace tentlab {

/// A field sampled on a geometric time grid; all slices share one Grid.
class SpaceTimeField {
public:
    SpaceTimeField(TimeGrid times, std::vector<Field> slices);

    static SpaceTimeField zeros(TimeGrid times, const Grid& grid, Rank rank);
    static SpaceTimeField from_function(TimeGrid times, const std::function<Field(double)>& f);

    const TimeGrid& times() const noexcept { return times_; }
    const Grid& grid() const noexcept { return slices_.front().grid(); }
    Rank rank() const noexcept { return slices_.front().rank(); }
    int count() const noexcept { return static_cast<int>(slices_.size()); }

    const Field& slice(int j) const { return slices_.at(static_cast<std::size_t>(j)); }
    Field& slice(int j) { return slices_.at(static_cast<std::size_t>(j)); }
    const std::vector<Field>& slices() const noexcept { return slices_; }

    /// Log-linear interpolation per coefficient; the first slice is held
    /// below t_min and the field vanishes past the last sample.
    Field at(double s) const;

    SpaceTimeField& operator+=(const SpaceTimeField& other);
    SpaceTimeField& operator-=(const SpaceTimeField& other);
    SpaceTimeField& operator*=(double a);
    SpaceTimeField& axpy(double a, const SpaceTimeField& other);

    /// Multiplies slice j by weight(t_j).
    SpaceTimeField weighted(const std::function<double(double)>& weight) const;

    /// Space-time L² norm with the full-span time weights.
    double l2_norm() const;

    bool all_finite() const;

private:
    void require_same_shape(const SpaceTimeField& other) const;

    TimeGrid times_;
    std::vector<Field> slices_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator*(double a, SpaceTimeField f);

/// Space-time pairing Σ_j w_j ∫ X(t_j)·Y(t_j) dx.
double pairing(const SpaceTimeField& a, const SpaceTimeField& b);

/// Nonnegative scalar samples on the space-time grid, values[j][x].
///
/// Carries magnitudes |F(t, x)| or a measure density μ.
struct Density {
    TimeGrid times;
    Grid grid;
    std::vector<std::vector<double>> values;

    Density(TimeGrid t, Grid g);
    double max() const;
    bool all_zero() const;
};

/// |F(t, x)| (Frobenius over components) at every sample.
Density magnitude(const SpaceTimeField& field);
/// Pointwise power of a density.
Density power(const Density& d, double p);

/// Physical-space samples of a space-time field.
struct PhysicalSpaceTime {
    TimeGrid times;
    Grid grid;
    Rank rank;
    std::vector<PhysicalField> slices;

    PhysicalSpaceTime(TimeGrid t, Grid g, Rank r);
    Density magnitude() const;
};

PhysicalSpaceTime to_physical(const SpaceTimeField& field);
SpaceTimeField to_spectral(const PhysicalSpaceTime& field);

}  // namespace tentlab
