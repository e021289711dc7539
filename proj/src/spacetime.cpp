#include "tentlab/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tentlab {

SpaceTimeField::SpaceTimeField(TimeGrid times, std::vector<Field> slices)
    : times_(std::move(times)), slices_(std::move(slices)) {
    if (slices_.empty() || static_cast<int>(slices_.size()) != times_.count())
        throw std::invalid_argument("space-time field: slice count must equal time count");
    for (const auto& s : slices_) s.require_same_shape(slices_.front(), "space-time field");
}

SpaceTimeField SpaceTimeField::zeros(TimeGrid times, const Grid& grid, Rank rank) {
    std::vector<Field> slices(static_cast<std::size_t>(times.count()), Field(grid, rank));
    return SpaceTimeField(std::move(times), std::move(slices));
}

SpaceTimeField SpaceTimeField::from_function(TimeGrid times, const std::function<Field(double)>& f) {
    std::vector<Field> slices;
    slices.reserve(static_cast<std::size_t>(times.count()));
    for (int j = 0; j < times.count(); ++j) slices.push_back(f(times.at(j)));
    return SpaceTimeField(std::move(times), std::move(slices));
}

Field SpaceTimeField::at(double s) const {
    const Interpolant ip = interpolant(times_, s);
    Field out(grid(), rank());
    if (ip.lo >= 0) out.axpy(ip.w_lo, slice(ip.lo));
    if (ip.hi >= 0) out.axpy(ip.w_hi, slice(ip.hi));
    return out;
}

void SpaceTimeField::require_same_shape(const SpaceTimeField& other) const {
    if (!(times_ == other.times_)) throw std::invalid_argument("space-time field: time grid mismatch");
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& other) { return axpy(1.0, other); }
SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& other) { return axpy(-1.0, other); }

SpaceTimeField& SpaceTimeField::operator*=(double a) {
    for (auto& s : slices_) s *= a;
    return *this;
}

SpaceTimeField& SpaceTimeField::axpy(double a, const SpaceTimeField& other) {
    require_same_shape(other);
    for (std::size_t j = 0; j < slices_.size(); ++j) slices_[j].axpy(a, other.slices_[j]);
    return *this;
}

SpaceTimeField SpaceTimeField::weighted(const std::function<double(double)>& weight) const {
    SpaceTimeField out = *this;
    for (int j = 0; j < count(); ++j) out.slice(j) *= weight(times_.at(j));
    return out;
}

double SpaceTimeField::l2_norm() const {
    const auto w = times_.weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < slices_.size(); ++j) sum += w[j] * slices_[j].l2_norm2();
    return std::sqrt(sum);
}

bool SpaceTimeField::all_finite() const {
    for (const auto& s : slices_)
        for (int c = 0; c < s.components(); ++c)
            for (const auto& z : s.coeffs(c))
                if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }
SpaceTimeField operator*(double a, SpaceTimeField f) { return f *= a; }

double pairing(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (!(a.times() == b.times())) throw std::invalid_argument("pairing: time grid mismatch");
    const auto w = a.times().weights();
    double sum = 0.0;
    for (int j = 0; j < a.count(); ++j) sum += w[static_cast<std::size_t>(j)] * inner(a.slice(j), b.slice(j));
    return sum;
}

Density::Density(TimeGrid t, Grid g)
    : times(std::move(t)),
      grid(std::move(g)),
      values(static_cast<std::size_t>(times.count()), std::vector<double>(grid.points(), 0.0)) {}

double Density::max() const {
    double m = 0.0;
    for (const auto& row : values)
        for (double v : row) m = std::max(m, v);
    return m;
}

bool Density::all_zero() const {
    for (const auto& row : values)
        for (double v : row)
            if (v != 0.0) return false;
    return true;
}

Density magnitude(const SpaceTimeField& field) {
    Density out(field.times(), field.grid());
    for (int j = 0; j < field.count(); ++j)
        out.values[static_cast<std::size_t>(j)] = to_physical(field.slice(j)).magnitudes();
    return out;
}

Density power(const Density& d, double p) {
    Density out = d;
    for (auto& row : out.values)
        for (double& v : row) v = p == 2.0 ? v * v : (p == 1.0 ? v : std::pow(v, p));
    return out;
}

PhysicalSpaceTime::PhysicalSpaceTime(TimeGrid t, Grid g, Rank r)
    : times(std::move(t)), grid(std::move(g)), rank(r),
      slices(static_cast<std::size_t>(times.count()), PhysicalField(grid, r)) {}

Density PhysicalSpaceTime::magnitude() const {
    Density out(times, grid);
    for (std::size_t j = 0; j < slices.size(); ++j) out.values[j] = slices[j].magnitudes();
    return out;
}

PhysicalSpaceTime to_physical(const SpaceTimeField& field) {
    PhysicalSpaceTime out(field.times(), field.grid(), field.rank());
    for (int j = 0; j < field.count(); ++j) out.slices[static_cast<std::size_t>(j)] = to_physical(field.slice(j));
    return out;
}

SpaceTimeField to_spectral(const PhysicalSpaceTime& field) {
    std::vector<Field> slices;
    slices.reserve(field.slices.size());
    for (const auto& s : field.slices) slices.push_back(to_spectral(s));
    return SpaceTimeField(field.times, std::move(slices));
}

}  // namespace tentlab
