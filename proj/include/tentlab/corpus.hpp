#pragma once

#include "tentlab/spacetime.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tentlab {

enum class FieldKind { random, taylor_green, gradient, solenoidal };

FieldKind parse_field_kind(const std::string& name);

/// Coefficient law |m|^{−exponent}·(complex Gaussian) for 0 < |m|_∞ ≤ band.
///
/// The exponent defaults to (n+1)/2. Each mode draws from its own stream
/// keyed by (seed, component, m), so a field is the same continuum function
/// on every grid that resolves the band.
struct SpectrumShape {
    std::optional<double> exponent;
    int band = 8;
};

/// Mean-zero random field of any rank, scaled to unit RMS.
Field random_field(const Grid& grid, Rank rank, std::uint64_t seed, const SpectrumShape& shape);

/// Vector field of the requested kind; taylor_green ignores seed and shape.
Field generate_field(const Grid& grid, FieldKind kind, std::uint64_t seed, const SpectrumShape& shape = {});

/// (sin x₁ cos x₂, −cos x₁ sin x₂[, 0]) in units where the box is 2π.
Field taylor_green(const Grid& grid);

/// F(t) = e^{tΔ}f_a + sin(log t)·e^{tΔ}f_b with independent random f_a, f_b.
SpaceTimeField random_spacetime(const Grid& grid, const TimeGrid& times, Rank rank, std::uint64_t seed,
                                const SpectrumShape& shape);

/// Seeds seed, seed+1, … for a corpus of the given size.
std::vector<SpaceTimeField> spacetime_corpus(const Grid& grid, const TimeGrid& times, Rank rank, std::uint64_t seed,
                                             int size, const SpectrumShape& shape);

}  // namespace tentlab
