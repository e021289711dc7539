#include "tentlab/corpus.hpp"

#include "tentlab/operators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tentlab {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mode_key(std::uint64_t seed, int component, const Index& m) {
    std::uint64_t h = splitmix(seed);
    h = splitmix(h ^ static_cast<std::uint64_t>(component + 17));
    for (int v : m) h = splitmix(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(v) + 1000003));
    return h;
}

/// Splitmix64 counter stream; cheap to seed once per mode.
struct ModeStream {
    using result_type = std::uint64_t;
    std::uint64_t state;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return splitmix(state++); }
};

void normalize_rms(Field& f) {
    const double rms = std::sqrt(f.l2_norm2() / f.grid().volume());
    if (rms > 0.0) f *= 1.0 / rms;
}

}  // namespace

FieldKind parse_field_kind(const std::string& name) {
    if (name == "random") return FieldKind::random;
    if (name == "taylor-green") return FieldKind::taylor_green;
    if (name == "gradient") return FieldKind::gradient;
    if (name == "solenoidal") return FieldKind::solenoidal;
    throw std::invalid_argument("unknown field kind '" + name + "' (random, taylor-green, gradient, solenoidal)");
}

Field random_field(const Grid& grid, Rank rank, std::uint64_t seed, const SpectrumShape& shape) {
    const int n = grid.dim();
    const double exponent = shape.exponent.value_or(0.5 * (n + 1));
    const int band = std::min(shape.band, grid.size() / 2 - 1);
    Field f(grid, rank);
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const Index idx = grid.unflatten(k);
        Index m{};
        int linf = 0;
        double m2 = 0.0;
        for (int d = 0; d < n; ++d) {
            m[d] = grid.mode(idx[d]);
            linf = std::max(linf, std::abs(m[d]));
            m2 += static_cast<double>(m[d]) * m[d];
        }
        if (linf == 0 || linf > band) continue;
        const double amp = std::pow(m2, -0.5 * exponent);
        for (int c = 0; c < f.components(); ++c) {
            ModeStream rng{mode_key(seed, c, m)};
            std::normal_distribution<double> normal;
            const double re = normal(rng);
            const double im = normal(rng);
            f.coeffs(c)[k] = amp * cplx(re, im);
        }
    }
    enforce_hermitian(f);
    normalize_rms(f);
    return f;
}

Field taylor_green(const Grid& grid) {
    const double s = 2.0 * std::numbers::pi / grid.box();
    PhysicalField p(grid, Rank::vector);
    for (std::size_t x = 0; x < grid.points(); ++x) {
        const Point q = grid.position(x);
        const double z = grid.dim() == 3 ? std::cos(s * q[2]) : 1.0;
        p.values[0][x] = std::sin(s * q[0]) * std::cos(s * q[1]) * z;
        p.values[1][x] = -std::cos(s * q[0]) * std::sin(s * q[1]) * z;
    }
    return to_spectral(p);
}

Field generate_field(const Grid& grid, FieldKind kind, std::uint64_t seed, const SpectrumShape& shape) {
    switch (kind) {
        case FieldKind::random: return random_field(grid, Rank::vector, seed, shape);
        case FieldKind::taylor_green: return taylor_green(grid);
        case FieldKind::gradient: {
            Field g = differentiate(random_field(grid, Rank::scalar, seed, shape), Gradient{});
            normalize_rms(g);
            return g;
        }
        case FieldKind::solenoidal: {
            Field u = leray_project(random_field(grid, Rank::vector, seed, shape));
            normalize_rms(u);
            return u;
        }
    }
    throw std::invalid_argument("generate_field: unknown kind");
}

SpaceTimeField random_spacetime(const Grid& grid, const TimeGrid& times, Rank rank, std::uint64_t seed,
                                const SpectrumShape& shape) {
    const Field a = random_field(grid, rank, splitmix(seed) ^ 0xa, shape);
    const Field b = random_field(grid, rank, splitmix(seed) ^ 0xb, shape);
    return SpaceTimeField::from_function(times, [&](double t) {
        Field f = heat_evolve(a, t);
        f.axpy(std::sin(std::log(t)), heat_evolve(b, t));
        return f;
    });
}

std::vector<SpaceTimeField> spacetime_corpus(const Grid& grid, const TimeGrid& times, Rank rank, std::uint64_t seed,
                                             int size, const SpectrumShape& shape) {
    std::vector<SpaceTimeField> out;
    for (int i = 0; i < size; ++i) out.push_back(random_spacetime(grid, times, rank, seed + static_cast<std::uint64_t>(i), shape));
    return out;
}

}  // namespace tentlab
