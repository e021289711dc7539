#pragma once

#include "tentlab/tent.hpp"
#include "tentlab/whitney.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace tentlab {

/// ε_n = sup over |x − y| ≤ r of |B(x, r) \ B(y, r)| / |B(x, r)|, attained at
/// |x − y| = r: 1/3 + √3/(2π) for n = 2 and 11/16 for n = 3.
double overlap_deficit(int dim);

struct AtomParams {
    double gamma = 0.25;     ///< O* = O ∪ {𝔐1_O > 1 − γ}; needs 0 < γ < 1 − ε_n
    double level_base = 2.0; ///< O_k = {S(G) > base^k}
};

/// One T^{1,2} atom a = G·1_Δ/λ, stored on its region Δ.
struct Atom {
    Ball ball;
    double ball_volume = 0.0;
    double lambda = 0.0;
    int level = 0;
    /// (time index, grid point) pairs of the region.
    std::vector<std::pair<int, std::size_t>> support;
    /// Atom values, support.size() × components, entry-major.
    std::vector<double> values;
};

struct AtomicDecomposition {
    TimeGrid times;
    Grid grid;
    Rank rank;
    AtomParams params;
    std::vector<Atom> atoms;
    std::vector<double> square;  ///< S(G) on the grid
    int k_min = 0;
    int level_count = 0;
    int whitney_violations = 0;
    double lambda_sum = 0.0;
    double square_l1 = 0.0;  ///< ‖S(G)‖₁

    /// Σλ / ‖S(G)‖₁, 0 for an empty decomposition.
    double ratio() const { return square_l1 > 0.0 ? lambda_sum / square_l1 : 0.0; }
};

/// Level sets of S(G), their maximal dilates, a Whitney cover of each dilate,
/// and the disjoint regions tent(O*_k) \ tent(O*_{k+1}) sliced by cube.
///
/// A level whose dilate is the whole torus forms a single region with a
/// ball large enough that its tent holds every sample.
AtomicDecomposition atomic_decompose(const PhysicalSpaceTime& g, const AtomParams& params = {});
AtomicDecomposition atomic_decompose(const SpaceTimeField& g, const AtomParams& params = {});

/// Σ λ_i a_i on the physical space-time grid.
PhysicalSpaceTime reconstruct(const AtomicDecomposition& d);
/// Atom i as a dense physical space-time field.
PhysicalSpaceTime atom_field(const AtomicDecomposition& d, std::size_t i);

/// Physical space-time L² norm Σ_j w_j Σ_y |F|² hⁿ, square-rooted.
double l2_norm(const PhysicalSpaceTime& f);

/// |B| as the count of grid points strictly inside, times hⁿ.
double ball_volume(const Grid& grid, const Ball& ball);

struct AtomCheck {
    bool pass = false;
    bool support_ok = false;
    std::size_t outside = 0;  ///< nonzero samples outside tent(B)
    double l2 = 0.0;
    double bound = 0.0;       ///< |B|^{−1/2}
    double margin = 0.0;      ///< bound − l2
};

/// Support in the discrete tent of B and ‖a‖₂ ≤ |B|^{−1/2}·(1 + 1e−10).
AtomCheck atom_validate(const PhysicalSpaceTime& a, const Ball& ball);
AtomCheck atom_validate(const AtomicDecomposition& d, std::size_t i);

/// |B|^{−1/2}·|tent|^{−1/2}·1_tent(B) in the given component (all others 0).
PhysicalSpaceTime tent_atom(const Grid& grid, const TimeGrid& times, Rank rank, const Ball& ball, int component = 0);

/// Physical samples of f with everything outside the tent over the ball zeroed.
PhysicalSpaceTime restrict_to_tent(const SpaceTimeField& f, const Ball& ball);

struct MeasureBound {
    double min_ratio = 1.0;  ///< min |B̄(y,√t) ∩ B_j ∩ O_{k+1}ᶜ| / |B̄(y,√t)|
    int samples = 0;
};

/// Spot check of the cone-measure lower bound on sampled region points.
MeasureBound measure_lower_bound(const AtomicDecomposition& d, int samples, std::uint64_t seed);

/// {grid, params, lambda_sum, square_l1, ratio, atoms: [{ball, lambda, level, region_size}]}
nlohmann::json manifest(const AtomicDecomposition& d);

/// Little-endian doubles: [atom count], then per atom
/// [region_size, components, (time index, point, values...) × region_size].
void write_atom_payloads(std::ostream& out, const AtomicDecomposition& d);

}  // namespace tentlab
