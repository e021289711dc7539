#pragma once

#include "tentlab/corpus.hpp"
#include "tentlab/duhamel.hpp"
#include "tentlab/tent.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tentlab {

/// Grid and seeded corpus shared by the operator-norm probes.
struct ProbeSetup {
    int dim = 2;
    int size = 64;
    double box = 6.283185307179586;
    int corpus_size = 32;
    std::uint64_t seed = 1729;
    SpectrumShape spectrum{};  ///< exponent defaults to (n+1)/2
    QuadratureScheme scheme{};

    Grid grid() const { return make_grid(dim, size, box); }
    TimeGrid times() const { return TimeGrid::for_grid(grid()); }
    /// Same corpus seeds on a grid twice as fine.
    ProbeSetup refined() const;
};

/// Measured ratios ‖op F‖/‖F‖ over a seeded corpus, optionally at two resolutions.
struct OperatorNormReport {
    std::string op;
    std::string in_norm;
    std::string out_norm;
    int corpus_size = 0;
    std::uint64_t seed = 0;
    int grid_size = 0;
    std::vector<double> per_sample;  ///< vacuous members (zero input) are skipped
    int vacuous = 0;
    double max_ratio = 0.0;

    int refined_size = 0;  ///< 0 when no refinement was run
    std::vector<double> refined_per_sample;
    double refined_max = 0.0;
    double drift = 0.0;  ///< refined_max / max_ratio

    bool finite() const;
    /// max(drift, 1/drift) ≤ factor; false when no refinement was run.
    bool drift_within(double factor) const;
};

nlohmann::json to_json(const OperatorNormReport& r);

/// ‖M⁺f‖₂/‖f‖₂ in space-time L² over a vector corpus.
OperatorNormReport desimon_check(const ProbeSetup& setup);

/// tent_norm(op F, 2)/tent_norm(F, 2) at setup.size and twice that.
OperatorNormReport maxreg_tent_check(const ProbeSetup& setup);
OperatorNormReport z_tent_check(const ProbeSetup& setup);
OperatorNormReport r_tent_check(const ProbeSetup& setup);

/// max t^{1/2}|A(α)(t, x)| / y_norm(α).
OperatorNormReport pointwise_bound_check(const ProbeSetup& setup);
/// tent_norm(A(α), 2) / (tent_norm(α, 1) + tent_norm(s^{1/2}α, 2)).
OperatorNormReport duhamel_tent_check(const ProbeSetup& setup);

/// Carleson embedding ratio with H = |u| and μ = |α| for paired corpus members.
OperatorNormReport carleson_probe(const ProbeSetup& setup);
/// Tent pairing ratio Σ|F||G| / Σ 𝒞₂(F)S(G).
OperatorNormReport pairing_probe(const ProbeSetup& setup);
/// Σ|F||G| / Σ S(F)S(G), at most 1 exactly.
OperatorNormReport cauchy_schwarz_probe(const ProbeSetup& setup);

/// Schur test for k(t, s) = ‖K_{t,s}‖·1_{s>t} with weight p(t) = t^β on the sample grid.
struct SchurReport {
    double beta = 0.0;
    int grid_size = 0;
    double sup_s = 0.0;  ///< sup_s p(s)^{−1} Σ_t w_t k(t, s) p(t)
    double sup_t = 0.0;  ///< sup_t p(t)^{−1} Σ_s w_s k(t, s) p(s)
    double pointwise_constant = 0.0;  ///< max k(t, s)·s^{1/2}(t + s)^{1/2} over s > t
    double probe_excess = 0.0;  ///< max over probed pairs of measured ‖K_{t,s}f‖/‖f‖ − k(t, s)

    bool finite() const;
};

/// β ∈ (−1/2, 0); probe_fields random tensor fields are applied at a spread of (t, s) pairs.
SchurReport schur_check(const Grid& grid, const TimeGrid& times, double beta = -0.25, int probe_fields = 4,
                        std::uint64_t seed = 7);
nlohmann::json to_json(const SchurReport& r);

struct DualityReport {
    double lhs = 0.0;  ///< ⟨A₂F, G⟩
    double rhs = 0.0;  ///< ⟨F, A₂*G⟩
    double relative = 0.0;
};

/// A₂ with the sample rule, so both sides share the time grid's quadrature.
DualityReport duality_check(const Grid& grid, const TimeGrid& times, std::uint64_t seed);
nlohmann::json to_json(const DualityReport& r);

}  // namespace tentlab
