#pragma once

#include "tentlab/atoms.hpp"
#include "tentlab/tent.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace tentlab {

/// M*f(x) = max(|f(x)|, max_j max over the open ball B(x, √τ_j) of
/// |e^{τ_jΔ}f|) for one component; the scales come from the time samples.
std::vector<double> hardy_maximal(const Field& f, int component, const TimeGrid& scales);

/// Σ over components of ‖M*f_c‖₁.
double hardy_norm(const Field& f, const TimeGrid& scales);
double hardy_norm(const Field& f);

struct MoleculeReport {
    double p = 1.0;
    double q = 0.0;
    double b = 0.0;
    double theta = 0.0;
    double lq_norm = 0.0;        ///< ‖m‖_q
    double weighted_norm = 0.0;  ///< ‖|· − x₀|^{nb} m‖_q
    double norm_triple = 0.0;    ///< ‖m‖_q^{1−θ}·‖|· − x₀|^{nb} m‖_q^θ
    std::vector<double> moment_residuals;  ///< |∫m_c| per component
    bool moments_ok = false;     ///< all residuals ≤ 1e−10·‖m‖₁
};

/// (1, q, b) molecule quantities of m about x₀ with torus distance.
/// q ∈ (1, n/(n−1)); b defaults to 2(q−1)/q and must exceed 1 − 1/q.
MoleculeReport molecule_validate(const Field& m, const Point& x0, double q = 1.25, std::optional<double> b = std::nullopt);

/// 𝓜G = Σ_j w_j ∇ℙe^{t_jΔ}G(t_j) for a vector field G; tensor entry (i, l) = ∂_l(·)_i.
Field calM_apply(const SpaceTimeField& g);

/// Adjoint of A₂ under the real space-time pairing: s ↦ −e^{sΔ}𝓜G.
SpaceTimeField a2star_apply(const SpaceTimeField& g);

/// ‖N(e^{sΔ}h)‖₁ / hardy_norm(h) over the grid's default time samples.
RatioCheck heat_extension_check(const Field& h);

struct MoleculeScaleRow {
    double radius = 0.0;
    double weighted = 0.0;    ///< ∫|𝓜a|^q |x − x₀|^{qnb}
    double plain = 0.0;       ///< ∫|𝓜a|^q
    double mean = 0.0;        ///< max_c |∫(𝓜a)_c| / ‖𝓜a‖₁
    double plancherel = 0.0;  ///< ‖𝓜a‖₂² / (|B|^{−1}/2)
};

struct MoleculeScaling {
    double q = 0.0;
    double b = 0.0;
    std::vector<MoleculeScaleRow> rows;
    double weighted_slope = 0.0;
    double plain_slope = 0.0;
    double weighted_predicted = 0.0;  ///< n(qb + 1 − q)
    double plain_predicted = 0.0;     ///< n(1 − q)
};

/// 𝓜 applied to tent_atom on balls about the box centre of the given radii,
/// with least-squares log–log slopes of both molecule integrals.
MoleculeScaling molecule_scaling(const Grid& grid, const TimeGrid& times, const std::vector<double>& radii, double q = 1.25);

nlohmann::json to_json(const MoleculeReport& r);
nlohmann::json to_json(const MoleculeScaling& s);

}  // namespace tentlab
