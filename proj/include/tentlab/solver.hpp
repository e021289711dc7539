#pragma once

#include "tentlab/duhamel.hpp"
#include "tentlab/tent.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tentlab {

struct SolverConfig {
    int max_iters = 30;
    double tol = 1e-8;  ///< absolute, in the X norm
    QuadratureScheme scheme{};
    int growth_window = 3;  ///< consecutive residual increases that count as divergence

    void validate() const;
};

/// U(t) = e^{tΔ}u₀ at every sample. A u₀ that is not divergence-free to
/// 1e−10 relative is Leray-projected first and a warning goes to std::clog.
SpaceTimeField caloric_extend(const Field& u0, const TimeGrid& times);

/// tent_norm(e^{tΔ}u₀, 2) with the mean mode removed.
double bmo_minus1_norm(const Field& u0, const TimeGrid& times, const BallFamily& family);
double bmo_minus1_norm(const Field& u0);
/// max_t t^{1/2}·sup|e^{tΔ}u₀| with the mean mode removed.
double besov_norm(const Field& u0, const TimeGrid& times);
double besov_norm(const Field& u0);
/// max over family balls of the ball average of |v − v_B|.
double bmo_norm(const Field& v, const BallFamily& family);

enum class PicardStatus { converged, diverged, max_iters };
std::string to_string(PicardStatus s);

struct PicardStep {
    int iteration = 0;
    double x_norm = 0.0;    ///< ‖u^{k}‖_X of the new iterate
    double residual = 0.0;  ///< ‖u^{k} − u^{k−1}‖_X
    std::optional<double> contraction;
};

struct PicardTrace {
    std::vector<PicardStep> steps;
    PicardStatus status = PicardStatus::max_iters;

    double final_residual() const;
    /// Largest contraction ratio over the steps where it is defined.
    std::optional<double> max_contraction() const;
};

nlohmann::json to_json(const PicardTrace& trace);

struct PicardResult {
    SpaceTimeField u;  ///< last finite iterate
    PicardTrace trace;
};

/// u⁰ = e^{tΔ}u₀, u^{k+1} = u⁰ − B(u^k, u^k) until ‖u^{k+1} − u^k‖_X ≤ tol.
PicardResult picard_solve(const Field& u0, const TimeGrid& times, const SolverConfig& config = {});

/// ‖u − e^{tΔ}u₀ + B(u, u)‖_X
double residual(const SpaceTimeField& u, const Field& u0, const QuadratureScheme& scheme = {});

struct SmallnessResult {
    double threshold = 0.0;  ///< largest converging amplitude found
    bool at_top = false;     ///< the bracket top converged
    bool at_bottom = false;  ///< the bracket bottom diverged; threshold is then 0
    std::vector<std::pair<double, bool>> probes;  ///< (amplitude, converged) in evaluation order
};

/// Bisection in log₂ amplitude over [2^{−20}, 2^{4}] of the converged outcome
/// of picard_solve(a·d) with d = direction/bmo_minus1_norm(direction); stops
/// once the bracket is narrower than a factor 2^{1/4}.
SmallnessResult smallness_search(const Field& direction, const TimeGrid& times, const SolverConfig& config = {});
nlohmann::json to_json(const SmallnessResult& r);

/// u_λ(t, x) = λ·u(λ²t, λx) on the box L/λ.
///
/// The grid keeps N points, so each coefficient stays at its index and only
/// the box, the time samples (t/λ²) and the amplitude change. λ must be a
/// power of two (2^k for integer k, negative k allowed).
SpaceTimeField scaling_transform(const SpaceTimeField& u, double lambda = 2.0);

}  // namespace tentlab
