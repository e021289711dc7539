#pragma once

#include "tentlab/quadrature.hpp"
#include "tentlab/spacetime.hpp"

#include <functional>
#include <span>
#include <vector>

namespace tentlab {

/// A tensor field given at arbitrary times, for inputs known in closed form.
using TimeSource = std::function<Field(double)>;

/// A(α)(t) = ∫₀^t e^{(t−s)Δ}ℙdiv α(s) ds at every sample t.
///
/// The heat factor is integrated exactly over each graded cell and ℙdiv α
/// is taken at the cell node, log-linearly interpolated between samples.
SpaceTimeField duhamel_A(const SpaceTimeField& alpha, const QuadratureScheme& scheme = {});
std::vector<SpaceTimeField> duhamel_A(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme = {});
/// Same rule with α evaluated directly at the nodes.
SpaceTimeField duhamel_A(const TimeSource& alpha, const TimeGrid& targets, const QuadratureScheme& scheme = {});

/// B(u, v) = A(u ⊗ v) with the dealiased slicewise product.
SpaceTimeField bilinear_B(const SpaceTimeField& u, const SpaceTimeField& v, const QuadratureScheme& scheme = {});

/// M⁺f(t) = ∫₀^t e^{(t−s)Δ}Δ f(s) ds, any rank.
SpaceTimeField maxreg_apply(const SpaceTimeField& f, const QuadratureScheme& scheme = {});
std::vector<SpaceTimeField> maxreg_apply(std::span<const SpaceTimeField> fs, const QuadratureScheme& scheme = {});

/// (ZF)(s) = T_s F(s) at every sample (tensor → vector).
SpaceTimeField z_apply(const SpaceTimeField& f);

/// A₁(α) = M⁺Z(s^{1/2}α) with Z(s^{1/2}α) evaluated at the quadrature nodes.
SpaceTimeField a1_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme = {});
std::vector<SpaceTimeField> a1_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme = {});

/// A₂(α)(t) = ∫₀^∞ e^{(t+s)Δ}ℙdiv α(s) ds, per target with the (t+s) kernel
/// integrated exactly; α vanishes past the last sample.
SpaceTimeField a2_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme = {}, SpanRule rule = SpanRule::graded);
std::vector<SpaceTimeField> a2_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme = {},
                                     SpanRule rule = SpanRule::graded);

/// A₃(α)(t) = ∫_t^∞ e^{(t+s)Δ}ℙdiv α(s) ds.
SpaceTimeField a3_apply(const SpaceTimeField& alpha, const QuadratureScheme& scheme = {}, SpanRule rule = SpanRule::graded);
std::vector<SpaceTimeField> a3_apply(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme = {},
                                     SpanRule rule = SpanRule::graded);

/// 𝓜′(α) = ∫₀^∞ e^{sΔ}ℙdiv α(s) ds, so that A₂(α)(t) = e^{tΔ}𝓜′(α).
Field calM_prime(const SpaceTimeField& alpha, const QuadratureScheme& scheme = {}, SpanRule rule = SpanRule::graded);

/// 𝓡(s^p F)(t) = ∫_t^∞ K_{t,s}(s^p F(s)) ds with K_{t,s} = e^{(t+s)Δ}ℙ s^{−1/2}div.
///
/// e^{tΔ} is factored out and the s-integrals are accumulated once per
/// sample interval; s^{p−1/2} is taken at the cell node.
SpaceTimeField r_apply(const SpaceTimeField& f, const QuadratureScheme& scheme = {}, SpanRule rule = SpanRule::graded,
                       double source_power = 0.0);
std::vector<SpaceTimeField> r_apply(std::span<const SpaceTimeField> fs, const QuadratureScheme& scheme = {},
                                    SpanRule rule = SpanRule::graded, double source_power = 0.0);

struct DecompositionDefect {
    double max_relative = 0.0;  ///< max over members and samples of ‖A − (A₁ + A₂ − A₃)‖₂/‖A‖₂
    std::vector<double> per_member;
};

DecompositionDefect decomposition_defect(std::span<const SpaceTimeField> alphas, const QuadratureScheme& scheme = {});

}  // namespace tentlab
