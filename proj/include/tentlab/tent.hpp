#pragma once

#include "tentlab/balls.hpp"
#include "tentlab/spacetime.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tentlab {

struct BallEntry {
    Ball ball;
    double value = 0.0;  ///< (ball average of |F|^p)^{1/p}
};

struct TentNormReport {
    std::string norm;
    int p = 1;
    double value = 0.0;
    Ball argmax;
    int stride = 0;
    std::vector<double> radii;
    std::vector<BallEntry> table;
};

/// sup over family balls of ((1/|B|)∫_{B×[0,R²]}|F|^p)^{1/p}, p ∈ {1, 2}.
TentNormReport tent_norm(const Density& magnitude, int p, const BallFamily& family);
TentNormReport tent_norm(const SpaceTimeField& field, int p, const BallFamily& family);

/// max_t t^{1/2}·sup|u(t)| + ‖u‖_{T^{∞,2}}
double x_norm(const SpaceTimeField& u, const BallFamily& family);
double x_norm(const SpaceTimeField& u);
/// max_t t·sup|α(t)| + ‖α‖_{T^{∞,1}}
double y_norm(const SpaceTimeField& alpha, const BallFamily& family);
double y_norm(const SpaceTimeField& alpha);

/// max_t t^{power}·sup_x |u(t, x)|
double weighted_sup(const Density& magnitude, double power);

/// N(u)(x) = max over the closed cone {(t, y) : dist(x, y) ≤ √t}.
std::vector<double> nontangential_max(const Density& magnitude);
double t1inf_norm(const Density& magnitude);

/// S(u)(x)² = Σ_j w_j t_j^{−n/2} hⁿ Σ_{dist(x,y) ≤ √t_j} |u(t_j, y)|²; height
/// keeps only samples with √t_j ≤ height.
std::vector<double> square_function(const Density& magnitude, std::optional<double> height = std::nullopt);
double t12_norm(const Density& magnitude);

/// Discrete L¹ norm Σ f hⁿ.
double l1_norm(const Grid& grid, const std::vector<double>& f);

/// Indices of tent slice j of B: points with R − dist(y, c) ≥ √t_j.
bool in_tent(const Grid& grid, const Ball& ball, double t, std::size_t y);

/// μ(tent(B)) = Σ_j w_j Σ_{y in tent slice} μ_j(y) hⁿ for each family ball,
/// indexed [radius][center].
std::vector<std::vector<double>> tent_masses(const Density& mu, const BallFamily& family);

/// 𝒞(μ)(x) = max over family balls B ∋ x of μ(tent(B))/|B|.
std::vector<double> carleson_functional(const Density& mu, const BallFamily& family);
/// 𝒞₂(F) = 𝒞(|F|²)^{1/2}
std::vector<double> c2_functional(const Density& magnitude, const BallFamily& family);

struct RatioCheck {
    double ratio = 0.0;
    double numerator = 0.0;
    double denominator = 0.0;
    bool vacuous = false;
};

/// (Σ|H|μ) / (Σ N(H)·𝒞(μ))
RatioCheck carleson_embedding_check(const Density& h_magnitude, const Density& mu, const BallFamily& family);

/// (Σ|F||G|) / (Σ 𝒞₂(F)·S(G))
RatioCheck pairing_check(const Density& f, const Density& g, const BallFamily& family);

/// (Σ|F||G|) / (Σ S(F)·S(G)); at most 1 for sample times t ≤ L².
RatioCheck cauchy_schwarz_check(const Density& f, const Density& g);

/// 𝔥(x): largest sampled √t_J with S_{√t_J}(F)(x) ≤ ν·𝒞₂(F)(x), 0 if none.
std::vector<double> stopping_height(const Density& magnitude, double nu, const BallFamily& family);

/// 3ⁿ·100
double default_nu(int dim);

/// min over family balls of |{x ∈ B : 𝔥(x) ≥ R}| / |B|.
double stopping_set_fraction(const std::vector<double>& height, const BallFamily& family);

/// 𝔐f(x) = max over family balls B ∋ x of the average of |f| on B.
std::vector<double> hl_maximal(const std::vector<double>& f, const BallFamily& family);

/// Checks [0,(r/2)²]×B(x₀,r/2) ⊆ tent(B(x₀,r)) ⊆ [0,r²]×B(x₀,r) as index sets.
bool tent_sandwich_holds(const Grid& grid, const TimeGrid& times, const Ball& ball);

nlohmann::json to_json(const TentNormReport& report);
std::string table_csv(const TentNormReport& report);

}  // namespace tentlab
