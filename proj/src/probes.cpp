#include "tentlab/probes.hpp"

#include "tentlab/hardy.hpp"
#include "tentlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace tentlab {

namespace {

/// Members are generated and probed in small chunks to bound memory at N = 128.
constexpr int chunk = 4;
constexpr std::uint64_t partner_offset = 1000003;

using RatioFn = std::function<std::vector<double>(std::span<const SpaceTimeField>, std::span<const SpaceTimeField>)>;

struct Measured {
    std::vector<double> per_sample;
    int vacuous = 0;
    double max = 0.0;
};

Measured measure(const ProbeSetup& setup, Rank rank, bool partners, const RatioFn& ratio) {
    const Grid grid = setup.grid();
    const TimeGrid times = setup.times();
    Measured m;
    for (int start = 0; start < setup.corpus_size; start += chunk) {
        const int count = std::min(chunk, setup.corpus_size - start);
        const auto seed = setup.seed + static_cast<std::uint64_t>(start);
        const auto members = spacetime_corpus(grid, times, rank, seed, count, setup.spectrum);
        const auto others = partners ? spacetime_corpus(grid, times, rank, seed + partner_offset, count, setup.spectrum)
                                     : std::vector<SpaceTimeField>{};
        for (double r : ratio(members, others)) {
            if (std::isnan(r)) {
                ++m.vacuous;
                continue;
            }
            m.per_sample.push_back(r);
            m.max = std::max(m.max, r);
        }
    }
    return m;
}

double quotient(double num, double den) { return den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : num / den; }

OperatorNormReport probe(const ProbeSetup& setup, Rank rank, std::string op, std::string in_norm, std::string out_norm,
                         bool refine, bool partners, const RatioFn& ratio) {
    OperatorNormReport r;
    r.op = std::move(op);
    r.in_norm = std::move(in_norm);
    r.out_norm = std::move(out_norm);
    r.corpus_size = setup.corpus_size;
    r.seed = setup.seed;
    r.grid_size = setup.size;
    Measured base = measure(setup, rank, partners, ratio);
    r.per_sample = std::move(base.per_sample);
    r.vacuous = base.vacuous;
    r.max_ratio = base.max;
    if (refine) {
        const ProbeSetup fine = setup.refined();
        Measured f = measure(fine, rank, partners, ratio);
        r.refined_size = fine.size;
        r.refined_per_sample = std::move(f.per_sample);
        r.refined_max = f.max;
        r.drift = quotient(r.refined_max, r.max_ratio);
    }
    return r;
}

double tent2(const SpaceTimeField& f) { return tent_norm(f, 2, BallFamily(f.grid())).value; }

RatioFn tent_ratio(std::function<std::vector<SpaceTimeField>(std::span<const SpaceTimeField>)> op) {
    return [op](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField>) {
        const auto out = op(fs);
        std::vector<double> r;
        for (std::size_t i = 0; i < fs.size(); ++i) r.push_back(quotient(tent2(out[i]), tent2(fs[i])));
        return r;
    };
}

SpaceTimeField root_weighted(const SpaceTimeField& f) {
    return f.weighted([](double t) { return std::sqrt(t); });
}

}  // namespace

ProbeSetup ProbeSetup::refined() const {
    ProbeSetup s = *this;
    s.size *= 2;
    return s;
}

bool OperatorNormReport::finite() const {
    if (per_sample.empty() && refined_per_sample.empty()) return false;
    for (double v : per_sample)
        if (!std::isfinite(v)) return false;
    for (double v : refined_per_sample)
        if (!std::isfinite(v)) return false;
    return true;
}

bool OperatorNormReport::drift_within(double factor) const {
    if (refined_size == 0 || !(drift > 0.0) || !std::isfinite(drift)) return false;
    return std::max(drift, 1.0 / drift) <= factor;
}

nlohmann::json to_json(const OperatorNormReport& r) {
    nlohmann::json j{{"op", r.op},
                     {"in_norm", r.in_norm},
                     {"out_norm", r.out_norm},
                     {"corpus_size", r.corpus_size},
                     {"corpus_seed", r.seed},
                     {"grid_size", r.grid_size},
                     {"per_sample", r.per_sample},
                     {"vacuous", r.vacuous},
                     {"max_ratio", r.max_ratio}};
    if (r.refined_size > 0) {
        j["refined_grid_size"] = r.refined_size;
        j["refined_per_sample"] = r.refined_per_sample;
        j["refined_max_ratio"] = r.refined_max;
        j["drift"] = r.drift;
    }
    return j;
}

OperatorNormReport desimon_check(const ProbeSetup& setup) {
    const QuadratureScheme q = setup.scheme;
    return probe(setup, Rank::vector, "maxreg", "L2", "L2", false, false,
                 [q](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField>) {
                     const auto out = maxreg_apply(fs, q);
                     std::vector<double> r;
                     for (std::size_t i = 0; i < fs.size(); ++i) r.push_back(quotient(out[i].l2_norm(), fs[i].l2_norm()));
                     return r;
                 });
}

OperatorNormReport maxreg_tent_check(const ProbeSetup& setup) {
    const QuadratureScheme q = setup.scheme;
    return probe(setup, Rank::vector, "maxreg", "T^{inf,2}", "T^{inf,2}", true, false,
                 tent_ratio([q](std::span<const SpaceTimeField> fs) { return maxreg_apply(fs, q); }));
}

OperatorNormReport z_tent_check(const ProbeSetup& setup) {
    return probe(setup, Rank::tensor, "Z", "T^{inf,2}", "T^{inf,2}", true, false,
                 tent_ratio([](std::span<const SpaceTimeField> fs) {
                     std::vector<SpaceTimeField> out;
                     for (const auto& f : fs) out.push_back(z_apply(f));
                     return out;
                 }));
}

OperatorNormReport r_tent_check(const ProbeSetup& setup) {
    const QuadratureScheme q = setup.scheme;
    return probe(setup, Rank::tensor, "R", "T^{inf,2}", "T^{inf,2}", true, false,
                 tent_ratio([q](std::span<const SpaceTimeField> fs) { return r_apply(fs, q, SpanRule::graded, 0.0); }));
}

OperatorNormReport pointwise_bound_check(const ProbeSetup& setup) {
    const QuadratureScheme q = setup.scheme;
    return probe(setup, Rank::tensor, "A", "Y", "t^{1/2} sup", true, false,
                 [q](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField>) {
                     const auto out = duhamel_A(fs, q);
                     std::vector<double> r;
                     for (std::size_t i = 0; i < fs.size(); ++i)
                         r.push_back(quotient(weighted_sup(magnitude(out[i]), 0.5), y_norm(fs[i])));
                     return r;
                 });
}

OperatorNormReport duhamel_tent_check(const ProbeSetup& setup) {
    const QuadratureScheme q = setup.scheme;
    return probe(setup, Rank::tensor, "A", "T^{inf,1} + s^{1/2}T^{inf,2}", "T^{inf,2}", true, false,
                 [q](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField>) {
                     const auto out = duhamel_A(fs, q);
                     std::vector<double> r;
                     for (std::size_t i = 0; i < fs.size(); ++i) {
                         const BallFamily family(fs[i].grid());
                         const double den = tent_norm(fs[i], 1, family).value + tent_norm(root_weighted(fs[i]), 2, family).value;
                         r.push_back(quotient(tent_norm(out[i], 2, family).value, den));
                     }
                     return r;
                 });
}

OperatorNormReport carleson_probe(const ProbeSetup& setup) {
    return probe(setup, Rank::vector, "carleson-embedding", "N(H)·C(mu)", "|H| mu", true, true,
                 [](std::span<const SpaceTimeField> hs, std::span<const SpaceTimeField> mus) {
                     std::vector<double> r;
                     for (std::size_t i = 0; i < hs.size(); ++i) {
                         const RatioCheck c = carleson_embedding_check(magnitude(hs[i]), magnitude(mus[i]), BallFamily(hs[i].grid()));
                         r.push_back(c.vacuous ? std::numeric_limits<double>::quiet_NaN() : c.ratio);
                     }
                     return r;
                 });
}

OperatorNormReport pairing_probe(const ProbeSetup& setup) {
    return probe(setup, Rank::vector, "tent-pairing", "C2(F)·S(G)", "|F||G|", true, true,
                 [](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField> gs) {
                     std::vector<double> r;
                     for (std::size_t i = 0; i < fs.size(); ++i) {
                         const RatioCheck c = pairing_check(magnitude(fs[i]), magnitude(gs[i]), BallFamily(fs[i].grid()));
                         r.push_back(c.vacuous ? std::numeric_limits<double>::quiet_NaN() : c.ratio);
                     }
                     return r;
                 });
}

OperatorNormReport cauchy_schwarz_probe(const ProbeSetup& setup) {
    return probe(setup, Rank::vector, "cauchy-schwarz", "S(F)·S(G)", "|F||G|", true, true,
                 [](std::span<const SpaceTimeField> fs, std::span<const SpaceTimeField> gs) {
                     std::vector<double> r;
                     for (std::size_t i = 0; i < fs.size(); ++i) {
                         const RatioCheck c = cauchy_schwarz_check(magnitude(fs[i]), magnitude(gs[i]));
                         r.push_back(c.vacuous ? std::numeric_limits<double>::quiet_NaN() : c.ratio);
                     }
                     return r;
                 });
}

bool SchurReport::finite() const {
    return std::isfinite(sup_s) && std::isfinite(sup_t) && std::isfinite(pointwise_constant) && sup_s > 0.0 && sup_t > 0.0;
}

SchurReport schur_check(const Grid& grid, const TimeGrid& times, double beta, int probe_fields, std::uint64_t seed) {
    if (!(beta > -0.5 && beta < 0.0)) throw std::invalid_argument("schur_check: beta must lie in (-1/2, 0)");
    const int n = times.count();
    const auto w = times.weights();
    std::vector<double> k(static_cast<std::size_t>(n * n), 0.0);  // k[i*n + j] = k(t_i, s_j)
    SchurReport r;
    r.beta = beta;
    r.grid_size = grid.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double t = times.at(i), s = times.at(j);
            const double v = kts_discrete_norm(grid, t, s);
            k[static_cast<std::size_t>(i * n + j)] = v;
            r.pointwise_constant = std::max(r.pointwise_constant, v * std::sqrt(s) * std::sqrt(t + s));
        }
    for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int i = 0; i < j; ++i) sum += w[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(i * n + j)] * std::pow(times.at(i), beta);
        r.sup_s = std::max(r.sup_s, sum / std::pow(times.at(j), beta));
    }
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = i + 1; j < n; ++j) sum += w[static_cast<std::size_t>(j)] * k[static_cast<std::size_t>(i * n + j)] * std::pow(times.at(j), beta);
        r.sup_t = std::max(r.sup_t, sum / std::pow(times.at(i), beta));
    }
    r.probe_excess = -std::numeric_limits<double>::infinity();
    for (int f = 0; f < probe_fields; ++f) {
        const Field a = random_field(grid, Rank::tensor, seed + static_cast<std::uint64_t>(f), SpectrumShape{0.0, grid.size()});
        for (int i = 0; i + 1 < n; i += std::max(1, n / 6))
            for (int j = i + 1; j < n; j += std::max(1, n / 6)) {
                const double t = times.at(i), s = times.at(j);
                const double measured = kts_apply(a, t, s).l2_norm() / a.l2_norm();
                r.probe_excess = std::max(r.probe_excess, measured - k[static_cast<std::size_t>(i * n + j)]);
            }
    }
    return r;
}

nlohmann::json to_json(const SchurReport& r) {
    return {{"beta", r.beta},
            {"grid_size", r.grid_size},
            {"sup_s", r.sup_s},
            {"sup_t", r.sup_t},
            {"pointwise_constant", r.pointwise_constant},
            {"probe_excess", r.probe_excess}};
}

DualityReport duality_check(const Grid& grid, const TimeGrid& times, std::uint64_t seed) {
    const SpaceTimeField f = random_spacetime(grid, times, Rank::tensor, seed, {});
    const SpaceTimeField g = random_spacetime(grid, times, Rank::vector, seed + 1, {});
    DualityReport r;
    r.lhs = pairing(a2_apply(f, {}, SpanRule::sample), g);
    r.rhs = pairing(f, a2star_apply(g));
    r.relative = std::abs(r.lhs - r.rhs) / std::max(std::abs(r.lhs), std::abs(r.rhs));
    return r;
}

nlohmann::json to_json(const DualityReport& r) {
    return {{"lhs", r.lhs}, {"rhs", r.rhs}, {"relative", r.relative}};
}

}  // namespace tentlab
