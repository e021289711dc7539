#include "tentlab/solver.hpp"

#include "tentlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace tentlab {

namespace {

Field without_mean(Field f) {
    for (int c = 0; c < f.components(); ++c) f.coeffs(c)[0] = cplx(0.0, 0.0);
    return f;
}

bool converges(const Field& u0, const TimeGrid& times, const SolverConfig& config) {
    return picard_solve(u0, times, config).trace.status == PicardStatus::converged;
}

}  // namespace

void SolverConfig::validate() const {
    if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
    if (growth_window < 1) throw std::invalid_argument("solver: growth_window must be >= 1");
    scheme.validate();
}

SpaceTimeField caloric_extend(const Field& u0, const TimeGrid& times) {
    if (u0.rank() != Rank::vector) throw std::invalid_argument("caloric_extend: expected a vector field");
    const Field p = leray_project(u0);
    const double scale = u0.l2_norm();
    const bool solenoidal = (u0 - p).l2_norm() <= 1e-10 * scale;
    if (!solenoidal) std::clog << "warning: caloric_extend: initial data is not divergence-free; projecting\n";
    const Field& base = solenoidal ? u0 : p;
    return SpaceTimeField::from_function(times, [&](double t) { return heat_evolve(base, t); });
}

double bmo_minus1_norm(const Field& u0, const TimeGrid& times, const BallFamily& family) {
    return tent_norm(caloric_extend(without_mean(u0), times), 2, family).value;
}

double bmo_minus1_norm(const Field& u0) {
    return bmo_minus1_norm(u0, TimeGrid::for_grid(u0.grid()), BallFamily(u0.grid()));
}

double besov_norm(const Field& u0, const TimeGrid& times) {
    const Field f = without_mean(u0);
    double best = 0.0;
    for (int j = 0; j < times.count(); ++j)
        best = std::max(best, std::sqrt(times.at(j)) * to_physical(heat_evolve(f, times.at(j))).sup_norm());
    return best;
}

double besov_norm(const Field& u0) { return besov_norm(u0, TimeGrid::for_grid(u0.grid())); }

double bmo_norm(const Field& v, const BallFamily& family) {
    const Grid& g = family.grid();
    const PhysicalField p = to_physical(v);
    const int nc = v.components();
    double best = 0.0;
    std::vector<double> mean(static_cast<std::size_t>(nc));
    for (std::size_t r = 0; r < family.radii().size(); ++r) {
        const auto& offs = family.offsets(r);
        if (offs.empty()) continue;
        for (std::size_t c : family.centers()) {
            std::fill(mean.begin(), mean.end(), 0.0);
            for (const Index& o : offs) {
                const std::size_t y = g.shifted(c, o);
                for (int k = 0; k < nc; ++k) mean[static_cast<std::size_t>(k)] += p.values[static_cast<std::size_t>(k)][y];
            }
            for (double& m : mean) m /= static_cast<double>(offs.size());
            double osc = 0.0;
            for (const Index& o : offs) {
                const std::size_t y = g.shifted(c, o);
                double s = 0.0;
                for (int k = 0; k < nc; ++k) {
                    const double d = p.values[static_cast<std::size_t>(k)][y] - mean[static_cast<std::size_t>(k)];
                    s += d * d;
                }
                osc += std::sqrt(s);
            }
            best = std::max(best, osc / static_cast<double>(offs.size()));
        }
    }
    return best;
}

std::string to_string(PicardStatus s) {
    switch (s) {
        case PicardStatus::converged: return "converged";
        case PicardStatus::diverged: return "diverged";
        case PicardStatus::max_iters: return "max_iters";
    }
    return "unknown";
}

double PicardTrace::final_residual() const {
    return steps.empty() ? std::numeric_limits<double>::quiet_NaN() : steps.back().residual;
}

std::optional<double> PicardTrace::max_contraction() const {
    std::optional<double> best;
    for (const auto& s : steps)
        if (s.contraction) best = std::max(best.value_or(0.0), *s.contraction);
    return best;
}

nlohmann::json to_json(const PicardTrace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : trace.steps) {
        nlohmann::json j{{"iteration", s.iteration}, {"x_norm", s.x_norm}, {"residual", s.residual}};
        j["contraction"] = s.contraction ? nlohmann::json(*s.contraction) : nlohmann::json(nullptr);
        steps.push_back(j);
    }
    return {{"status", to_string(trace.status)}, {"iterations", trace.steps.size()}, {"steps", steps}};
}

PicardResult picard_solve(const Field& u0, const TimeGrid& times, const SolverConfig& config) {
    config.validate();
    const SpaceTimeField free = caloric_extend(u0, times);
    PicardResult out{free, {}};
    double prev = std::numeric_limits<double>::quiet_NaN();
    int growth = 0;
    for (int k = 1; k <= config.max_iters; ++k) {
        SpaceTimeField next = free - bilinear_B(out.u, out.u, config.scheme);
        if (!next.all_finite()) {
            out.trace.status = PicardStatus::diverged;
            return out;
        }
        const double res = x_norm(next - out.u);
        const double xn = x_norm(next);
        if (!std::isfinite(res) || !std::isfinite(xn)) {
            out.trace.status = PicardStatus::diverged;
            return out;
        }
        PicardStep step{k, xn, res, std::nullopt};
        if (prev > 0.0) step.contraction = res / prev;
        out.trace.steps.push_back(step);
        out.u = std::move(next);
        if (res <= config.tol) {
            out.trace.status = PicardStatus::converged;
            return out;
        }
        growth = (std::isfinite(prev) && res > prev) ? growth + 1 : 0;
        if (growth >= config.growth_window) {
            out.trace.status = PicardStatus::diverged;
            return out;
        }
        prev = res;
    }
    out.trace.status = PicardStatus::max_iters;
    return out;
}

double residual(const SpaceTimeField& u, const Field& u0, const QuadratureScheme& scheme) {
    SpaceTimeField d = u - caloric_extend(u0, u.times());
    d += bilinear_B(u, u, scheme);
    return x_norm(d);
}

SmallnessResult smallness_search(const Field& direction, const TimeGrid& times, const SolverConfig& config) {
    const double norm = bmo_minus1_norm(direction, times, BallFamily(direction.grid()));
    if (!(norm > 0.0)) throw std::invalid_argument("smallness_search: degenerate direction (zero BMO^-1 norm)");
    const Field d = (1.0 / norm) * direction;
    SmallnessResult r;
    auto probe = [&](double log2a) {
        const double a = std::exp2(log2a);
        const bool ok = converges(a * d, times, config);
        r.probes.emplace_back(a, ok);
        return ok;
    };
    double lo = -20.0, hi = 4.0;
    if (probe(hi)) {
        r.at_top = true;
        r.threshold = std::exp2(hi);
        return r;
    }
    if (!probe(lo)) {
        r.at_bottom = true;
        return r;
    }
    while (hi - lo > 0.25) {
        const double mid = 0.5 * (lo + hi);
        if (probe(mid)) lo = mid;
        else hi = mid;
    }
    r.threshold = std::exp2(lo);
    return r;
}

nlohmann::json to_json(const SmallnessResult& r) {
    nlohmann::json probes = nlohmann::json::array();
    for (const auto& [a, ok] : r.probes) probes.push_back({{"amplitude", a}, {"converged", ok}});
    return {{"threshold", r.threshold}, {"at_top", r.at_top}, {"at_bottom", r.at_bottom}, {"probes", probes}};
}

SpaceTimeField scaling_transform(const SpaceTimeField& u, double lambda) {
    int e = 0;
    const double mant = std::frexp(lambda, &e);
    const int k = e - 1;
    if (!(lambda > 0.0) || mant != 0.5 || std::exp2(std::abs(k)) > u.grid().size())
        throw std::invalid_argument("scaling_transform: lambda must be 2^k with 2^|k| <= N");
    const Grid& g = u.grid();
    const Grid scaled = make_grid(g.dim(), g.size(), g.box() / lambda);
    std::vector<Field> slices;
    for (const Field& f : u.slices()) {
        Field s(scaled, f.rank());
        for (int c = 0; c < f.components(); ++c) {
            auto src = f.coeffs(c);
            auto dst = s.coeffs(c);
            for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lambda * src[i];
        }
        slices.push_back(std::move(s));
    }
    return SpaceTimeField(u.times().scaled(1.0 / (lambda * lambda)), std::move(slices));
}

}  // namespace tentlab
