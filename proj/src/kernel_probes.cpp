#include "tentlab/kernel_probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tentlab {

KernelReport oseen_kernel_check(const Grid& grid, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("oseen_kernel_check: t must be positive");
    const int n = grid.dim();
    const double h = grid.spacing();
    // Column j of σ_t is e^{tΔ}ℙ applied to δ e_j; a discrete delta of unit mass has
    // every Fourier coefficient equal to 1/L^n.
    std::vector<PhysicalField> columns;
    for (int j = 0; j < n; ++j) {
        Field delta(grid, Rank::vector);
        for (auto& c : delta.coeffs(j)) c = 1.0 / grid.volume();
        columns.push_back(to_physical(heat_evolve(leray_project(delta), t)));
    }
    KernelReport report;
    const int steps = grid.size() / 4;
    for (int i = 0; i <= steps; ++i) {
        Index idx{};
        idx[0] = i;
        const std::size_t x = grid.flatten(idx);
        double frob = 0.0;
        for (const auto& col : columns)
            for (const auto& comp : col.values) frob += comp[x] * comp[x];
        const double r = i * h;
        KernelRow row;
        row.t = t;
        row.d = r;
        row.ratio = std::sqrt(frob) * std::pow(t, 0.5 * n) * std::pow(1.0 + r / std::sqrt(t), n);
        report.constant = std::max(report.constant, row.ratio);
        report.rows.push_back(row);
    }
    for (auto& row : report.rows) row.bound = report.constant;
    return report;
}

KernelReport oseen_kernel_check(const Grid& grid, const std::vector<double>& times) {
    KernelReport all;
    for (double t : times) {
        KernelReport r = oseen_kernel_check(grid, t);
        all.constant = std::max(all.constant, r.constant);
        all.rows.insert(all.rows.end(), r.rows.begin(), r.rows.end());
    }
    for (auto& row : all.rows) row.bound = all.constant;
    return all;
}

namespace {

std::vector<char> ball_mask(const Grid& grid, const SpatialBall& b) {
    std::vector<char> mask(grid.points(), 0);
    for (std::size_t x = 0; x < grid.points(); ++x) mask[x] = grid.distance(x, b.center) <= b.radius + 1e-12;
    return mask;
}

Field masked(const Field& f, const std::vector<char>& mask) {
    PhysicalField p = to_physical(f);
    for (auto& comp : p.values)
        for (std::size_t x = 0; x < comp.size(); ++x)
            if (!mask[x]) comp[x] = 0.0;
    return to_spectral(p);
}

}  // namespace

double ball_separation(const Grid& grid, const SpatialBall& e, const SpatialBall& f) {
    const auto me = ball_mask(grid, e), mf = ball_mask(grid, f);
    long best = std::numeric_limits<long>::max();
    bool overlap = false;
    for (std::size_t a = 0; a < grid.points(); ++a) {
        if (!me[a]) continue;
        if (mf[a]) overlap = true;
        for (std::size_t b = 0; b < grid.points(); ++b)
            if (mf[b]) best = std::min(best, grid.index_distance2(a, b));
    }
    if (overlap || best == std::numeric_limits<long>::max()) return 0.0;
    return std::sqrt(static_cast<double>(best)) * grid.spacing();
}

OffDiagReport offdiag_probe(const std::function<MultiplierOp(double)>& family, const SpatialBall& e,
                            const SpatialBall& f, const std::vector<double>& t_list,
                            const std::vector<Field>& corpus) {
    if (corpus.empty()) throw std::invalid_argument("offdiag_probe: empty corpus");
    const Grid& grid = corpus.front().grid();
    const double d = ball_separation(grid, e, f);
    if (!(d > 0.0)) throw std::invalid_argument("offdiag_probe: E and F overlap");
    const auto me = ball_mask(grid, e), mf = ball_mask(grid, f);
    std::vector<Field> inputs;
    for (const auto& g : corpus) inputs.push_back(masked(g, mf));

    OffDiagReport report;
    for (double t : t_list) {
        const MultiplierOp op = family(t);
        double best = 0.0;
        for (const auto& in : inputs) {
            const double denom = in.l2_norm();
            if (denom == 0.0) continue;
            best = std::max(best, masked(op.apply(in), me).l2_norm() / denom);
        }
        report.separations.push_back(d);
        report.times.push_back(t);
        report.ratios.push_back(best);
    }
    // log ratio = log C − M·log(1 + d²/t)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < report.times.size(); ++i) {
        if (!(report.ratios[i] > 0.0)) continue;
        const double x = std::log1p(d * d / report.times[i]);
        const double y = std::log(report.ratios[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2) {
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        report.fitted_order = -slope;
        report.fitted_constant = std::exp((sy - slope * sx) / m);
    }
    return report;
}

std::vector<KernelRow> OffDiagReport::rows() const {
    std::vector<KernelRow> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double d = separations[i];
        out.push_back({times[i], d, ratios[i], fitted_constant * std::pow(1.0 + d * d / times[i], -fitted_order)});
    }
    return out;
}

namespace {

nlohmann::json rows_json(const std::vector<KernelRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) out.push_back({{"t", r.t}, {"d", r.d}, {"ratio", r.ratio}, {"bound", r.bound}});
    return out;
}

}  // namespace

nlohmann::json to_json(const KernelReport& report) {
    return {{"constant", report.constant}, {"rows", rows_json(report.rows)}};
}

nlohmann::json to_json(const OffDiagReport& report) {
    return {{"fitted_order", report.fitted_order},
            {"fitted_constant", report.fitted_constant},
            {"rows", rows_json(report.rows())}};
}

}  // namespace tentlab
