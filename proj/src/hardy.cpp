#include "tentlab/hardy.hpp"

#include "tentlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tentlab {

namespace {

Field single_component(const Field& f, int component) {
    Field out(f.grid(), Rank::scalar);
    std::copy(f.coeffs(component).begin(), f.coeffs(component).end(), out.coeffs(0).begin());
    return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

std::vector<double> hardy_maximal(const Field& f, int component, const TimeGrid& scales) {
    const Grid& grid = f.grid();
    const Field fc = single_component(f, component);
    std::vector<double> out(grid.points());
    {
        const auto v = to_physical(fc).values[0];
        for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::abs(v[x]);
    }
    for (int j = 0; j < scales.count(); ++j) {
        const double tau = scales.at(j);
        auto v = to_physical(heat_evolve(fc, tau)).values[0];
        for (double& e : v) e = std::abs(e);
        const RowScanner scanner(grid, v, true);
        const auto m = scanner.maxima(ball_rows(grid, std::sqrt(tau), false));
        for (std::size_t x = 0; x < out.size(); ++x) out[x] = std::max({out[x], m[x], v[x]});
    }
    return out;
}

double hardy_norm(const Field& f, const TimeGrid& scales) {
    double sum = 0.0;
    for (int c = 0; c < f.components(); ++c) sum += l1_norm(f.grid(), hardy_maximal(f, c, scales));
    return sum;
}

double hardy_norm(const Field& f) { return hardy_norm(f, TimeGrid::for_grid(f.grid())); }

MoleculeReport molecule_validate(const Field& m, const Point& x0, double q, std::optional<double> b) {
    const Grid& grid = m.grid();
    const int n = grid.dim();
    if (!(q > 1.0 && q < double(n) / (n - 1))) throw std::invalid_argument("molecule_validate: q must lie in (1, n/(n-1))");
    MoleculeReport r;
    r.q = q;
    r.b = b.value_or(2.0 * (q - 1.0) / q);
    if (!(r.b > 1.0 - 1.0 / q)) throw std::invalid_argument("molecule_validate: b must exceed 1 - 1/q");
    r.theta = (1.0 - 1.0 / q) / r.b;

    const PhysicalField p = to_physical(m);
    double lq = 0.0, wq = 0.0, l1 = 0.0;
    for (std::size_t x = 0; x < grid.points(); ++x) {
        const double a = p.magnitude(x);
        const double aq = std::pow(a, q);
        lq += aq;
        wq += std::pow(grid.distance(x, x0), q * n * r.b) * aq;
        l1 += a;
    }
    const double hn = grid.cell_volume();
    r.lq_norm = std::pow(lq * hn, 1.0 / q);
    r.weighted_norm = std::pow(wq * hn, 1.0 / q);
    r.norm_triple = std::pow(r.lq_norm, 1.0 - r.theta) * std::pow(r.weighted_norm, r.theta);
    l1 *= hn;
    r.moments_ok = true;
    for (int c = 0; c < m.components(); ++c) {
        const double residual = std::abs(m.coeffs(c)[0]) * grid.volume();
        r.moment_residuals.push_back(residual);
        if (residual > 1e-10 * l1) r.moments_ok = false;
    }
    return r;
}

Field calM_apply(const SpaceTimeField& g) {
    if (g.rank() != Rank::vector) throw std::invalid_argument("calM_apply: input must be a vector field");
    const auto w = g.times().weights();
    Field sum(g.grid(), Rank::vector);
    for (int j = 0; j < g.count(); ++j) sum.axpy(w[static_cast<std::size_t>(j)], heat_evolve(g.slice(j), g.times().at(j)));
    return differentiate(leray_project(sum), Gradient{});
}

SpaceTimeField a2star_apply(const SpaceTimeField& g) {
    const Field m = calM_apply(g);
    return SpaceTimeField::from_function(g.times(), [&](double s) { return -1.0 * heat_evolve(m, s); });
}

RatioCheck heat_extension_check(const Field& h) {
    RatioCheck r;
    const TimeGrid times = TimeGrid::for_grid(h.grid());
    r.denominator = hardy_norm(h, times);
    if (r.denominator == 0.0) {
        r.vacuous = true;
        return r;
    }
    const SpaceTimeField u = SpaceTimeField::from_function(times, [&](double s) { return heat_evolve(h, s); });
    r.numerator = t1inf_norm(magnitude(u));
    r.ratio = r.numerator / r.denominator;
    return r;
}

MoleculeScaling molecule_scaling(const Grid& grid, const TimeGrid& times, const std::vector<double>& radii, double q) {
    const int n = grid.dim();
    MoleculeScaling s;
    s.q = q;
    s.b = 2.0 * (q - 1.0) / q;
    s.weighted_predicted = n * (q * s.b + 1.0 - q);
    s.plain_predicted = n * (1.0 - q);
    const Point x0 = grid.position(grid.flatten({grid.size() / 2, grid.size() / 2, n == 3 ? grid.size() / 2 : 0}));
    std::vector<double> lr, lw, lp;
    for (double radius : radii) {
        const Ball ball{x0, radius};
        const SpaceTimeField a = to_spectral(tent_atom(grid, times, Rank::vector, ball, 0));
        const Field ma = calM_apply(a);
        const PhysicalField p = to_physical(ma);
        MoleculeScaleRow row;
        row.radius = radius;
        double l1 = 0.0;
        for (std::size_t x = 0; x < grid.points(); ++x) {
            const double v = p.magnitude(x);
            const double vq = std::pow(v, q);
            row.plain += vq;
            row.weighted += std::pow(grid.distance(x, x0), q * n * s.b) * vq;
            l1 += v;
        }
        const double hn = grid.cell_volume();
        row.plain *= hn;
        row.weighted *= hn;
        l1 *= hn;
        for (int c = 0; c < ma.components(); ++c) row.mean = std::max(row.mean, std::abs(ma.coeffs(c)[0]) * grid.volume() / l1);
        row.plancherel = ma.l2_norm2() / (0.5 / ball_volume(grid, ball));
        s.rows.push_back(row);
        lr.push_back(std::log(radius));
        lw.push_back(std::log(row.weighted));
        lp.push_back(std::log(row.plain));
    }
    if (radii.size() >= 2) {
        s.weighted_slope = slope(lr, lw);
        s.plain_slope = slope(lr, lp);
    }
    return s;
}

nlohmann::json to_json(const MoleculeReport& r) {
    return {{"p", r.p},
            {"q", r.q},
            {"b", r.b},
            {"theta", r.theta},
            {"lq_norm", r.lq_norm},
            {"weighted_norm", r.weighted_norm},
            {"norm_triple", r.norm_triple},
            {"moment_residuals", r.moment_residuals},
            {"moments_ok", r.moments_ok}};
}

nlohmann::json to_json(const MoleculeScaling& s) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : s.rows)
        rows.push_back({{"radius", r.radius}, {"weighted", r.weighted}, {"plain", r.plain}, {"mean", r.mean}, {"plancherel", r.plancherel}});
    return {{"q", s.q},
            {"b", s.b},
            {"rows", rows},
            {"weighted_slope", s.weighted_slope},
            {"weighted_predicted", s.weighted_predicted},
            {"plain_slope", s.plain_slope},
            {"plain_predicted", s.plain_predicted}};
}

}  // namespace tentlab
