#include "tentlab/tent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tentlab {

namespace {

constexpr double tie = 1e-12;

}  // namespace

TentNormReport tent_norm(const Density& magnitude, int p, const BallFamily& family) {
    if (p != 1 && p != 2) throw std::invalid_argument("tent_norm: p must be 1 or 2");
    if (family.size() == 0) throw std::invalid_argument("tent_norm: empty ball family");
    if (!(magnitude.grid == family.grid())) throw std::invalid_argument("tent_norm: grid mismatch");
    const Grid& grid = magnitude.grid;
    TentNormReport report;
    report.norm = p == 1 ? "T_inf_1" : "T_inf_2";
    report.p = p;
    report.stride = family.stride();
    report.radii = family.radii();
    double best = -1.0;
    for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
        const double r = family.radii()[ri];
        const auto w = magnitude.times.weights(r * r);
        std::vector<double> integrated(grid.points(), 0.0);
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (w[j] == 0.0) continue;
            const auto& row = magnitude.values[j];
            for (std::size_t x = 0; x < grid.points(); ++x) integrated[x] += w[j] * (p == 1 ? row[x] : row[x] * row[x]);
        }
        const RowScanner scanner(grid, integrated, false);
        const BallRows rows = ball_rows(grid, r, false);
        const double count = static_cast<double>(family.offsets(ri).size());
        for (std::size_t ci = 0; ci < family.centers().size(); ++ci) {
            const double avg = scanner.sum(family.centers()[ci], rows) / count;
            const double value = p == 1 ? avg : std::sqrt(std::max(avg, 0.0));
            report.table.push_back({family.ball(ci, ri), value});
            if (value > best) {
                best = value;
                report.value = value;
                report.argmax = family.ball(ci, ri);
            }
        }
    }
    return report;
}

TentNormReport tent_norm(const SpaceTimeField& field, int p, const BallFamily& family) {
    return tent_norm(magnitude(field), p, family);
}

double weighted_sup(const Density& magnitude, double power) {
    double m = 0.0;
    for (int j = 0; j < magnitude.times.count(); ++j) {
        const auto& row = magnitude.values[static_cast<std::size_t>(j)];
        m = std::max(m, std::pow(magnitude.times.at(j), power) * *std::max_element(row.begin(), row.end()));
    }
    return m;
}

double x_norm(const SpaceTimeField& u, const BallFamily& family) {
    const Density mag = magnitude(u);
    return weighted_sup(mag, 0.5) + tent_norm(mag, 2, family).value;
}

double x_norm(const SpaceTimeField& u) { return x_norm(u, BallFamily(u.grid())); }

double y_norm(const SpaceTimeField& alpha, const BallFamily& family) {
    const Density mag = magnitude(alpha);
    return weighted_sup(mag, 1.0) + tent_norm(mag, 1, family).value;
}

double y_norm(const SpaceTimeField& alpha) { return y_norm(alpha, BallFamily(alpha.grid())); }

std::vector<double> nontangential_max(const Density& magnitude) {
    const Grid& grid = magnitude.grid;
    const ConeIndex cones = cone_index(grid, magnitude.times.values());
    std::vector<double> out(grid.points(), 0.0);
    for (std::size_t j = 0; j < cones.slices.size(); ++j) {
        const RowScanner scanner(grid, magnitude.values[j], true);
        for (std::size_t x = 0; x < grid.points(); ++x) out[x] = std::max(out[x], scanner.max(x, cones.slices[j]));
    }
    return out;
}

double l1_norm(const Grid& grid, const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += std::abs(v);
    return s * grid.cell_volume();
}

double t1inf_norm(const Density& magnitude) { return l1_norm(magnitude.grid, nontangential_max(magnitude)); }

namespace {

// Per-slice increments of S(u)(x)².
std::vector<std::vector<double>> square_increments(const Density& magnitude) {
    const Grid& grid = magnitude.grid;
    const auto w = magnitude.times.weights();
    const ConeIndex cones = cone_index(grid, magnitude.times.values());
    std::vector<std::vector<double>> out;
    for (std::size_t j = 0; j < cones.slices.size(); ++j) {
        std::vector<double> sq(grid.points());
        for (std::size_t x = 0; x < sq.size(); ++x) sq[x] = magnitude.values[j][x] * magnitude.values[j][x];
        const RowScanner scanner(grid, sq, false);
        const double t = magnitude.times.at(static_cast<int>(j));
        const double factor = w[j] * std::pow(t, -0.5 * grid.dim()) * grid.cell_volume();
        std::vector<double> inc = scanner.sums(cones.slices[j]);
        for (double& v : inc) v *= factor;
        out.push_back(std::move(inc));
    }
    return out;
}

}  // namespace

std::vector<double> square_function(const Density& magnitude, std::optional<double> height) {
    const auto inc = square_increments(magnitude);
    std::vector<double> out(magnitude.grid.points(), 0.0);
    for (std::size_t j = 0; j < inc.size(); ++j) {
        if (height && std::sqrt(magnitude.times.at(static_cast<int>(j))) > *height * (1 + tie)) break;
        for (std::size_t x = 0; x < out.size(); ++x) out[x] += inc[j][x];
    }
    for (double& v : out) v = std::sqrt(v);
    return out;
}

double t12_norm(const Density& magnitude) { return l1_norm(magnitude.grid, square_function(magnitude)); }

bool in_tent(const Grid& grid, const Ball& ball, double t, std::size_t y) {
    return ball.radius - grid.distance(y, ball.center) >= std::sqrt(t) - tie * ball.radius;
}

std::vector<std::vector<double>> tent_masses(const Density& mu, const BallFamily& family) {
    const Grid& grid = mu.grid;
    const auto w = mu.times.weights();
    std::vector<std::vector<double>> mass(family.radii().size(), std::vector<double>(family.centers().size(), 0.0));
    for (int j = 0; j < mu.times.count(); ++j) {
        const double root = std::sqrt(mu.times.at(j));
        const auto& row = mu.values[static_cast<std::size_t>(j)];
        if (std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; })) continue;
        const RowScanner scanner(grid, row, false);
        for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
            const double r = family.radii()[ri];
            if (root > r * (1 + tie)) continue;
            const BallRows rows = ball_rows(grid, std::max(r - root, 0.0), true);
            for (std::size_t ci = 0; ci < family.centers().size(); ++ci)
                mass[ri][ci] += w[static_cast<std::size_t>(j)] * scanner.sum(family.centers()[ci], rows) * grid.cell_volume();
        }
    }
    return mass;
}

std::vector<double> carleson_functional(const Density& mu, const BallFamily& family) {
    const Grid& grid = mu.grid;
    const auto mass = tent_masses(mu, family);
    std::vector<double> out(grid.points(), 0.0);
    for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
        const double vol = family.volume(ri);
        for (std::size_t ci = 0; ci < family.centers().size(); ++ci) {
            const double ratio = mass[ri][ci] / vol;
            const std::size_t c = family.centers()[ci];
            for (const Index& off : family.offsets(ri)) {
                double& slot = out[grid.shifted(c, off)];
                slot = std::max(slot, ratio);
            }
        }
    }
    return out;
}

std::vector<double> c2_functional(const Density& magnitude, const BallFamily& family) {
    auto out = carleson_functional(power(magnitude, 2.0), family);
    for (double& v : out) v = std::sqrt(v);
    return out;
}

namespace {

double spacetime_product(const Density& a, const Density& b) {
    if (!(a.times == b.times) || !(a.grid == b.grid)) throw std::invalid_argument("space-time product: grid mismatch");
    const auto w = a.times.weights();
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        for (std::size_t x = 0; x < a.grid.points(); ++x) s += w[j] * a.values[j][x] * b.values[j][x];
    return s * a.grid.cell_volume();
}

double spatial_product(const Grid& grid, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t x = 0; x < a.size(); ++x) s += a[x] * b[x];
    return s * grid.cell_volume();
}

RatioCheck ratio_of(double num, double den) {
    RatioCheck r;
    r.numerator = num;
    r.denominator = den;
    r.vacuous = !(den > 0.0);
    r.ratio = r.vacuous ? 0.0 : num / den;
    return r;
}

}  // namespace

RatioCheck carleson_embedding_check(const Density& h_magnitude, const Density& mu, const BallFamily& family) {
    const double lhs = spacetime_product(h_magnitude, mu);
    const double rhs = spatial_product(mu.grid, nontangential_max(h_magnitude), carleson_functional(mu, family));
    return ratio_of(lhs, rhs);
}

RatioCheck pairing_check(const Density& f, const Density& g, const BallFamily& family) {
    const double lhs = spacetime_product(f, g);
    const double rhs = spatial_product(f.grid, c2_functional(f, family), square_function(g));
    return ratio_of(lhs, rhs);
}

RatioCheck cauchy_schwarz_check(const Density& f, const Density& g) {
    const double lhs = spacetime_product(f, g);
    const double rhs = spatial_product(f.grid, square_function(f), square_function(g));
    return ratio_of(lhs, rhs);
}

std::vector<double> stopping_height(const Density& magnitude, double nu, const BallFamily& family) {
    if (!(nu > 0.0)) throw std::invalid_argument("stopping_height: nu must be positive");
    const Grid& grid = magnitude.grid;
    const auto c2 = c2_functional(magnitude, family);
    const auto inc = square_increments(magnitude);
    std::vector<double> height(grid.points(), 0.0);
    for (std::size_t x = 0; x < grid.points(); ++x) {
        const double cap = nu * nu * c2[x] * c2[x];
        double acc = 0.0;
        for (std::size_t j = 0; j < inc.size(); ++j) {
            acc += inc[j][x];
            if (acc > cap) break;
            height[x] = std::sqrt(magnitude.times.at(static_cast<int>(j)));
        }
    }
    return height;
}

double default_nu(int dim) { return std::pow(3.0, dim) * 100.0; }

double stopping_set_fraction(const std::vector<double>& height, const BallFamily& family) {
    const Grid& grid = family.grid();
    double worst = 1.0;
    for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
        const double r = family.radii()[ri];
        const auto& offs = family.offsets(ri);
        for (std::size_t c : family.centers()) {
            std::size_t good = 0;
            for (const Index& off : offs)
                if (height[grid.shifted(c, off)] >= r * (1 - 1e-9)) ++good;
            worst = std::min(worst, static_cast<double>(good) / static_cast<double>(offs.size()));
        }
    }
    return worst;
}

std::vector<double> hl_maximal(const std::vector<double>& f, const BallFamily& family) {
    const Grid& grid = family.grid();
    if (f.size() != grid.points()) throw std::invalid_argument("hl_maximal: size mismatch");
    std::vector<double> absf(f.size());
    for (std::size_t x = 0; x < f.size(); ++x) absf[x] = std::abs(f[x]);
    const RowScanner scanner(grid, absf, false);
    std::vector<double> out(grid.points(), 0.0);
    for (std::size_t ri = 0; ri < family.radii().size(); ++ri) {
        const BallRows rows = ball_rows(grid, family.radii()[ri], false);
        const double count = static_cast<double>(family.offsets(ri).size());
        for (std::size_t c : family.centers()) {
            const double avg = scanner.sum(c, rows) / count;
            for (const Index& off : family.offsets(ri)) {
                double& slot = out[grid.shifted(c, off)];
                slot = std::max(slot, avg);
            }
        }
    }
    return out;
}

bool tent_sandwich_holds(const Grid& grid, const TimeGrid& times, const Ball& ball) {
    const double r = ball.radius;
    for (int j = 0; j < times.count(); ++j) {
        const double t = times.at(j);
        for (std::size_t y = 0; y < grid.points(); ++y) {
            const double d = grid.distance(y, ball.center);
            const bool inner = t <= r * r / 4 && d < r / 2;
            const bool tent = in_tent(grid, ball, t, y);
            const bool outer = t <= r * r * (1 + tie) && d < r;
            if ((inner && !tent) || (tent && !outer)) return false;
        }
    }
    return true;
}

nlohmann::json to_json(const TentNormReport& report) {
    const Point& c = report.argmax.center;
    return {{"norm", report.norm},
            {"p", report.p},
            {"value", report.value},
            {"argmax", {{"center", {c[0], c[1], c[2]}}, {"radius", report.argmax.radius}}},
            {"family", {{"stride", report.stride}, {"radii", report.radii}}}};
}

std::string table_csv(const TentNormReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "center_x,center_y,center_z,radius,value\n";
    for (const auto& e : report.table)
        os << e.ball.center[0] << ',' << e.ball.center[1] << ',' << e.ball.center[2] << ',' << e.ball.radius << ','
           << e.value << '\n';
    return os.str();
}

}  // namespace tentlab
