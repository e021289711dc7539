#include "tentlab/atoms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

namespace tentlab {

namespace {

constexpr double tie = 1e-12;

std::size_t components_of(const PhysicalSpaceTime& f) { return f.slices.front().values.size(); }

void check_atom_entry(const Grid& grid, const TimeGrid& times, const Ball& ball, int j, std::size_t y, AtomCheck& c) {
    if (!in_tent(grid, ball, times.at(j), y)) ++c.outside;
}

AtomCheck finish(AtomCheck c, double l2_sq, double volume) {
    c.l2 = std::sqrt(l2_sq);
    c.bound = 1.0 / std::sqrt(volume);
    c.margin = c.bound - c.l2;
    c.support_ok = c.outside == 0;
    c.pass = c.support_ok && c.l2 <= c.bound * (1 + 1e-10);
    return c;
}

void put(std::ostream& out, double v) {
    static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");
    char bytes[8];
    std::memcpy(bytes, &v, 8);
    out.write(bytes, 8);
}

nlohmann::json ball_json(const Ball& b, int dim) {
    return {{"center", std::vector<double>(b.center.begin(), b.center.begin() + dim)}, {"radius", b.radius}};
}

}  // namespace

double overlap_deficit(int dim) {
    if (dim == 2) return 1.0 / 3.0 + std::sqrt(3.0) / (2.0 * std::numbers::pi);
    if (dim == 3) return 11.0 / 16.0;
    throw std::invalid_argument("overlap_deficit: dimension must be 2 or 3");
}

double ball_volume(const Grid& grid, const Ball& ball) {
    std::size_t count = 0;
    for (std::size_t y = 0; y < grid.points(); ++y)
        if (grid.distance(y, ball.center) < ball.radius * (1 - tie)) ++count;
    return static_cast<double>(count) * grid.cell_volume();
}

double l2_norm(const PhysicalSpaceTime& f) {
    const auto w = f.times.weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < f.slices.size(); ++j)
        for (const auto& comp : f.slices[j].values)
            for (double v : comp) sum += w[j] * v * v;
    return std::sqrt(sum * f.grid.cell_volume());
}

AtomicDecomposition atomic_decompose(const SpaceTimeField& g, const AtomParams& params) {
    return atomic_decompose(to_physical(g), params);
}

AtomicDecomposition atomic_decompose(const PhysicalSpaceTime& g, const AtomParams& params) {
    const Grid& grid = g.grid;
    const TimeGrid& times = g.times;
    const int n = grid.dim();
    const double eps = overlap_deficit(n);
    if (!(params.gamma > 0.0 && params.gamma < 1.0 - eps))
        throw std::invalid_argument("atomic_decompose: gamma must lie in (0, " + std::to_string(1.0 - eps) + ")");
    if (!(params.level_base > 1.0)) throw std::invalid_argument("atomic_decompose: level_base must exceed 1");

    AtomicDecomposition out{times, grid, g.rank, params, {}, {}, 0, 0, 0, 0.0, 0.0};
    const Density mag = g.magnitude();
    out.square = square_function(mag);
    out.square_l1 = l1_norm(grid, out.square);

    double s_min = std::numeric_limits<double>::infinity(), s_max = 0.0;
    for (double s : out.square)
        if (s > 0.0) {
            s_min = std::min(s_min, s);
            s_max = std::max(s_max, s);
        }
    if (s_max == 0.0) return out;

    const double base = params.level_base;
    const double logb = std::log(base);
    out.k_min = static_cast<int>(std::floor(std::log(s_min) / logb)) - 1;
    const int k_top = static_cast<int>(std::ceil(std::log(s_max) / logb)) + 1;
    const BallFamily family(grid);
    const std::size_t P = grid.points();
    const std::size_t nt = static_cast<std::size_t>(times.count());

    // Per level: distance to the dilate's complement and the cube owning each point.
    std::vector<std::vector<double>> dist;
    std::vector<WhitneyCover> covers;
    std::vector<std::vector<Ball>> balls;
    for (int k = out.k_min; k < k_top; ++k) {
        const double level = std::pow(base, k);
        std::vector<double> ind(P);
        for (std::size_t x = 0; x < P; ++x) ind[x] = out.square[x] > level ? 1.0 : 0.0;
        if (std::all_of(ind.begin(), ind.end(), [](double v) { return v == 0.0; })) break;
        const auto m = hl_maximal(ind, family);
        std::vector<char> star(P);
        for (std::size_t x = 0; x < P; ++x) star[x] = ind[x] > 0.0 || m[x] > 1.0 - params.gamma;

        if (std::all_of(star.begin(), star.end(), [](char c) { return c != 0; })) {
            WhitneyCover whole;
            whole.owner.assign(P, 0);
            whole.cubes.push_back(WhitneyCube{});
            covers.push_back(std::move(whole));
            dist.emplace_back(P, std::numeric_limits<double>::infinity());
            balls.push_back({Ball{Point{}, grid.box() * (0.5 * std::sqrt(double(n)) + 1.0)}});
            continue;
        }
        std::vector<char> complement(P);
        for (std::size_t x = 0; x < P; ++x) complement[x] = !star[x];
        dist.push_back(distance_to_set(grid, complement));
        covers.push_back(whitney_decompose(grid, star));
        out.whitney_violations += covers.back().violations;
        std::vector<Ball> lb;
        for (const WhitneyCube& q : covers.back().cubes) {
            const double pdiam = (q.side - 1) * std::sqrt(double(n)) * grid.spacing();
            lb.push_back(Ball{q.ball.center, q.distance + 1.5 * pdiam + 1e-9 * grid.spacing()});
        }
        balls.push_back(std::move(lb));
    }
    out.level_count = static_cast<int>(covers.size());

    // Region of (j, y): deepest level whose dilate's tent holds the sample.
    std::vector<std::vector<std::vector<std::pair<int, std::size_t>>>> regions(covers.size());
    for (std::size_t l = 0; l < covers.size(); ++l) regions[l].resize(covers[l].cubes.size());
    for (std::size_t j = 0; j < nt; ++j) {
        const double rt = std::sqrt(times.at(static_cast<int>(j)));
        for (std::size_t y = 0; y < P; ++y) {
            if (mag.values[j][y] == 0.0) continue;
            int level = -1;
            for (std::size_t l = 0; l < covers.size(); ++l) {
                if (dist[l][y] >= rt * (1 - tie)) level = static_cast<int>(l);
                else break;
            }
            if (level < 0) throw std::logic_error("atomic_decompose: sample outside the lowest tent");
            const int cube = covers[static_cast<std::size_t>(level)].owner[y];
            regions[static_cast<std::size_t>(level)][static_cast<std::size_t>(cube)].emplace_back(static_cast<int>(j), y);
        }
    }

    const auto w = times.weights();
    const std::size_t nc = components_of(g);
    for (std::size_t l = 0; l < regions.size(); ++l)
        for (std::size_t q = 0; q < regions[l].size(); ++q) {
            auto& region = regions[l][q];
            if (region.empty()) continue;
            Atom a;
            a.ball = balls[l][q];
            a.ball_volume = ball_volume(grid, a.ball);
            a.level = out.k_min + static_cast<int>(l);
            double mu = 0.0;
            for (const auto& [j, y] : region) mu += w[static_cast<std::size_t>(j)] * std::pow(mag.values[static_cast<std::size_t>(j)][y], 2);
            mu *= grid.cell_volume();
            if (mu == 0.0) continue;
            a.lambda = std::sqrt(a.ball_volume * mu);
            a.values.reserve(region.size() * nc);
            for (const auto& [j, y] : region)
                for (std::size_t c = 0; c < nc; ++c) a.values.push_back(g.slices[static_cast<std::size_t>(j)].values[c][y] / a.lambda);
            a.support = std::move(region);
            out.lambda_sum += a.lambda;
            out.atoms.push_back(std::move(a));
        }
    return out;
}

PhysicalSpaceTime reconstruct(const AtomicDecomposition& d) {
    PhysicalSpaceTime out(d.times, d.grid, d.rank);
    const std::size_t nc = out.slices.front().values.size();
    for (const Atom& a : d.atoms)
        for (std::size_t e = 0; e < a.support.size(); ++e) {
            const auto [j, y] = a.support[e];
            for (std::size_t c = 0; c < nc; ++c) out.slices[static_cast<std::size_t>(j)].values[c][y] += a.lambda * a.values[e * nc + c];
        }
    return out;
}

PhysicalSpaceTime atom_field(const AtomicDecomposition& d, std::size_t i) {
    const Atom& a = d.atoms.at(i);
    PhysicalSpaceTime out(d.times, d.grid, d.rank);
    const std::size_t nc = out.slices.front().values.size();
    for (std::size_t e = 0; e < a.support.size(); ++e) {
        const auto [j, y] = a.support[e];
        for (std::size_t c = 0; c < nc; ++c) out.slices[static_cast<std::size_t>(j)].values[c][y] = a.values[e * nc + c];
    }
    return out;
}

AtomCheck atom_validate(const PhysicalSpaceTime& a, const Ball& ball) {
    AtomCheck c;
    const auto w = a.times.weights();
    double sum = 0.0;
    for (std::size_t j = 0; j < a.slices.size(); ++j)
        for (std::size_t y = 0; y < a.grid.points(); ++y) {
            const double m = a.slices[j].magnitude(y);
            if (m == 0.0) continue;
            sum += w[j] * m * m;
            check_atom_entry(a.grid, a.times, ball, static_cast<int>(j), y, c);
        }
    return finish(c, sum * a.grid.cell_volume(), ball_volume(a.grid, ball));
}

AtomCheck atom_validate(const AtomicDecomposition& d, std::size_t i) {
    const Atom& a = d.atoms.at(i);
    const std::size_t nc = static_cast<std::size_t>(component_count(d.rank, d.grid.dim()));
    const auto w = d.times.weights();
    AtomCheck c;
    double sum = 0.0;
    for (std::size_t e = 0; e < a.support.size(); ++e) {
        const auto [j, y] = a.support[e];
        double m2 = 0.0;
        for (std::size_t k = 0; k < nc; ++k) m2 += a.values[e * nc + k] * a.values[e * nc + k];
        if (m2 == 0.0) continue;
        sum += w[static_cast<std::size_t>(j)] * m2;
        check_atom_entry(d.grid, d.times, a.ball, j, y, c);
    }
    return finish(c, sum * d.grid.cell_volume(), ball_volume(d.grid, a.ball));
}

PhysicalSpaceTime restrict_to_tent(const SpaceTimeField& f, const Ball& ball) {
    PhysicalSpaceTime p = to_physical(f);
    for (int j = 0; j < p.times.count(); ++j)
        for (std::size_t y = 0; y < p.grid.points(); ++y)
            if (!in_tent(p.grid, ball, p.times.at(j), y))
                for (auto& comp : p.slices[static_cast<std::size_t>(j)].values) comp[y] = 0.0;
    return p;
}

PhysicalSpaceTime tent_atom(const Grid& grid, const TimeGrid& times, Rank rank, const Ball& ball, int component) {
    PhysicalSpaceTime out(times, grid, rank);
    const auto w = times.weights();
    double tent_volume = 0.0;
    for (int j = 0; j < times.count(); ++j)
        for (std::size_t y = 0; y < grid.points(); ++y)
            if (in_tent(grid, ball, times.at(j), y)) tent_volume += w[static_cast<std::size_t>(j)] * grid.cell_volume();
    if (tent_volume == 0.0) return out;
    const double value = 1.0 / std::sqrt(ball_volume(grid, ball) * tent_volume);
    for (int j = 0; j < times.count(); ++j)
        for (std::size_t y = 0; y < grid.points(); ++y)
            if (in_tent(grid, ball, times.at(j), y))
                out.slices[static_cast<std::size_t>(j)].values.at(static_cast<std::size_t>(component))[y] = value;
    return out;
}

MeasureBound measure_lower_bound(const AtomicDecomposition& d, int samples, std::uint64_t seed) {
    MeasureBound out;
    if (d.atoms.empty() || samples <= 0) return out;
    std::mt19937_64 rng(seed);
    const Grid& grid = d.grid;
    for (int s = 0; s < samples; ++s) {
        const Atom& a = d.atoms[std::uniform_int_distribution<std::size_t>(0, d.atoms.size() - 1)(rng)];
        const auto [j, y] = a.support[std::uniform_int_distribution<std::size_t>(0, a.support.size() - 1)(rng)];
        const double rt = std::sqrt(d.times.at(j));
        const double next = std::pow(d.params.level_base, a.level + 1);
        std::size_t cone = 0, good = 0;
        for (std::size_t z = 0; z < grid.points(); ++z) {
            if (grid.distance(z, y) > rt * (1 + tie)) continue;
            ++cone;
            if (grid.distance(z, a.ball.center) < a.ball.radius && !(d.square[z] > next)) ++good;
        }
        out.min_ratio = std::min(out.min_ratio, static_cast<double>(good) / static_cast<double>(cone));
        ++out.samples;
    }
    return out;
}

nlohmann::json manifest(const AtomicDecomposition& d) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const Atom& a : d.atoms)
        atoms.push_back({{"ball", ball_json(a.ball, d.grid.dim())},
                         {"lambda", a.lambda},
                         {"level", a.level},
                         {"region_size", a.support.size()}});
    return {{"grid", {{"dim", d.grid.dim()}, {"N", d.grid.size()}, {"L", d.grid.box()}}},
            {"params", {{"gamma", d.params.gamma}, {"level_base", d.params.level_base}, {"k_min", d.k_min}, {"levels", d.level_count}}},
            {"rank", rank_name(d.rank)},
            {"lambda_sum", d.lambda_sum},
            {"square_l1", d.square_l1},
            {"ratio", d.ratio()},
            {"whitney_violations", d.whitney_violations},
            {"atoms", atoms}};
}

void write_atom_payloads(std::ostream& out, const AtomicDecomposition& d) {
    const std::size_t nc = static_cast<std::size_t>(component_count(d.rank, d.grid.dim()));
    put(out, static_cast<double>(d.atoms.size()));
    for (const Atom& a : d.atoms) {
        put(out, static_cast<double>(a.support.size()));
        put(out, static_cast<double>(nc));
        for (std::size_t e = 0; e < a.support.size(); ++e) {
            put(out, a.support[e].first);
            put(out, static_cast<double>(a.support[e].second));
            for (std::size_t c = 0; c < nc; ++c) put(out, a.values[e * nc + c]);
        }
    }
    if (!out) throw std::runtime_error("write_atom_payloads: write failed");
}

}  // namespace tentlab
