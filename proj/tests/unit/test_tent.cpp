#include "tentlab/corpus.hpp"
#include "tentlab/tent.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace tentlab;

namespace {

constexpr double pi = std::numbers::pi;

Density random_density(const Grid& g, const TimeGrid& tg, unsigned seed, double sparsity) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Density d(tg, g);
    for (auto& row : d.values)
        for (double& v : row) v = uni(rng) < sparsity ? uni(rng) : 0.0;
    return d;
}

Density smooth_density(const Grid& g, const TimeGrid& tg, std::uint64_t seed) {
    return magnitude(random_spacetime(g, tg, Rank::vector, seed, SpectrumShape{}));
}

double brute_tent_norm(const Density& d, int p, const BallFamily& fam) {
    const Grid& g = d.grid;
    double best = 0.0;
    for (double r : fam.radii()) {
        const auto w = d.times.weights(r * r);
        for (std::size_t c : fam.centers()) {
            double sum = 0.0;
            int count = 0;
            for (std::size_t y = 0; y < g.points(); ++y) {
                if (!(g.distance(c, g.position(y)) < r - 1e-12)) continue;
                ++count;
                for (std::size_t j = 0; j < w.size(); ++j) sum += w[j] * std::pow(d.values[j][y], p);
            }
            best = std::max(best, std::pow(sum / count, 1.0 / p));
        }
    }
    return best;
}

std::vector<double> brute_ntmax(const Density& d) {
    const Grid& g = d.grid;
    std::vector<double> out(g.points(), 0.0);
    for (std::size_t x = 0; x < g.points(); ++x)
        for (int j = 0; j < d.times.count(); ++j)
            for (std::size_t y = 0; y < g.points(); ++y)
                if (g.distance(x, y) <= std::sqrt(d.times.at(j)) + 1e-12)
                    out[x] = std::max(out[x], d.values[static_cast<std::size_t>(j)][y]);
    return out;
}

std::vector<double> brute_square(const Density& d) {
    const Grid& g = d.grid;
    const auto w = d.times.weights();
    std::vector<double> out(g.points(), 0.0);
    for (std::size_t x = 0; x < g.points(); ++x) {
        double s = 0.0;
        for (int j = 0; j < d.times.count(); ++j) {
            const double t = d.times.at(j);
            for (std::size_t y = 0; y < g.points(); ++y)
                if (g.distance(x, y) <= std::sqrt(t) + 1e-12)
                    s += w[static_cast<std::size_t>(j)] * std::pow(t, -0.5 * g.dim()) * g.cell_volume() *
                         std::pow(d.values[static_cast<std::size_t>(j)][y], 2);
        }
        out[x] = std::sqrt(s);
    }
    return out;
}

}  // namespace

TEST(BallFamily, DefaultsAndCoverage) {
    const Grid g = make_grid(2, 64, 2 * pi);
    const BallFamily fam(g);
    EXPECT_EQ(fam.stride(), 4);
    EXPECT_EQ(fam.radii().size(), 5u);
    EXPECT_NEAR(fam.radii().back(), g.box() / 2, 1e-12);
    for (std::size_t x = 0; x < g.points(); x += 7) {
        double nearest = INFINITY;
        for (std::size_t c : fam.centers()) nearest = std::min(nearest, g.distance(x, c));
        EXPECT_LE(nearest, g.spacing() * fam.stride());
    }
}

TEST(BallRows, MatchOffsetEnumeration) {
    for (int dim : {2, 3}) {
        const Grid g = make_grid(dim, 16, 1.0);
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        std::vector<double> v(g.points());
        for (double& x : v) x = uni(rng);
        const RowScanner scanner(g, v, true);
        for (double radius : {0.0, 0.05, 0.0625, 0.2, 0.5, 0.7, 2.0})
            for (bool closed : {true, false}) {
                const BallRows rows = ball_rows(g, radius, closed);
                const auto offs = ball_offsets(g, radius, closed);
                for (std::size_t c : {std::size_t{0}, std::size_t{37}, g.points() - 1}) {
                    double s = 0.0, m = -INFINITY;
                    for (const Index& o : offs) {
                        s += v[g.shifted(c, o)];
                        m = std::max(m, v[g.shifted(c, o)]);
                    }
                    if (offs.empty()) continue;
                    EXPECT_NEAR(scanner.sum(c, rows), s, 1e-13 * s);
                    EXPECT_EQ(scanner.max(c, rows), m);
                }
            }
    }
}

TEST(ConeIndex, MonotoneInTime) {
    const Grid g = make_grid(2, 16, 1.0);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const ConeIndex cones = cone_index(g, tg.values());
    std::size_t prev = 0;
    for (const auto& slice : cones.slices) {
        std::size_t count = 0;
        for (int w : slice.half_width) count += w < 0 ? 16u : static_cast<std::size_t>(2 * w + 1);
        EXPECT_GE(count, prev);
        prev = count;
    }
}

TEST(TentNorm, ZeroAndConstant) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g);
    EXPECT_EQ(tent_norm(Density(tg, g), 1, fam).value, 0.0);
    Density c(tg, g);
    for (auto& row : c.values) std::fill(row.begin(), row.end(), 1.7);
    const double R = g.box() / 2;
    EXPECT_NEAR(tent_norm(c, 1, fam).value, 1.7 * R * R, 1e-12 * R * R);
    EXPECT_NEAR(tent_norm(c, 2, fam).value, 1.7 * R, 1e-12 * R);
    EXPECT_THROW(tent_norm(c, 3, fam), std::invalid_argument);
}

TEST(TentNorm, MatchesBruteForceOnSparseField) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g, 2);
    const Density d = random_density(g, tg, 5, 0.05);
    for (int p : {1, 2}) {
        const TentNormReport rep = tent_norm(d, p, fam);
        EXPECT_NEAR(rep.value, brute_tent_norm(d, p, fam), 1e-12 * rep.value);
        double mx = 0.0;
        for (const auto& e : rep.table) {
            EXPECT_GE(e.value, 0.0);
            mx = std::max(mx, e.value);
        }
        EXPECT_EQ(mx, rep.value);
    }
}

TEST(TentNorm, SubFamilyIsSmaller) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const Density d = smooth_density(g, TimeGrid::for_grid(g), 3);
    const BallFamily full(g, 2);
    const BallFamily sub(g, 4, {dyadic_radii(g)[1], dyadic_radii(g)[3]});
    EXPECT_LE(tent_norm(d, 2, sub).value, tent_norm(d, 2, full).value);
}

TEST(XNorm, FirstTermForInverseSqrtProfile) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    Density d(tg, g);
    for (int j = 0; j < tg.count(); ++j)
        std::fill(d.values[static_cast<std::size_t>(j)].begin(), d.values[static_cast<std::size_t>(j)].end(), 1 / std::sqrt(tg.at(j)));
    EXPECT_NEAR(weighted_sup(d, 0.5), 1.0, 1e-14);
    EXPECT_EQ(x_norm(SpaceTimeField::zeros(tg, g, Rank::vector)), 0.0);
}

TEST(XNorm, InterpolationBound) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const SpaceTimeField a = random_spacetime(g, tg, Rank::tensor, seed, SpectrumShape{});
        const Density mag = magnitude(a);
        const double lhs = tent_norm(magnitude(a.weighted([](double t) { return std::sqrt(t); })), 2, fam).value;
        const double rhs = std::sqrt(weighted_sup(mag, 1.0) * tent_norm(mag, 1, fam).value);
        EXPECT_LE(lhs, rhs * (1 + 1e-12));
    }
}

TEST(NontangentialMax, Examples) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    for (double v : nontangential_max(Density(tg, g))) EXPECT_EQ(v, 0.0);
    Density flat(tg, g);
    double gmax = 0.0;
    for (int j = 0; j < tg.count(); ++j) {
        const double val = std::abs(std::sin(3.0 * j));
        gmax = std::max(gmax, val);
        std::fill(flat.values[static_cast<std::size_t>(j)].begin(), flat.values[static_cast<std::size_t>(j)].end(), val);
    }
    for (double v : nontangential_max(flat)) EXPECT_EQ(v, gmax);
    const Density d = random_density(g, tg, 8, 0.1);
    const auto n = nontangential_max(d);
    const auto brute = brute_ntmax(d);
    for (std::size_t x = 0; x < g.points(); ++x) {
        EXPECT_GE(n[x], d.values[0][x]);
        EXPECT_EQ(n[x], brute[x]);
    }
}

TEST(SquareFunction, BruteForceTruncationAndCauchySchwarz) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const Density f = random_density(g, tg, 2, 0.2);
    const Density h = random_density(g, tg, 4, 0.2);
    const auto s = square_function(f);
    const auto brute = brute_square(f);
    for (std::size_t x = 0; x < g.points(); ++x) EXPECT_NEAR(s[x], brute[x], 1e-12 * brute[x]);
    for (double height : {0.3, 1.0, 3.0}) {
        const auto sh = square_function(f, height);
        for (std::size_t x = 0; x < g.points(); ++x) EXPECT_LE(sh[x], s[x]);
    }
    for (double v : square_function(Density(tg, g))) EXPECT_EQ(v, 0.0);
    EXPECT_LE(cauchy_schwarz_check(f, h).ratio, 1.0 + 1e-10);
}

TEST(Sublinear, NontangentialSquareMaximal) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g, 2);
    const Density a = random_density(g, tg, 10, 0.3), b = random_density(g, tg, 11, 0.3);
    Density sum = a;
    for (std::size_t j = 0; j < sum.values.size(); ++j)
        for (std::size_t x = 0; x < g.points(); ++x) sum.values[j][x] += b.values[j][x];
    const auto na = nontangential_max(a), nb = nontangential_max(b), ns = nontangential_max(sum);
    const auto sa = square_function(a), sb = square_function(b), ss = square_function(sum);
    const auto ma = hl_maximal(a.values[3], fam), mb = hl_maximal(b.values[3], fam), ms = hl_maximal(sum.values[3], fam);
    for (std::size_t x = 0; x < g.points(); ++x) {
        EXPECT_LE(ns[x], na[x] + nb[x]);
        EXPECT_LE(ss[x], (sa[x] + sb[x]) * (1 + 1e-14));
        EXPECT_LE(ms[x], (ma[x] + mb[x]) * (1 + 1e-14));
    }
}

TEST(Carleson, ZeroHomogeneityAndBruteForce) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g, 4);
    for (double v : carleson_functional(Density(tg, g), fam)) EXPECT_EQ(v, 0.0);
    const Density mu = random_density(g, tg, 6, 0.1);
    Density scaled = mu;
    for (auto& row : scaled.values)
        for (double& v : row) v *= 4.0;
    const auto c = carleson_functional(mu, fam), cs = carleson_functional(scaled, fam);
    for (std::size_t x = 0; x < g.points(); ++x) EXPECT_EQ(cs[x], 4.0 * c[x]);

    const auto w = tg.weights();
    std::vector<double> brute(g.points(), 0.0);
    for (std::size_t ri = 0; ri < fam.radii().size(); ++ri)
        for (std::size_t ci = 0; ci < fam.centers().size(); ++ci) {
            const Ball b = fam.ball(ci, ri);
            double mass = 0.0;
            int count = 0;
            for (std::size_t y = 0; y < g.points(); ++y) {
                if (g.distance(y, b.center) < b.radius - 1e-12) ++count;
                for (int j = 0; j < tg.count(); ++j)
                    if (in_tent(g, b, tg.at(j), y)) mass += w[static_cast<std::size_t>(j)] * mu.values[static_cast<std::size_t>(j)][y] * g.cell_volume();
            }
            const double ratio = mass / (count * g.cell_volume());
            for (std::size_t y = 0; y < g.points(); ++y)
                if (g.distance(y, b.center) < b.radius - 1e-12) brute[y] = std::max(brute[y], ratio);
        }
    for (std::size_t x = 0; x < g.points(); ++x) EXPECT_NEAR(c[x], brute[x], 1e-12 * (brute[x] + 1e-300));
}

TEST(Carleson, TentSandwich) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    for (double r : dyadic_radii(g)) EXPECT_TRUE(tent_sandwich_holds(g, tg, Ball{g.position(g.flatten({5, 9, 0})), r}));
}

TEST(Carleson, SupComparableToTentNorm) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Density d = smooth_density(g, tg, seed);
        const auto c = carleson_functional(d, fam);
        const double ratio = *std::max_element(c.begin(), c.end()) / tent_norm(d, 1, fam).value;
        EXPECT_GE(ratio, 0.25);
        EXPECT_LE(ratio, 4.0);
    }
}

TEST(CarlesonEmbedding, VacuousAndSingleTent) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g);
    const Density mu = smooth_density(g, tg, 1);
    EXPECT_TRUE(carleson_embedding_check(Density(tg, g), mu, fam).vacuous);

    const Ball b = fam.ball(5, 2);
    Density single(tg, g), ones(tg, g);
    for (int j = 0; j < tg.count(); ++j)
        for (std::size_t y = 0; y < g.points(); ++y) {
            ones.values[static_cast<std::size_t>(j)][y] = 1.0;
            if (in_tent(g, b, tg.at(j), y)) single.values[static_cast<std::size_t>(j)][y] = 0.5;
        }
    const RatioCheck r = carleson_embedding_check(ones, single, fam);
    EXPECT_FALSE(r.vacuous);
    EXPECT_LE(r.ratio, 1.0 + 1e-12);
    EXPECT_TRUE(std::isfinite(carleson_embedding_check(smooth_density(g, tg, 2), mu, fam).ratio));
}

TEST(StoppingHeight, ZeroFieldAndSetBound) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const BallFamily fam(g);
    for (double h : stopping_height(Density(tg, g), default_nu(2), fam)) EXPECT_EQ(h, std::sqrt(tg.last()));
    EXPECT_EQ(default_nu(2), 900.0);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Density d = smooth_density(g, tg, seed);
        EXPECT_GE(stopping_set_fraction(stopping_height(d, default_nu(2), fam), fam), 0.99);
    }
    const Density d = smooth_density(g, tg, 9);
    const RatioCheck pc = pairing_check(d, smooth_density(g, tg, 10), fam);
    EXPECT_TRUE(std::isfinite(pc.ratio));
    EXPECT_GT(pc.ratio, 0.0);
}

TEST(HLMaximal, ConstantAndIndicatorBruteForce) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const BallFamily fam(g);
    for (double v : hl_maximal(std::vector<double>(g.points(), -2.5), fam)) EXPECT_NEAR(v, 2.5, 1e-14);
    const Ball b = fam.ball(7, 2);
    std::vector<double> ind(g.points(), 0.0);
    for (std::size_t y = 0; y < g.points(); ++y)
        if (g.distance(y, b.center) < b.radius - 1e-12) ind[y] = 1.0;
    const auto m = hl_maximal(ind, fam);
    std::vector<double> brute(g.points(), 0.0);
    for (std::size_t ri = 0; ri < fam.radii().size(); ++ri)
        for (std::size_t ci = 0; ci < fam.centers().size(); ++ci) {
            const Ball bb = fam.ball(ci, ri);
            double s = 0.0;
            int count = 0;
            for (std::size_t y = 0; y < g.points(); ++y)
                if (g.distance(y, bb.center) < bb.radius - 1e-12) {
                    ++count;
                    s += ind[y];
                }
            for (std::size_t y = 0; y < g.points(); ++y)
                if (g.distance(y, bb.center) < bb.radius - 1e-12) brute[y] = std::max(brute[y], s / count);
        }
    for (std::size_t x = 0; x < g.points(); ++x) {
        EXPECT_NEAR(m[x], brute[x], 1e-14);
        if (ind[x] > 0) EXPECT_EQ(m[x], 1.0);
    }
}

TEST(TentReport, JsonAndCsv) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const BallFamily fam(g);
    const TentNormReport rep = tent_norm(random_density(g, TimeGrid::for_grid(g), 1, 0.5), 2, fam);
    const auto j = to_json(rep);
    EXPECT_EQ(j["p"], 2);
    EXPECT_EQ(j["family"]["stride"], 1);
    const std::string csv = table_csv(rep);
    EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rep.table.size() + 1);
}
