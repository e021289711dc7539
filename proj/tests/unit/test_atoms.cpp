#include "tentlab/atoms.hpp"
#include "tentlab/corpus.hpp"
#include "tentlab/hardy.hpp"
#include "tentlab/operators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace tentlab;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<char> ball_mask(const Grid& g, const Point& c, double r) {
    std::vector<char> m(g.points());
    for (std::size_t x = 0; x < g.points(); ++x) m[x] = g.distance(x, c) < r;
    return m;
}

double diff_norm(const PhysicalSpaceTime& a, const PhysicalSpaceTime& b) {
    PhysicalSpaceTime d = a;
    for (std::size_t j = 0; j < d.slices.size(); ++j)
        for (std::size_t c = 0; c < d.slices[j].values.size(); ++c)
            for (std::size_t y = 0; y < d.grid.points(); ++y) d.slices[j].values[c][y] -= b.slices[j].values[c][y];
    return l2_norm(d);
}

}  // namespace

TEST(DistanceToSet, MatchesBruteForce) {
    for (int dim : {2, 3}) {
        const Grid g = make_grid(dim, dim == 2 ? 16 : 8, 1.0);
        std::mt19937_64 rng(4);
        std::bernoulli_distribution coin(0.05);
        std::vector<char> set(g.points());
        for (auto& s : set) s = coin(rng);
        set[3] = 1;
        const auto d = distance_to_set(g, set);
        for (std::size_t x = 0; x < g.points(); ++x) {
            double best = INFINITY;
            for (std::size_t y = 0; y < g.points(); ++y)
                if (set[y]) best = std::min(best, g.distance(x, y));
            EXPECT_NEAR(d[x], best, 1e-12);
        }
    }
    const Grid g = make_grid(2, 8, 1.0);
    for (double v : distance_to_set(g, std::vector<char>(g.points(), 0))) EXPECT_TRUE(std::isinf(v));
}

TEST(Whitney, BallSetSandwichExhaustive) {
    const Grid g = make_grid(2, 64, 2 * pi);
    const auto mask = ball_mask(g, g.position(g.flatten({20, 37, 0})), g.box() / 8);
    const WhitneyCover cover = whitney_decompose(g, mask);
    EXPECT_EQ(cover.violations, 0);
    std::vector<int> seen(g.points(), 0);
    for (std::size_t q = 0; q < cover.cubes.size(); ++q) {
        const auto pts = cover.members(g, q);
        double dist = INFINITY;
        for (std::size_t p : pts) {
            ++seen[p];
            EXPECT_TRUE(mask[p]);
            EXPECT_EQ(cover.owner[p], static_cast<int>(q));
            for (std::size_t y = 0; y < g.points(); ++y)
                if (!mask[y]) dist = std::min(dist, g.distance(p, y));
            EXPECT_LE(g.distance(p, cover.cubes[q].ball.center), cover.cubes[q].ball.radius);
        }
        const double diam = cover.cubes[q].diameter;
        EXPECT_NEAR(cover.cubes[q].distance, dist, 1e-12);
        EXPECT_LE(diam, dist * (1 + 1e-12));
        EXPECT_LE(dist, 4 * diam * (1 + 1e-12));
    }
    for (std::size_t x = 0; x < g.points(); ++x) EXPECT_EQ(seen[x], mask[x] ? 1 : 0);
    EXPECT_GT(cover.cubes.size(), 1u);
}

TEST(Whitney, RandomUnionOfBallsHasNoViolations) {
    const Grid g = make_grid(2, 64, 2 * pi);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> idx(0, 63);
    std::vector<char> mask(g.points(), 0);
    for (int b = 0; b < 6; ++b) {
        const auto m = ball_mask(g, g.position(g.flatten({idx(rng), idx(rng), 0})), 0.3 + 0.1 * b);
        for (std::size_t x = 0; x < g.points(); ++x) mask[x] |= m[x];
    }
    const WhitneyCover cover = whitney_decompose(g, mask);
    EXPECT_EQ(cover.violations, 0);
    for (std::size_t x = 0; x < g.points(); ++x) EXPECT_EQ(cover.owner[x] >= 0, mask[x] != 0);
}

TEST(Whitney, RejectsEmptyAndFullSets) {
    const Grid g = make_grid(2, 16, 1.0);
    EXPECT_THROW(whitney_decompose(g, std::vector<char>(g.points(), 0)), std::invalid_argument);
    EXPECT_THROW(whitney_decompose(g, std::vector<char>(g.points(), 1)), std::invalid_argument);
}

TEST(Atoms, OverlapDeficitMatchesQuadrature) {
    // |B(0,1) \ B(e₁,1)| / |B(0,1)| by midpoint counting.
    const int M = 2000;
    long in = 0, out = 0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const double x = -1 + (i + 0.5) * 2.0 / M, y = -1 + (j + 0.5) * 2.0 / M;
            if (x * x + y * y >= 1) continue;
            ++in;
            if ((x - 1) * (x - 1) + y * y >= 1) ++out;
        }
    EXPECT_NEAR(overlap_deficit(2), double(out) / double(in), 2e-3);
    EXPECT_NEAR(overlap_deficit(2), 0.609, 1e-3);
    EXPECT_EQ(overlap_deficit(3), 0.6875);
}

TEST(Atoms, GammaRange) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const SpaceTimeField z = SpaceTimeField::zeros(TimeGrid::for_grid(g), g, Rank::vector);
    EXPECT_THROW(atomic_decompose(z, AtomParams{0.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(atomic_decompose(z, AtomParams{0.4, 2.0}), std::invalid_argument);
    EXPECT_NO_THROW(atomic_decompose(z, AtomParams{0.39, 2.0}));
    const Grid g3 = make_grid(3, 8, 2 * pi);
    EXPECT_THROW(atomic_decompose(SpaceTimeField::zeros(TimeGrid::for_grid(g3), g3, Rank::vector), AtomParams{0.35, 2.0}),
                 std::invalid_argument);
}

TEST(Atoms, ZeroFieldGivesEmptyDecomposition) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const AtomicDecomposition d = atomic_decompose(SpaceTimeField::zeros(TimeGrid::for_grid(g), g, Rank::vector));
    EXPECT_TRUE(d.atoms.empty());
    EXPECT_EQ(d.ratio(), 0.0);
}

TEST(Atoms, ValidatorExamples) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const Ball b{g.position(g.flatten({10, 12, 0})), g.box() / 8};
    EXPECT_TRUE(atom_validate(PhysicalSpaceTime(tg, g, Rank::vector), b).pass);
    const PhysicalSpaceTime a = tent_atom(g, tg, Rank::vector, b);
    const AtomCheck c = atom_validate(a, b);
    EXPECT_TRUE(c.pass);
    EXPECT_NEAR(c.margin, 0.0, 1e-12 * c.bound);
    PhysicalSpaceTime bad = a;
    bad.slices[0].values[1][g.flatten({40 % 32, 30, 0})] = 1e-6;
    const AtomCheck cb = atom_validate(bad, b);
    EXPECT_FALSE(cb.support_ok);
    EXPECT_FALSE(cb.pass);
}

TEST(Atoms, SingleAtomInputReconstructs) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const Ball b{g.position(g.flatten({16, 16, 0})), g.box() / 8};
    const PhysicalSpaceTime a = tent_atom(g, tg, Rank::vector, b);
    const AtomicDecomposition d = atomic_decompose(a);
    ASSERT_FALSE(d.atoms.empty());
    EXPECT_LE(diff_norm(reconstruct(d), a), 1e-12 * l2_norm(a));
    for (std::size_t i = 0; i < d.atoms.size(); ++i) EXPECT_TRUE(atom_validate(d, i).pass);
    EXPECT_GT(d.ratio(), 1.0 / 100);
    EXPECT_LT(d.ratio(), 100.0);
}

TEST(Atoms, CompactlySupportedRandomField) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const Ball b{g.position(g.flatten({9, 20, 0})), g.box() / 4};
    const PhysicalSpaceTime G = restrict_to_tent(random_spacetime(g, tg, Rank::vector, 3, SpectrumShape{}), b);
    const AtomicDecomposition d = atomic_decompose(G);
    EXPECT_EQ(d.whitney_violations, 0);
    EXPECT_LE(diff_norm(reconstruct(d), G), 1e-10 * l2_norm(G));
    std::vector<std::vector<int>> hits(static_cast<std::size_t>(tg.count()), std::vector<int>(g.points(), 0));
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        EXPECT_TRUE(atom_validate(d, i).pass) << "atom " << i;
        for (const auto& [j, y] : d.atoms[i].support) ++hits[static_cast<std::size_t>(j)][y];
    }
    for (const auto& row : hits)
        for (int h : row) EXPECT_LE(h, 1);
    EXPECT_GT(d.ratio(), 1.0 / 100);
    EXPECT_LT(d.ratio(), 100.0);
    const MeasureBound mb = measure_lower_bound(d, 200, 1);
    EXPECT_EQ(mb.samples, 200);
    EXPECT_GT(mb.min_ratio, 0.0);
}

TEST(Atoms, FullySupportedFieldUsesWholeTorusLevel) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const SpaceTimeField f = random_spacetime(g, tg, Rank::vector, 5, SpectrumShape{});
    const PhysicalSpaceTime p = to_physical(f);
    const AtomicDecomposition d = atomic_decompose(f);
    EXPECT_LE(diff_norm(reconstruct(d), p), 1e-10 * l2_norm(p));
    for (std::size_t i = 0; i < d.atoms.size(); ++i) EXPECT_TRUE(atom_validate(d, i).pass);
    EXPECT_NEAR(d.atoms.front().ball_volume, g.volume(), 1e-9 * g.volume());
}

TEST(Atoms, ManifestAndPayloads) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const AtomicDecomposition d = atomic_decompose(tent_atom(g, tg, Rank::tensor, Ball{g.position(0), g.box() / 4}, 3));
    const auto j = manifest(d);
    EXPECT_EQ(j["atoms"].size(), d.atoms.size());
    EXPECT_EQ(j["params"]["gamma"], 0.25);
    std::ostringstream os;
    write_atom_payloads(os, d);
    std::size_t expect = 1;
    for (const Atom& a : d.atoms) expect += 2 + a.support.size() * (2 + 4);
    EXPECT_EQ(os.str().size(), 8 * expect);
}

TEST(Hardy, ZeroConstantAndPointwiseBound) {
    const Grid g = make_grid(2, 32, 2 * pi);
    EXPECT_EQ(hardy_norm(Field(g, Rank::scalar)), 0.0);
    Field c(g, Rank::scalar);
    c.coeffs(0)[0] = -1.5;
    EXPECT_NEAR(hardy_norm(c), 1.5 * g.volume(), 1e-12 * g.volume());
    const Field f = random_field(g, Rank::vector, 2, SpectrumShape{});
    const PhysicalField p = to_physical(f);
    double l1 = 0.0;
    for (int comp = 0; comp < 2; ++comp)
        for (double v : p.values[static_cast<std::size_t>(comp)]) l1 += std::abs(v);
    EXPECT_GE(hardy_norm(f), l1 * g.cell_volume());
}

TEST(Hardy, MaximalMatchesBruteForce) {
    const Grid g = make_grid(2, 16, 2 * pi);
    const TimeGrid scales(0.05, 2.0, 6);
    const Field f = random_field(g, Rank::scalar, 9, SpectrumShape{});
    const auto m = hardy_maximal(f, 0, scales);
    std::vector<std::vector<double>> heat;
    heat.push_back(to_physical(f).values[0]);
    std::vector<double> radii{0.0};
    for (int j = 0; j < scales.count(); ++j) {
        heat.push_back(to_physical(heat_evolve(f, scales.at(j))).values[0]);
        radii.push_back(std::sqrt(scales.at(j)));
    }
    for (std::size_t x = 0; x < g.points(); ++x) {
        double best = 0.0;
        for (std::size_t s = 0; s < heat.size(); ++s)
            for (std::size_t y = 0; y < g.points(); ++y)
                if (y == x || g.distance(x, y) < radii[s] * (1 - 1e-12)) best = std::max(best, std::abs(heat[s][y]));
        EXPECT_NEAR(m[x], best, 1e-14);
    }
}

TEST(Hardy, SpikeStableUnderRefinement) {
    std::vector<double> norms;
    for (int N : {64, 128}) {
        const Grid g = make_grid(2, N, 2 * pi);
        PhysicalField p(g, Rank::scalar);
        const Point c{pi, pi, 0};
        for (std::size_t x = 0; x < g.points(); ++x) p.values[0][x] = std::exp(-std::pow(g.distance(x, c) / 0.2, 2));
        Field f = to_spectral(p);
        f.coeffs(0)[0] = 0.0;
        norms.push_back(hardy_norm(f));
        EXPECT_TRUE(std::isfinite(norms.back()));
    }
    EXPECT_NEAR(norms[1] / norms[0], 1.0, 0.1);
}

TEST(Molecule, Examples) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const Point x0 = g.position(g.flatten({16, 16, 0}));
    const MoleculeReport zero = molecule_validate(Field(g, Rank::scalar), x0);
    EXPECT_EQ(zero.norm_triple, 0.0);
    EXPECT_EQ(zero.moment_residuals[0], 0.0);
    EXPECT_NEAR(zero.theta, 0.5, 1e-15);
    EXPECT_NEAR(zero.b, 0.4, 1e-15);

    PhysicalField two(g, Rank::scalar);
    two.values[0][g.flatten({14, 16, 0})] = 1.0;
    two.values[0][g.flatten({18, 16, 0})] = -1.0;
    const MoleculeReport r = molecule_validate(to_spectral(two), x0);
    EXPECT_TRUE(r.moments_ok);
    EXPECT_TRUE(std::isfinite(r.norm_triple));
    EXPECT_GT(r.norm_triple, 0.0);
    const double hn = g.cell_volume();
    EXPECT_NEAR(r.lq_norm, std::pow(2 * hn, 1 / 1.25), 1e-12);
    const double d = 2 * g.spacing();
    EXPECT_NEAR(r.weighted_norm, std::pow(2 * hn * std::pow(d, 1.25 * 2 * 0.4), 1 / 1.25), 1e-12);

    two.values[0][g.flatten({18, 16, 0})] = 0.0;
    EXPECT_FALSE(molecule_validate(to_spectral(two), x0).moments_ok);
    EXPECT_THROW(molecule_validate(Field(g, Rank::scalar), x0, 2.0), std::invalid_argument);
    EXPECT_THROW(molecule_validate(Field(g, Rank::scalar), x0, 1.25, 0.1), std::invalid_argument);
}

TEST(CalM, ZeroMeanAndPlancherel) {
    const Grid g = make_grid(2, 64, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    EXPECT_EQ(calM_apply(SpaceTimeField::zeros(tg, g, Rank::vector)).max_coeff(), 0.0);
    EXPECT_THROW(calM_apply(SpaceTimeField::zeros(tg, g, Rank::tensor)), std::invalid_argument);
    const MoleculeScaling s = molecule_scaling(g, tg, {g.box() / 8, g.box() / 16, g.box() / 32});
    for (const auto& row : s.rows) {
        EXPECT_LE(row.mean, 1e-10);
        EXPECT_LE(row.plancherel, 1.0 + 1e-3);
    }
    EXPECT_NEAR(s.weighted_slope, s.weighted_predicted, 0.5);
    EXPECT_NEAR(s.plain_slope, s.plain_predicted, 0.5);
}

TEST(CalM, PlancherelOnDecomposedAtoms) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    const Ball b{g.position(g.flatten({9, 20, 0})), g.box() / 4};
    const AtomicDecomposition d = atomic_decompose(restrict_to_tent(random_spacetime(g, tg, Rank::vector, 4, SpectrumShape{}), b));
    for (std::size_t i = 0; i < d.atoms.size(); ++i) {
        const Field m = calM_apply(to_spectral(atom_field(d, i)));
        EXPECT_LE(m.l2_norm2(), 0.5 / d.atoms[i].ball_volume * (1 + 1e-3));
        for (int c = 0; c < 4; ++c) EXPECT_EQ(m.coeffs(c)[0], cplx(0.0));
    }
}

TEST(A2Star, ZeroAndHeatStructure) {
    const Grid g = make_grid(2, 32, 2 * pi);
    const TimeGrid tg = TimeGrid::for_grid(g);
    EXPECT_EQ(a2star_apply(SpaceTimeField::zeros(tg, g, Rank::vector)).l2_norm(), 0.0);
    const SpaceTimeField G = random_spacetime(g, tg, Rank::vector, 1, SpectrumShape{});
    const SpaceTimeField a = a2star_apply(G);
    const Field m = calM_apply(G);
    for (int j : {0, 20, 40}) {
        Field expect = heat_evolve(m, tg.at(j));
        expect += a.slice(j);
        EXPECT_LE(expect.l2_norm(), 1e-14 * m.l2_norm());
    }
}

TEST(HeatExtension, VacuousFiniteAndStable) {
    EXPECT_TRUE(heat_extension_check(Field(make_grid(2, 16, 2 * pi), Rank::scalar)).vacuous);
    std::vector<double> ratios;
    for (int N : {64, 128}) {
        const Grid g = make_grid(2, N, 2 * pi);
        const RatioCheck r = heat_extension_check(random_field(g, Rank::scalar, 12, SpectrumShape{}));
        EXPECT_FALSE(r.vacuous);
        EXPECT_TRUE(std::isfinite(r.ratio));
        ratios.push_back(r.ratio);
    }
    EXPECT_NEAR(ratios[1] / ratios[0], 1.0, 0.3);
}
