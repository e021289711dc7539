#include "tentlab/corpus.hpp"
#include "tentlab/operators.hpp"
#include "tentlab/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tentlab;

namespace {

constexpr double pi = std::numbers::pi;

const Grid& grid32() {
    static const Grid g = make_grid(2, 32, 2 * pi);
    return g;
}

SolverConfig fast_config() {
    SolverConfig c;
    c.scheme = {0.5, 16};
    return c;
}

Field small_random(std::uint64_t seed, double amplitude) {
    const Field d = generate_field(grid32(), FieldKind::solenoidal, seed);
    return (amplitude / bmo_minus1_norm(d)) * d;
}

}  // namespace

TEST(Caloric, ZeroAndSingleMode) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    EXPECT_EQ(caloric_extend(Field(grid32(), Rank::vector), times).l2_norm(), 0.0);
    const Field tg = taylor_green(grid32());
    const SpaceTimeField u = caloric_extend(tg, times);
    for (int j = 0; j < times.count(); j += 7)
        EXPECT_LE((u.slice(j) - std::exp(-2 * times.at(j)) * tg).l2_norm(), 1e-14 * tg.l2_norm());
    EXPECT_THROW(caloric_extend(Field(grid32(), Rank::scalar), times), std::invalid_argument);
}

TEST(Caloric, ProjectsNonSolenoidalData) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const Field g = generate_field(grid32(), FieldKind::random, 4);
    const SpaceTimeField a = caloric_extend(g, times);
    const SpaceTimeField b = caloric_extend(leray_project(g), times);
    EXPECT_LE((a - b).l2_norm(), 1e-14 * b.l2_norm());
}

TEST(Caloric, FiniteDifferenceHeatEquation) {
    const Field u0 = generate_field(grid32(), FieldKind::solenoidal, 2);
    auto defect = [&](int per_octave) {
        const TimeGrid times = TimeGrid::spanning(0.01, per_octave, 1.0);
        const SpaceTimeField u = caloric_extend(u0, times);
        double worst = 0.0;
        for (int j = 0; j + 1 < times.count(); ++j) {
            const double t1 = times.at(j), t2 = times.at(j + 1);
            Field fd = (1.0 / (t2 - t1)) * (u.slice(j + 1) - u.slice(j));
            fd -= laplacian(heat_evolve(u0, 0.5 * (t1 + t2)));
            worst = std::max(worst, fd.l2_norm() / laplacian(u.slice(j)).l2_norm());
        }
        return worst;
    };
    const double coarse = defect(4), fine = defect(8);
    EXPECT_LE(fine, 0.5 * coarse);
    EXPECT_LE(fine, 0.05);
}

TEST(Norms, ZeroConstantAndMean) {
    const BallFamily family(grid32());
    const Field zero(grid32(), Rank::vector);
    EXPECT_EQ(bmo_minus1_norm(zero), 0.0);
    EXPECT_EQ(besov_norm(zero), 0.0);
    EXPECT_EQ(bmo_norm(zero, family), 0.0);
    Field c(grid32(), Rank::vector);
    c.coeffs(0)[0] = 2.0;
    c.coeffs(1)[0] = -1.0;
    EXPECT_EQ(bmo_norm(c, family), 0.0);
    EXPECT_EQ(bmo_minus1_norm(c), 0.0);
    const Field u = generate_field(grid32(), FieldKind::solenoidal, 8);
    EXPECT_DOUBLE_EQ(bmo_minus1_norm(u + c), bmo_minus1_norm(u));
    EXPECT_GT(bmo_norm(u, family), 0.0);
}

TEST(Norms, BmoBruteForceSingleBall) {
    const std::vector<double> radii{0.5};
    const BallFamily family(grid32(), 8, radii);
    const Field u = generate_field(grid32(), FieldKind::random, 5);
    const PhysicalField p = to_physical(u);
    double best = 0.0;
    for (std::size_t c : family.centers()) {
        std::vector<std::size_t> pts;
        for (std::size_t y = 0; y < grid32().points(); ++y)
            if (grid32().distance(c, y) < 0.5) pts.push_back(y);
        double m0 = 0, m1 = 0;
        for (auto y : pts) m0 += p.values[0][y], m1 += p.values[1][y];
        m0 /= pts.size();
        m1 /= pts.size();
        double osc = 0;
        for (auto y : pts) osc += std::hypot(p.values[0][y] - m0, p.values[1][y] - m1);
        best = std::max(best, osc / pts.size());
    }
    EXPECT_NEAR(bmo_norm(u, family), best, 1e-12 * best);
}

TEST(Norms, BesovControlledByBmoMinusOne) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const Field u = generate_field(grid32(), FieldKind::solenoidal, seed);
        worst = std::max(worst, besov_norm(u) / bmo_minus1_norm(u));
    }
    EXPECT_TRUE(std::isfinite(worst));
    EXPECT_GT(worst, 0.0);
    EXPECT_LT(worst, 100.0);
}

TEST(Picard, ZeroDataConvergesAtOnce) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const PicardResult r = picard_solve(Field(grid32(), Rank::vector), times, fast_config());
    EXPECT_EQ(r.trace.status, PicardStatus::converged);
    ASSERT_EQ(r.trace.steps.size(), 1u);
    EXPECT_EQ(r.u.l2_norm(), 0.0);
    EXPECT_THROW(picard_solve(Field(grid32(), Rank::vector), times, SolverConfig{0}), std::invalid_argument);
}

TEST(Picard, TaylorGreenFollowsHeatFlow) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    for (double amp : {0.25, 1.0}) {
        const Field u0 = amp * taylor_green(grid32());
        const PicardResult r = picard_solve(u0, times, fast_config());
        EXPECT_EQ(r.trace.status, PicardStatus::converged);
        EXPECT_LE(x_norm(r.u - caloric_extend(u0, times)), 1e-6);
        EXPECT_LE(residual(caloric_extend(u0, times), u0, fast_config().scheme), 1e-6);
    }
}

TEST(Picard, SmallDataContracts) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const SolverConfig cfg = fast_config();
    const Field u0 = small_random(3, 0.05);
    const PicardResult r = picard_solve(u0, times, cfg);
    ASSERT_EQ(r.trace.status, PicardStatus::converged);
    EXPECT_LE(r.trace.final_residual(), cfg.tol);
    ASSERT_TRUE(r.trace.max_contraction());
    EXPECT_LE(*r.trace.max_contraction(), 0.5);
    EXPECT_LE(residual(r.u, u0, cfg.scheme), 2 * cfg.tol);
    EXPECT_LE(x_norm(r.u), 2 * x_norm(caloric_extend(u0, times)));
    for (int j = 0; j < r.u.count(); ++j)
        EXPECT_LE(differentiate(r.u.slice(j), Divergence{}).l2_norm(), 1e-9 * u0.l2_norm());
    const PicardResult again = picard_solve(u0, times, cfg);
    EXPECT_EQ(to_json(again.trace), to_json(r.trace));
    const PicardResult half = picard_solve(0.5 * u0, times, cfg);
    EXPECT_EQ(half.trace.status, PicardStatus::converged);
    EXPECT_LT(x_norm(half.u), x_norm(r.u));
}

TEST(Picard, LargeDataDoesNotConverge) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const PicardResult r = picard_solve(small_random(3, 16.0), times, fast_config());
    EXPECT_NE(r.trace.status, PicardStatus::converged);
    EXPECT_TRUE(r.u.all_finite());
}

TEST(Residual, ZeroIterateGivesFreeSolutionNorm) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const Field u0 = small_random(6, 0.3);
    EXPECT_DOUBLE_EQ(residual(SpaceTimeField::zeros(times, grid32(), Rank::vector), u0, fast_config().scheme),
                     x_norm(caloric_extend(u0, times)));
}

TEST(Smallness, TaylorGreenAndRandomDirections) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const SolverConfig cfg = fast_config();
    const SmallnessResult tg = smallness_search(taylor_green(grid32()), times, cfg);
    EXPECT_TRUE(tg.at_top);
    EXPECT_EQ(tg.threshold, 16.0);
    EXPECT_THROW(smallness_search(Field(grid32(), Rank::vector), times, cfg), std::invalid_argument);

    const SmallnessResult a = smallness_search(generate_field(grid32(), FieldKind::solenoidal, 11), times, cfg);
    const SmallnessResult b = smallness_search(generate_field(grid32(), FieldKind::solenoidal, 12), times, cfg);
    EXPECT_FALSE(a.at_top || a.at_bottom);
    EXPECT_GT(a.threshold, 0.0);
    EXPECT_GT(b.threshold, 0.0);
    EXPECT_LE(std::max(a.threshold / b.threshold, b.threshold / a.threshold), 2.0);
    EXPECT_EQ(to_json(a).at("probes").size(), a.probes.size());
}

TEST(Scaling, InvarianceAndRoundTrip) {
    const TimeGrid times = TimeGrid::for_grid(grid32());
    const SpaceTimeField zero = SpaceTimeField::zeros(times, grid32(), Rank::vector);
    EXPECT_EQ(scaling_transform(zero).l2_norm(), 0.0);
    for (std::uint64_t seed : {1, 2, 3}) {
        const SpaceTimeField u = caloric_extend(generate_field(grid32(), FieldKind::solenoidal, seed), times);
        const SpaceTimeField s = scaling_transform(u, 2.0);
        EXPECT_EQ(s.grid().box(), pi);
        EXPECT_EQ(s.times().t_min(), times.t_min() / 4);
        EXPECT_NEAR(x_norm(s) / x_norm(u), 1.0, 0.05);
        const SpaceTimeField back = scaling_transform(s, 0.5);
        EXPECT_TRUE(back.grid() == u.grid());
        EXPECT_TRUE(back.times() == u.times());
        EXPECT_EQ((back - u).l2_norm(), 0.0);
    }
    EXPECT_THROW(scaling_transform(zero, 3.0), std::invalid_argument);
    EXPECT_THROW(scaling_transform(zero, 64.0), std::invalid_argument);
    EXPECT_THROW(scaling_transform(zero, -2.0), std::invalid_argument);
}
