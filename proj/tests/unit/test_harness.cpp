#include "tentlab/corpus.hpp"
#include "tentlab/duhamel.hpp"
#include "tentlab/experiments.hpp"
#include "tentlab/operators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tentlab;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "tentlab_harness";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunReport sample_report() {
    RunReport r;
    r.experiment = "sample";
    r.config = to_json(ExperimentConfig{});
    r.checks = {check_le("a", 0.25, 1.0), check_ge("b", NAN, 0.0), check_true("c", INFINITY, true)};
    r.timings = {{"stage", 1.5}};
    r.plots = {{"curve", "N", "ratio", {{64, 0.5}, {128, 0.75}, {256, 0.875}}}, {"single", "K", "err", {{8, 1e-3}}}};
    r.details = {{"note", "x"}, {"n", 3}};
    return r;
}

}  // namespace

TEST(Config, DefaultsValidateAndKeyTableIsComplete) {
    EXPECT_NO_THROW(ExperimentConfig{}.validate());
    const auto keys = config_keys();
    EXPECT_EQ(keys.size(), to_json(ExperimentConfig{}).flatten().size());
    for (const auto& k : keys) {
        EXPECT_NE(k.key.find('.'), std::string::npos) << k.key;
        EXPECT_FALSE(k.description.empty()) << k.key;
    }
}

TEST(Config, ParsesGroupsAndOverridesDefaults) {
    const ExperimentConfig c = parse(
        "[experiment]\nname = solver\n"
        "[grid]\nsize = 32\ndim = 3\n"
        "[corpus]\nseed = 99\nexponent = 1.5\n"
        "[atoms]\nnu = 500\n"
        "[molecule]\nq = 1.25\n");
    EXPECT_EQ(c.experiment, "solver");
    EXPECT_EQ(c.size, 32);
    EXPECT_EQ(c.dim, 3);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.spectrum_exponent, 1.5);
    EXPECT_EQ(c.stopping_nu(), 500.0);
    EXPECT_EQ(c.box, ExperimentConfig{}.box);
    EXPECT_EQ(ExperimentConfig{}.stopping_nu(), 900.0);
}

TEST(Config, DottedKeysAndBaseOverride) {
    ExperimentConfig base;
    base.size = 16;
    std::istringstream in("solver.tol = 1e-6\n");
    const ExperimentConfig c = parse_config(in, base);
    EXPECT_EQ(c.tol, 1e-6);
    EXPECT_EQ(c.size, 16);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse("[grid]\nsizee = 32\n"), std::invalid_argument);
    EXPECT_THROW(parse("[nonsense]\nx = 1\n"), std::invalid_argument);
    EXPECT_THROW(parse("[grid]\nsize = many\n"), std::invalid_argument);
    EXPECT_THROW(parse("[grid]\nsize = 33\n"), std::invalid_argument);
    EXPECT_THROW(parse("[schur]\nbeta = -0.5\n"), std::invalid_argument);
    EXPECT_THROW(parse("[schur]\nbeta = 0\n"), std::invalid_argument);
    EXPECT_THROW(parse("[atoms]\ngamma = 0.5\n"), std::invalid_argument);
    EXPECT_THROW(parse("[molecule]\nq = 2\n"), std::invalid_argument);
    EXPECT_THROW(parse("[scaling]\nlambda = 3\n"), std::invalid_argument);
    EXPECT_THROW(parse("[output]\nformat = xml\n"), std::invalid_argument);
    EXPECT_THROW(load_config(scratch("missing.ini")), std::runtime_error);
}

TEST(Config, JsonRoundTrip) {
    ExperimentConfig c;
    c.experiment = "molecules";
    c.size = 32;
    c.nu = 1234.0;
    const ExperimentConfig back = config_from_json(to_json(c));
    EXPECT_EQ(to_json(back), to_json(c));
    EXPECT_EQ(back.nu, 1234.0);
    EXPECT_FALSE(back.spectrum_exponent.has_value());
}

TEST(GenerateField, KindsAndDeterminism) {
    for (int dim : {2, 3}) {
        const Grid g = make_grid(dim, 16, 2 * std::numbers::pi);
        const Field grad = generate_field(g, FieldKind::gradient, 5);
        EXPECT_LE(leray_project(grad).l2_norm(), 1e-10 * grad.l2_norm());
        const Field sol = generate_field(g, FieldKind::solenoidal, 5);
        EXPECT_LE(differentiate(sol, Divergence{}).l2_norm(), 1e-10 * differentiate(sol, Gradient{}).l2_norm());
        const Field a = generate_field(g, FieldKind::random, 5);
        const Field b = generate_field(g, FieldKind::random, 5);
        for (int c = 0; c < a.components(); ++c) {
            EXPECT_TRUE(std::ranges::equal(a.coeffs(c), b.coeffs(c)));
            EXPECT_EQ(a.coeffs(c)[0], cplx(0.0));
        }
        EXPECT_FALSE(std::ranges::equal(a.coeffs(0), generate_field(g, FieldKind::random, 6).coeffs(0)));
    }
    EXPECT_EQ(parse_field_kind("taylor-green"), FieldKind::taylor_green);
    EXPECT_THROW(parse_field_kind("curl"), std::invalid_argument);
}

TEST(GenerateField, RandomSpectrumFollowsPowerLaw) {
    // Averaged over seeds, |û(m)|² ∝ |m|^{−2·exponent}; compare shells |m|² = 1 and 25.
    const Grid g = make_grid(2, 32, 2 * std::numbers::pi);
    const SpectrumShape shape{1.5, 8};
    double e1 = 0.0, e25 = 0.0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        const Field f = random_field(g, Rank::scalar, s, shape);
        e1 += std::norm(f.coeffs(0)[g.flatten({1, 0, 0})]) + std::norm(f.coeffs(0)[g.flatten({0, 1, 0})]);
        e25 += std::norm(f.coeffs(0)[g.flatten({5, 0, 0})]) + std::norm(f.coeffs(0)[g.flatten({0, 5, 0})]);
    }
    EXPECT_NEAR(std::log(e1 / e25) / std::log(25.0), 1.5, 0.15);
}

TEST(RunExperiment, LerayAtDefaultsPasses) {
    ExperimentConfig c;
    c.experiment = "leray-idempotence";
    const RunReport r = run_experiment(c);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.experiment, "leray-idempotence");
    EXPECT_EQ(r.config, to_json(c));
    EXPECT_EQ(r.checks.size(), 6u);
    EXPECT_TRUE(std::is_sorted(r.checks.begin(), r.checks.end(), [](auto& a, auto& b) { return a.name < b.name; }));
    EXPECT_FALSE(r.timings.empty());
}

TEST(RunExperiment, DecompositionReportsDefectOfModuleOp) {
    ExperimentConfig c;
    c.experiment = "decomposition-identity";
    c.size = 16;
    c.corpus_size = 2;
    c.nodes_per_half = 8;
    const RunReport r = run_experiment(c);
    const auto alphas = spacetime_corpus(c.grid(), c.times(), Rank::tensor, c.seed, 2, SpectrumShape{std::nullopt, c.band});
    const double expected = decomposition_defect(alphas, c.scheme()).max_relative;
    const auto it = std::find_if(r.checks.begin(), r.checks.end(), [](const Check& k) { return k.name == "decomposition.max_defect"; });
    ASSERT_NE(it, r.checks.end());
    EXPECT_EQ(it->value, expected);
    EXPECT_EQ(it->bound, 1e-3);
    ASSERT_EQ(r.plots.size(), 1u);
    EXPECT_EQ(r.plots[0].points.size(), 2u);
    EXPECT_EQ(r.pass(), std::all_of(r.checks.begin(), r.checks.end(), [](const Check& k) { return k.pass; }));
}

TEST(RunExperiment, IdenticalConfigGivesIdenticalValues) {
    ExperimentConfig c;
    c.experiment = "desimon";
    c.size = 16;
    c.corpus_size = 3;
    RunReport a = run_experiment(c), b = run_experiment(c);
    a.timings.clear();
    b.timings.clear();
    EXPECT_EQ(a, b);
}

TEST(RunExperiment, UnknownNameListsRegistry) {
    ExperimentConfig c;
    c.experiment = "nope";
    try {
        run_experiment(c);
        FAIL();
    } catch (const std::invalid_argument& e) {
        for (const auto& name : experiment_names()) EXPECT_NE(std::string(e.what()).find(name), std::string::npos) << name;
    }
    EXPECT_EQ(experiment_names().size(), 12u);
}

TEST(RunExperiment, InvalidConfigIsRejected) {
    ExperimentConfig c;
    c.experiment = "desimon";
    c.size = 7;
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(Report, PassIsConjunctionOfChecks) {
    RunReport r;
    EXPECT_TRUE(r.pass());
    r.checks.push_back(check_le("x", 1.0, 1.0));
    EXPECT_TRUE(r.pass());
    r.checks.push_back(check_le("nan", NAN, 1.0));
    EXPECT_FALSE(r.pass());
    EXPECT_FALSE(check_ge("nan", NAN, 0.0).pass);
}

TEST(Emit, EmptyReportWritesHeaderOnly) {
    RunReport r;
    r.experiment = "empty";
    const auto csv = scratch("empty.csv");
    emit(r, "csv", csv);
    EXPECT_EQ(slurp(csv), "check,value,bound,relation,pass\n");
    const auto json = scratch("empty.json");
    emit(r, "json", json);
    const auto j = nlohmann::json::parse(slurp(json));
    EXPECT_TRUE(j.at("checks").empty());
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_FALSE(std::filesystem::exists(scratch("empty.plot.csv")));
}

TEST(Emit, JsonRoundTripIsIdentical) {
    const RunReport r = sample_report();
    const auto path = scratch("round.json");
    emit(r, "json", path);
    const RunReport back = report_from_json(nlohmann::json::parse(slurp(path)));
    EXPECT_EQ(back.experiment, r.experiment);
    EXPECT_EQ(back.checks.size(), r.checks.size());
    EXPECT_TRUE(std::isnan(back.checks[1].value));
    // NaN never compares equal, so compare with that check removed.
    RunReport a = r, b = back;
    a.checks.erase(a.checks.begin() + 1);
    b.checks.erase(b.checks.begin() + 1);
    EXPECT_EQ(a, b);
}

TEST(Emit, PlotCsvHasOneRowPerPoint) {
    const RunReport r = sample_report();
    const auto path = scratch("plots.json");
    emit(r, "json", path);
    const std::string csv = slurp(scratch("plots.plot.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4);
    EXPECT_EQ(csv.rfind("series,x,y\n", 0), 0u);
}

TEST(Emit, Errors) {
    EXPECT_THROW(emit(sample_report(), "json", "/nonexistent-dir/x/report.json"), std::runtime_error);
    EXPECT_THROW(emit(sample_report(), "xml", scratch("r.xml")), std::invalid_argument);
}
