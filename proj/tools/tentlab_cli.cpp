// tentlab command line: verify, norms, decompose, solve, probe.
//
// Precedence is defaults, then --config, then the global flags. Every
// subcommand writes a RunReport (stdout when --out is empty) and exits 0 iff
// the report passes.

#include "tentlab/atoms.hpp"
#include "tentlab/corpus.hpp"
#include "tentlab/experiments.hpp"
#include "tentlab/serialize.hpp"
#include "tentlab/tent.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

using namespace tentlab;

namespace {

struct Globals {
    std::string config_path;
    std::optional<int> size;
    std::optional<int> dim;
    std::optional<double> box;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
};

ExperimentConfig resolve(const Globals& g) {
    ExperimentConfig c = g.config_path.empty() ? ExperimentConfig{} : load_config(g.config_path);
    if (g.size) c.size = *g.size;
    if (g.dim) c.dim = *g.dim;
    if (g.box) c.box = *g.box;
    if (g.seed) c.seed = *g.seed;
    if (g.out) c.out = *g.out;
    if (g.format) c.format = *g.format;
    c.validate();
    return c;
}

/// "taylor-green", "<kind>:<seed>" for a generated field, or a binary field file.
Field initial_field(const std::string& spec, const ExperimentConfig& c) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind == "taylor-green" || colon != std::string::npos) {
        const std::uint64_t seed = colon == std::string::npos ? c.seed : std::stoull(spec.substr(colon + 1));
        FieldKind k = parse_field_kind(kind);
        // A random initial datum for the solver has to be divergence-free.
        if (k == FieldKind::random) k = FieldKind::solenoidal;
        return generate_field(c.grid(), k, seed, SpectrumShape{c.spectrum_exponent, c.band});
    }
    if (!std::filesystem::exists(spec)) throw std::invalid_argument("--init: no such field file or kind '" + spec + "'");
    return load_field(spec);
}

int finish(RunReport r, const ExperimentConfig& c) {
    r.config = to_json(c);
    r.sort_checks();
    if (c.out.empty()) {
        if (c.format == "json") std::cout << to_json(r).dump(2) << '\n';
        else write_checks_csv(std::cout, r);
    } else {
        emit(r, c.format, c.out);
        for (const Check& k : r.checks)
            std::cerr << (k.pass ? "ok   " : "FAIL ") << k.name << " = " << k.value << ' ' << k.relation << ' ' << k.bound << '\n';
    }
    std::cerr << r.experiment << ": " << (r.pass() ? "PASS" : "FAIL") << '\n';
    return r.pass() ? 0 : 1;
}

template <class F>
auto timed(RunReport& r, std::string stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto out = f();
    r.timings.push_back({std::move(stage), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    return out;
}

int cmd_norms(const ExperimentConfig& c, const std::string& init) {
    RunReport r;
    r.experiment = "norms";
    const Field u0 = initial_field(init, c);
    const TimeGrid times = c.times();
    const double bmo = timed(r, "bmo_minus1", [&] { return bmo_minus1_norm(u0, times, c.family()); });
    const double besov = timed(r, "besov", [&] { return besov_norm(u0, times); });
    const double x = timed(r, "x_norm", [&] { return x_norm(caloric_extend(u0, times), c.family()); });
    r.checks.push_back(check_true("norms.bmo_minus1", bmo, std::isfinite(bmo)));
    r.checks.push_back(check_true("norms.besov", besov, std::isfinite(besov)));
    r.checks.push_back(check_true("norms.x_caloric", x, std::isfinite(x)));
    r.details = {{"l2", u0.l2_norm()}, {"bmo_minus1", bmo}, {"besov", besov}, {"x_caloric", x}};
    return finish(std::move(r), c);
}

int cmd_decompose(const ExperimentConfig& c, double tent_radius, const std::string& payload) {
    RunReport r;
    r.experiment = "decompose";
    const Grid g = c.grid();
    const SpaceTimeField f = random_spacetime(g, c.times(), Rank::vector, c.seed, SpectrumShape{c.spectrum_exponent, c.band});
    const PhysicalSpaceTime G = tent_radius > 0.0 ? restrict_to_tent(f, Ball{Point{}, tent_radius}) : to_physical(f);
    const AtomicDecomposition d = timed(r, "decompose", [&] { return atomic_decompose(G, c.atom_params()); });
    PhysicalSpaceTime diff = reconstruct(d);
    for (std::size_t j = 0; j < diff.slices.size(); ++j)
        for (std::size_t k = 0; k < diff.slices[j].values.size(); ++k)
            for (std::size_t y = 0; y < g.points(); ++y) diff.slices[j].values[k][y] -= G.slices[j].values[k][y];
    int invalid = 0;
    for (std::size_t a = 0; a < d.atoms.size(); ++a)
        if (!atom_validate(d, a).pass) ++invalid;
    r.checks.push_back(check_le("decompose.reconstruction", l2_norm(diff) / l2_norm(G), 1e-10));
    r.checks.push_back(check_le("decompose.invalid_atoms", invalid, 0));
    r.checks.push_back(check_le("decompose.whitney_violations", d.whitney_violations, 0));
    r.checks.push_back(check_true("decompose.ratio", d.ratio(), std::isfinite(d.ratio()) && d.ratio() > 0.0));
    r.details = manifest(d);
    if (!payload.empty()) {
        std::ofstream out(payload, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + payload);
        write_atom_payloads(out, d);
    }
    return finish(std::move(r), c);
}

int cmd_solve(const ExperimentConfig& c, const std::string& init, double amplitude, const std::string& solution) {
    RunReport r;
    r.experiment = "solve";
    const Field u0 = amplitude * initial_field(init, c);
    const PicardResult res = timed(r, "picard", [&] { return picard_solve(u0, c.times(), c.solver()); });
    r.checks.push_back(check_true("solve.converged", res.trace.final_residual(), res.trace.status == PicardStatus::converged));
    PlotSeries trace{"picard_residual", "iteration", "X residual", {}};
    for (const auto& st : res.trace.steps) trace.points.emplace_back(st.iteration, st.residual);
    r.plots.push_back(std::move(trace));
    r.details = {{"trace", to_json(res.trace)}, {"amplitude", amplitude}, {"init", init}};
    if (!solution.empty()) save_spacetime(solution, res.u);
    return finish(std::move(r), c);
}

const std::map<std::string, OperatorNormReport (*)(const ProbeSetup&)>& probe_ops() {
    static const std::map<std::string, OperatorNormReport (*)(const ProbeSetup&)> ops{
        {"desimon", desimon_check},          {"maxreg", maxreg_tent_check},    {"Z", z_tent_check},
        {"R", r_tent_check},                 {"pointwise", pointwise_bound_check}, {"duhamel", duhamel_tent_check},
        {"carleson", carleson_probe},        {"pairing", pairing_probe},      {"cauchy-schwarz", cauchy_schwarz_probe},
    };
    return ops;
}

int cmd_probe(const ExperimentConfig& c, const std::string& op) {
    RunReport r;
    r.experiment = "probe:" + op;
    const OperatorNormReport p = timed(r, op, [&] { return probe_ops().at(op)(c.probe_setup()); });
    r.checks.push_back(check_true(op + ".finite", p.max_ratio, p.finite()));
    r.plots.push_back({op, "N", "max ratio", {{p.grid_size, p.max_ratio}}});
    if (p.refined_size) r.plots.back().points.emplace_back(p.refined_size, p.refined_max);
    r.details = to_json(p);
    return finish(std::move(r), c);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tentlab: tent-space experiments for Navier-Stokes data in BMO^-1"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "INI-style config file")->check(CLI::ExistingFile);
    app.add_option("--grid-size", g.size, "points per axis N");
    app.add_option("--dim", g.dim, "spatial dimension");
    app.add_option("--box", g.box, "torus side L");
    app.add_option("--seed", g.seed, "corpus seed");
    app.add_option("--out", g.out, "report path; stdout when empty");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string experiment;
    auto* verify = app.add_subcommand("verify", "run one acceptance experiment");
    verify->add_option("experiment", experiment)->required()->check(CLI::IsMember(experiment_names()));

    std::string init = "taylor-green";
    auto* norms = app.add_subcommand("norms", "BMO^-1, Besov and X norms of an initial datum");
    norms->add_option("--init", init, "taylor-green, <kind>:<seed> or a field file");

    double tent_radius = 0.0;
    std::string payload;
    auto* decompose = app.add_subcommand("decompose", "T^{1,2} atomic decomposition of a seeded field");
    decompose->add_option("--tent-radius", tent_radius, "restrict to the tent over B(0, r); 0 keeps the full support");
    decompose->add_option("--payload", payload, "binary file for the atom values");

    double amplitude = 1.0;
    std::string solution;
    auto* solve = app.add_subcommand("solve", "Picard iteration for the mild formulation");
    solve->add_option("--init", init, "taylor-green, <kind>:<seed> or a field file");
    solve->add_option("--amplitude", amplitude, "scale applied to the initial datum");
    solve->add_option("--solution", solution, "binary space-time file for the solution");

    std::string op;
    std::vector<std::string> op_names;
    for (const auto& [name, fn] : probe_ops()) op_names.push_back(name);
    auto* probe = app.add_subcommand("probe", "operator-norm probe over the seeded corpus");
    probe->add_option("op", op)->required()->check(CLI::IsMember(op_names));

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig c = resolve(g);
        if (verify->parsed()) {
            c.experiment = experiment;
            return finish(run_experiment(c), c);
        }
        if (norms->parsed()) return cmd_norms(c, init);
        if (decompose->parsed()) return cmd_decompose(c, tent_radius, payload);
        if (solve->parsed()) return cmd_solve(c, init, amplitude, solution);
        if (probe->parsed()) return cmd_probe(c, op);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
