#include "tentlab/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <stdexcept>

namespace tentlab {

namespace {

using Config = ExperimentConfig;

struct Entry {
    std::string group;
    std::string name;
    std::string description;
    std::function<void(CLI::App*, Config&)> bind;
    std::function<nlohmann::json(const Config&)> get;
    std::function<void(Config&, const nlohmann::json&)> set;
};

template <class T>
Entry entry(std::string group, std::string name, std::string description, T Config::*member) {
    Entry e{std::move(group), std::move(name), std::move(description), {}, {}, {}};
    const std::string flag = "--" + e.name;
    e.bind = [member, flag](CLI::App* app, Config& c) { app->add_option(flag, c.*member); };
    e.get = [member](const Config& c) -> nlohmann::json {
        if constexpr (std::is_same_v<T, std::optional<double>>) {
            return (c.*member) ? nlohmann::json(*(c.*member)) : nlohmann::json(nullptr);
        } else {
            return c.*member;
        }
    };
    e.set = [member](Config& c, const nlohmann::json& j) {
        if constexpr (std::is_same_v<T, std::optional<double>>) {
            c.*member = j.is_null() ? std::nullopt : std::optional<double>(j.get<double>());
        } else {
            c.*member = j.get<T>();
        }
    };
    return e;
}

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        entry("experiment", "name", "experiment to run", &Config::experiment),
        entry("grid", "dim", "spatial dimension, 2 or 3", &Config::dim),
        entry("grid", "size", "points per axis N (even)", &Config::size),
        entry("grid", "box", "torus side L", &Config::box),
        entry("time", "per_octave", "time samples per octave from h² to L²", &Config::per_octave),
        entry("balls", "stride", "ball-centre lattice spacing in points; 0 means N/16", &Config::ball_stride),
        entry("corpus", "size", "random fields per probe", &Config::corpus_size),
        entry("corpus", "seed", "first corpus seed", &Config::seed),
        entry("corpus", "exponent", "spectral decay |k|^-exponent; unset means (n+1)/2", &Config::spectrum_exponent),
        entry("corpus", "band", "largest |m|_inf carried by random fields", &Config::band),
        entry("quadrature", "split", "graded-rule split point as a fraction of t", &Config::split),
        entry("quadrature", "nodes", "cells per half of the graded rule (K)", &Config::nodes_per_half),
        entry("atoms", "gamma", "dilation threshold, in (0, 1 - overlap deficit)", &Config::gamma),
        entry("atoms", "level_base", "level-set base for S(G) > base^k", &Config::level_base),
        entry("atoms", "nu", "stopping-time threshold; unset means 3^n * 100", &Config::nu),
        entry("schur", "beta", "Schur weight exponent, in (-1/2, 0)", &Config::beta),
        entry("molecule", "q", "molecule exponent, in (1, n/(n-1))", &Config::q),
        entry("scaling", "lambda", "parabolic scaling factor, a power of two", &Config::lambda),
        entry("solver", "max_iters", "Picard iteration cap", &Config::max_iters),
        entry("solver", "tol", "absolute X-norm residual tolerance", &Config::tol),
        entry("output", "path", "report path; empty means stdout", &Config::out),
        entry("output", "format", "json or csv", &Config::format),
    };
    return table;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("config: " + what);
}

}  // namespace

void ExperimentConfig::validate() const {
    require(dim == 2 || dim == 3, "grid.dim must be 2 or 3");
    require(size >= 4 && size % 2 == 0, "grid.size must be even and >= 4");
    require(box > 0.0, "grid.box must be positive");
    require(per_octave >= 1, "time.per_octave must be >= 1");
    require(ball_stride >= 0, "balls.stride must be >= 0");
    require(corpus_size >= 1, "corpus.size must be >= 1");
    require(band >= 1, "corpus.band must be >= 1");
    require(!spectrum_exponent || std::isfinite(*spectrum_exponent), "corpus.exponent must be finite");
    require(split > 0.0 && split < 1.0, "quadrature.split must lie in (0, 1)");
    require(nodes_per_half >= 1, "quadrature.nodes must be >= 1");
    require(gamma > 0.0 && gamma < 1.0 - overlap_deficit(dim), "atoms.gamma must lie in (0, 1 - overlap deficit)");
    require(level_base > 1.0, "atoms.level_base must exceed 1");
    require(!nu || *nu > 1.0, "atoms.nu must exceed 1");
    require(beta > -0.5 && beta < 0.0, "schur.beta must lie in (-1/2, 0)");
    require(q > 1.0 && q < static_cast<double>(dim) / (dim - 1), "molecule.q must lie in (1, n/(n-1))");
    int e = 0;
    require(lambda > 0.0 && std::frexp(lambda, &e) == 0.5, "scaling.lambda must be a power of two");
    require(max_iters >= 1, "solver.max_iters must be >= 1");
    require(tol > 0.0, "solver.tol must be positive");
    require(format == "json" || format == "csv", "output.format must be json or csv");
}

Grid ExperimentConfig::grid() const { return make_grid(dim, size, box); }

TimeGrid ExperimentConfig::times() const { return TimeGrid::for_grid(grid(), per_octave); }

BallFamily ExperimentConfig::family() const { return BallFamily(grid(), ball_stride); }

QuadratureScheme ExperimentConfig::scheme() const { return {split, nodes_per_half}; }

ProbeSetup ExperimentConfig::probe_setup() const {
    ProbeSetup p;
    p.dim = dim;
    p.size = size;
    p.box = box;
    p.corpus_size = corpus_size;
    p.seed = seed;
    p.spectrum = SpectrumShape{spectrum_exponent, band};
    p.scheme = scheme();
    return p;
}

SolverConfig ExperimentConfig::solver() const {
    SolverConfig s;
    s.max_iters = max_iters;
    s.tol = tol;
    s.scheme = scheme();
    return s;
}

AtomParams ExperimentConfig::atom_params() const { return AtomParams{gamma, level_base}; }

double ExperimentConfig::stopping_nu() const { return nu.value_or(default_nu(dim)); }

std::vector<ConfigKey> config_keys() {
    const ExperimentConfig defaults;
    std::vector<ConfigKey> out;
    for (const Entry& e : entries()) {
        const nlohmann::json v = e.get(defaults);
        std::string shown = v.is_null() ? "unset" : v.is_string() ? v.get<std::string>() : v.dump();
        out.push_back({e.group + "." + e.name, shown.empty() ? "\"\"" : shown, e.description});
    }
    return out;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
    CLI::App app;
    app.allow_config_extras(CLI::config_extras_mode::error);
    std::map<std::string, CLI::App*> groups;
    for (const Entry& e : entries()) {
        auto& sub = groups[e.group];
        if (!sub) {
            sub = app.add_subcommand(e.group)->configurable();
            sub->allow_config_extras(CLI::config_extras_mode::error);
        }
        e.bind(sub, base);
    }
    try {
        app.parse_from_stream(in);
    } catch (const CLI::Error& err) {
        throw std::invalid_argument(std::string("config: ") + err.what());
    }
    base.validate();
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path.string());
    return parse_config(in, std::move(base));
}

nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j = nlohmann::json::object();
    for (const Entry& e : entries()) j[e.group][e.name] = e.get(c);
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    for (const Entry& e : entries())
        if (j.contains(e.group) && j.at(e.group).contains(e.name)) e.set(c, j.at(e.group).at(e.name));
    return c;
}

}  // namespace tentlab
