#pragma once

#include "tentlab/atoms.hpp"
#include "tentlab/probes.hpp"
#include "tentlab/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace tentlab {

/// Every experiment parameter with its default. Files use INI-style groups,
///
///     [grid]
///     size = 128
///
/// and each key is addressed as group.key (see config_keys()).
struct ExperimentConfig {
    std::string experiment;

    int dim = 2;
    int size = 64;
    double box = 6.283185307179586;
    int per_octave = 4;
    int ball_stride = 0;  ///< 0 means N/16

    int corpus_size = 32;
    std::uint64_t seed = 1729;
    std::optional<double> spectrum_exponent;  ///< unset means (n+1)/2
    int band = 8;

    double split = 0.5;
    int nodes_per_half = 64;

    double gamma = 0.25;
    double level_base = 2.0;
    std::optional<double> nu;  ///< unset means 3ⁿ·100
    double beta = -0.25;
    double q = 1.25;
    double lambda = 2.0;

    int max_iters = 30;
    double tol = 1e-8;

    std::string out;
    std::string format = "json";

    /// Throws std::invalid_argument naming the first out-of-range parameter.
    void validate() const;

    Grid grid() const;
    TimeGrid times() const;
    BallFamily family() const;
    QuadratureScheme scheme() const;
    ProbeSetup probe_setup() const;
    SolverConfig solver() const;
    AtomParams atom_params() const;
    double stopping_nu() const;
};

struct ConfigKey {
    std::string key;
    std::string default_value;
    std::string description;
};

/// The documented key table, in file order.
std::vector<ConfigKey> config_keys();

/// Parses INI-style text over the defaults; unknown keys are errors.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

nlohmann::json to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace tentlab
