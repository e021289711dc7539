#pragma once

#include "tentlab/config.hpp"
#include "tentlab/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tentlab {

struct Experiment {
    std::string name;
    std::string summary;
    std::function<RunReport(const ExperimentConfig&)> run;
};

/// The registry, one experiment per acceptance criterion, in criterion order.
const std::vector<Experiment>& experiments();
std::vector<std::string> experiment_names();

/// Runs config.experiment. Unknown names throw std::invalid_argument listing
/// the registry; errors raised inside an experiment are rethrown as
/// std::runtime_error prefixed with the experiment name.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace tentlab
