#pragma once

#include <string>
#include <vector>

#include "xychain/model_xy.hpp"
#include "xychain/observable.hpp"
#include "xychain/tebd.hpp"

namespace xychain::cli {

using model::ParameterSchedule;
using model::XYParameters;

// One experiment: a set of Heisenberg-picture observables evolved under a
// common schedule, each in its own TEBD run, measured against a product
// state. chi_max = 0 selects twice the analytic bound per observable.
struct ExperimentConfig {
    XYParameters chain;
    ParameterSchedule schedule;
    tebd::EvolutionConfig evolution;
    int auto_chi = 0;  // nonzero when chi_max should be derived per observable
    std::vector<std::string> observables;
    std::vector<bool> initial_down;  // per-site; true = |down>
    std::string output_dir = ".";
    bool emit_schmidt = false;
    std::vector<int> schmidt_bonds;
    bool emit_stationary_reference = false;

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_json(const std::string& text);

struct RunResult {
    std::vector<std::string> files_written;
    std::vector<std::string> warnings;
};

// Writes trajectory.csv, optionally schmidt.csv and stationary_reference.csv,
// and run_manifest.json into cfg.output_dir. Throws ConfigError for invalid
// configurations and NumericalAbort if an evolution produced non-finite
// values.
RunResult run_experiment(const ExperimentConfig& cfg, bool quiet = false);

}  // namespace xychain::cli
