// Command-line front end: evolves Heisenberg-picture observables of a
// boundary-driven XY chain and writes trajectory/Schmidt/stationary CSVs.

#include <CLI11.hpp>
#include <iostream>

#include "xychain/errors.hpp"
#include "xychain/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Heisenberg-picture MPO evolution of a boundary-driven XY spin chain"};

    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    bool validate_only = false;
    app.add_option("--config", config_path, "experiment configuration (JSON)")->required();
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_flag("--quiet", quiet, "suppress progress output");
    app.add_flag("--validate-only", validate_only, "parse and validate the config, then exit");

    CLI11_PARSE(app, argc, argv);

    try {
        xychain::cli::ExperimentConfig cfg = xychain::cli::load_config(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        cfg.validate();
        if (validate_only) {
            if (!quiet) std::cout << "config ok\n";
            return 0;
        }
        xychain::cli::run_experiment(cfg, quiet);
        return 0;
    } catch (const xychain::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const xychain::NumericalAbort& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
