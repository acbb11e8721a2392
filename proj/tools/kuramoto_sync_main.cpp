#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "ksync/cli/presets.hpp"
#include "ksync/cli/runner.hpp"
#include "ksync/integrate.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& preset, std::optional<std::uint64_t> seed,
                std::optional<std::string> out_dir, bool require_sweep) {
    using namespace ksync::cli;
    try {
        RunConfig cfg;
        if (!preset.empty()) {
            cfg = make_preset(preset);
        } else if (!config_path.empty()) {
            cfg = RunConfig::from_file(config_path);
        } else {
            std::cerr << "error: provide --config or --preset\n";
            return 1;
        }
        if (require_sweep && cfg.mode != RunMode::Sweep) {
            std::cerr << "error: 'sweep' expects a config with mode = sweep (got mode = "
                      << to_string(cfg.mode) << ")\n";
            return 1;
        }
        const RunArtifacts artifacts = execute_run(cfg, out_dir, seed);
        if (!artifacts.csv_path.empty()) std::cout << "trace:    " << artifacts.csv_path << "\n";
        std::cout << "report:   " << artifacts.report_path << "\n";
        std::cout << "manifest: " << artifacts.manifest_path << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ksync::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled-oscillator synchronization toolkit: Kuramoto ensembles and "
                 "Josephson-junction series arrays"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;

    auto* run = app.add_subcommand("run", "Run one simulation from a config file or preset");
    run->add_option("--config", config_path, "Path to a run config file");
    run->add_option("--preset", preset, "Name of a built-in preset (see list-presets)");
    run->add_option("--seed", seed, "Override the run seed");
    run->add_option("--out", out_dir, "Override the output directory");

    std::string sweep_config;
    std::optional<std::uint64_t> sweep_seed;
    std::optional<std::string> sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Run a coupling-strength sweep from a config file");
    sweep->add_option("--config", sweep_config, "Path to a sweep config file")->required();
    sweep->add_option("--seed", sweep_seed, "Override the run seed");
    sweep->add_option("--out", sweep_out, "Override the output directory");

    auto* list = app.add_subcommand("list-presets", "List the built-in experiment presets");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return run_command(config_path, preset, seed, out_dir, false);
    if (sweep->parsed()) return run_command(sweep_config, "", sweep_seed, sweep_out, true);
    if (list->parsed()) {
        std::cout << ksync::cli::preset_listing();
        return 0;
    }
    return 1;
}
