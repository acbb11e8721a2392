#pragma once

#include <optional>
#include <string>

#include "ksync/analysis.hpp"
#include "ksync/cli/config.hpp"
#include "ksync/integrate.hpp"

namespace ksync::cli {

/// Seed sub-streams derived from the run seed (Rng::mix(seed, stream)).
enum SeedStream : std::uint64_t {
    kSeedFrequencies = 1,
    kSeedInitialPhases = 2,
    kSeedNoise = 3,
    kSeedArraySpread = 4,
};

/// Everything a run produced. The primary trace backs the CSV; junction runs
/// also carry the natural-angle view used for frequency-band diagnostics.
struct RunArtifacts {
    RunConfig resolved;                            ///< config with defaults (dt, seeds) pinned
    SimulationTrace trace;
    std::optional<SimulationTrace> natural_trace;  ///< jj-full only
    std::optional<SyncReport> report;
    std::optional<SweepResult> sweep;

    std::string csv_path;
    std::string report_path;
    std::string manifest_path;
};

/// Runs the configured simulation or sweep in memory (no files).
[[nodiscard]] RunArtifacts run_simulation(const RunConfig& config);

/// Runs and writes trace CSV, report and manifest under the output directory.
[[nodiscard]] RunArtifacts execute_run(const RunConfig& config,
                                       const std::optional<std::string>& out_dir_override = std::nullopt,
                                       const std::optional<std::uint64_t>& seed_override = std::nullopt);

/// CSV rendering of a trace: header `t,R,psi[,theta_0..theta_{N-1}]`.
[[nodiscard]] std::string trace_to_csv(const SimulationTrace& trace, bool phase_dump);

/// `key: value` report rendering.
[[nodiscard]] std::string report_to_text(const RunArtifacts& artifacts);

}  // namespace ksync::cli
