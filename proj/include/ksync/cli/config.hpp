#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksync/frequency_distribution.hpp"
#include "ksync/integrate.hpp"

namespace ksync::cli {

/// Configuration problem, reported with a file:line anchor where available.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RunMode {
    Kuramoto,
    KuramotoNoise,
    KuramotoNetwork,
    JjFull,
    JjReduced,
    JjReducedIdentical,
    Sweep,
};

[[nodiscard]] std::string to_string(RunMode mode);
[[nodiscard]] RunMode run_mode_from_string(const std::string& name);

enum class NetworkTopology { Complete, Ring, Random };

[[nodiscard]] std::string to_string(NetworkTopology topology);

/// Parses `10uA`, `4.2kohm`, `1nH`, `0.1%`, `2.5e-3`, ... into SI floats.
/// Bare numbers are accepted; percent divides by 100.
[[nodiscard]] double parse_quantity(const std::string& text);

struct KuramotoParams {
    std::size_t n = 100;
    double coupling = 1.0;
    FrequencyDistribution distribution = FrequencyDistribution::gaussian(1.0);
    double init_phase_spread = 3.141592653589793;  ///< phases uniform in [-spread, spread)
};

struct NoiseParams {
    double sigma = 1.0;
    double gamma = 0.0;
};

struct NetworkParams {
    NetworkTopology topology = NetworkTopology::Complete;
    double edge_coupling = 0.0;
    std::size_t neighbors = 1;      ///< ring only
    double edge_probability = 0.1;  ///< random only
};

struct JunctionOverride {
    std::optional<double> ic;
    std::optional<double> rho;
};

struct ArrayParams {
    std::size_t n = 1;
    double ic = 10e-6;
    double rho = 4200.0;
    double ic_spread = 0.0;
    double rho_spread = 0.0;
    std::map<std::size_t, JunctionOverride> overrides;
};

struct LoadParams {
    double inductance = 1e-9;
    double resistance = 2.0;
    double capacitance = 1e-6;
};

struct SweepParams {
    double k_min = 0.0;
    double k_max = 1.0;
    std::size_t points = 16;
    double onset_offset = 0.2;
};

struct OutputParams {
    std::string dir = "out";
    bool phase_dump = true;
};

/// One fully resolved run. Serializes to the flat key = value config format;
/// the emitted manifest parses back to an identical configuration.
struct RunConfig {
    RunMode mode = RunMode::Kuramoto;
    std::uint64_t seed = 0;
    std::string label;                      ///< preset name or config stem
    std::vector<std::string> provenance;    ///< free-text notes carried into the manifest

    KuramotoParams kuramoto;
    NoiseParams noise;
    NetworkParams network;

    ArrayParams array;
    LoadParams load;
    double bias_current = 12e-6;
    double coupling_scale = 1.0;
    double band_tolerance = 0.05;           ///< majority-band half width (relative) for jj reports
    bool precharge_load = true;             ///< start the load capacitor at its DC operating point
    double jj_init_phase_spread = 3.141592653589793;  ///< junction phases uniform in [-spread, spread)

    SweepParams sweep;

    IntegrationConfig integration;          ///< dt resolved (jj default: shortest period / 200)
    bool dt_explicit = false;
    double tail_fraction = 0.25;
    double r_threshold = 0.9;

    OutputParams output;

    [[nodiscard]] bool is_jj_mode() const {
        return mode == RunMode::JjFull || mode == RunMode::JjReduced ||
               mode == RunMode::JjReducedIdentical;
    }
    [[nodiscard]] bool is_kuramoto_mode() const {
        return mode == RunMode::Kuramoto || mode == RunMode::KuramotoNoise ||
               mode == RunMode::KuramotoNetwork;
    }

    /// Parses and validates; throws ConfigError with file:line anchors.
    static RunConfig from_text(const std::string& text, const std::string& name);
    static RunConfig from_file(const std::string& path);

    /// Canonical config-format rendering (used for the run manifest).
    [[nodiscard]] std::string to_text() const;

    void validate() const;
};

/// Shortest-round-trip-ish literal for doubles (%.17g).
[[nodiscard]] std::string format_double(double value);

}  // namespace ksync::cli
