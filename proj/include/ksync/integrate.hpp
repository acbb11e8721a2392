#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ksync/order_parameter.hpp"

namespace ksync {

/// Fixed-step integration settings, in the model's own dimensionless time.
struct IntegrationConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    std::size_t record_every = 1;
    std::uint64_t seed = 0;  ///< noise stream (Euler-Maruyama only)

    void validate() const;
    /// Number of steps, llround(t_end / dt). The trajectory ends at steps*dt.
    [[nodiscard]] std::size_t steps() const;
};

/// Recorded trajectory: decimated snapshots of the phase variables plus the
/// order parameter per sample. All series share the same length and the final
/// state is always recorded.
struct SimulationTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> phase_snapshots;   ///< samples x N
    std::vector<OrderParameter> order_parameters;
    std::vector<std::vector<double>> aux;               ///< optional extra state (e.g. load charge)

    [[nodiscard]] std::size_t samples() const { return times.size(); }
    [[nodiscard]] std::size_t n_phases() const { return phase_snapshots.empty() ? 0 : phase_snapshots.front().size(); }
};

/// Thrown when the state leaves the finite range; carries the last time at
/// which the state was still good.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double last_good_time, const std::string& what)
        : std::runtime_error(what), last_good_time_(last_good_time) {}
    [[nodiscard]] double last_good_time() const { return last_good_time_; }

private:
    double last_good_time_;
};

using OdeSystem = std::function<void(const std::vector<double>& y, std::vector<double>& dydt, double t)>;

/// Maps the raw state to the phase vector that is recorded and fed to the
/// order parameter. Defaults to the identity (whole state is phases).
using PhaseExtractor = std::function<void(const std::vector<double>& y, std::vector<double>& phases)>;

/// Optional extra per-sample observables appended to SimulationTrace::aux.
using AuxExtractor = std::function<std::vector<double>(const std::vector<double>& y)>;

/// Classical 4th-order Runge-Kutta with a fixed step. Records every
/// record_every-th step, always including t = 0 and the final state.
[[nodiscard]] SimulationTrace integrate_rk4(const OdeSystem& rhs, std::vector<double> initial_state,
                                            const IntegrationConfig& config,
                                            const PhaseExtractor& phase_extractor = {},
                                            const AuxExtractor& aux_extractor = {});

/// Drift callback for the stochastic stepper; diffusion is a single amplitude
/// applied per oscillator with independent standard normal increments.
using SdeDrift = std::function<void(const std::vector<double>& y, std::vector<double>& drift, double t)>;

/// Euler-Maruyama: theta(t+dt) = theta + drift dt + sqrt(dt) * diffusion * xi.
/// Deterministic under config.seed.
[[nodiscard]] SimulationTrace integrate_euler_maruyama(const SdeDrift& drift, double diffusion,
                                                       std::vector<double> initial_state,
                                                       const IntegrationConfig& config);

}  // namespace ksync
