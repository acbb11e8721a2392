#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ksync/coupling.hpp"
#include "ksync/frequency_distribution.hpp"
#include "ksync/order_parameter.hpp"

namespace ksync {

/// Phases, natural frequencies and coupling of one oscillator ensemble.
/// Phases are stored unwrapped (cumulative); wrapping happens only inside
/// trigonometric evaluations, so winding numbers stay available for running
/// frequency estimates.
struct OscillatorEnsemble {
    std::vector<double> phases;
    std::vector<double> natural_frequencies;
    CouplingSpec coupling = MeanFieldCoupling{};
    NoiseSpec noise{};

    [[nodiscard]] std::size_t size() const { return phases.size(); }
    void validate() const;
};

/// Critical coupling Kc = 2 / (pi g(0)) for the mean-field transition.
[[nodiscard]] double critical_coupling(const FrequencyDistribution& dist);

/// Mean-field drift: dtheta_j/dt = omega_j + K R sin(psi - theta_j),
/// computed through one order-parameter evaluation (O(N)). Equals the
/// attractive pairwise sum (K/N) sum_i sin(theta_i - theta_j).
void drift_mean_field(std::span<const double> phases, std::span<const double> natural_frequencies,
                      double K, std::span<double> out);
[[nodiscard]] std::vector<double> drift_mean_field(std::span<const double> phases,
                                                   std::span<const double> natural_frequencies, double K);

/// Network drift: dtheta_j/dt = omega_j + sum_i K(j,i) A(j,i) sin(theta_i - theta_j).
void drift_network(std::span<const double> phases, std::span<const double> natural_frequencies,
                   const NetworkCoupling& coupling, std::span<double> out);
[[nodiscard]] std::vector<double> drift_network(std::span<const double> phases,
                                                std::span<const double> natural_frequencies,
                                                const NetworkCoupling& coupling);

struct NoisyDrift {
    std::vector<double> drift;
    double diffusion = 0.0;  ///< sqrt(gamma), per-oscillator white-noise amplitude
};

/// Stochastic-model drift sigma * omega_j + mean-field coupling, plus the
/// diffusion amplitude handed to the Euler-Maruyama stepper.
[[nodiscard]] NoisyDrift noisy_drift_and_diffusion(std::span<const double> phases,
                                                   std::span<const double> natural_frequencies, double K,
                                                   const NoiseSpec& noise);

/// Near-onset scaling law R ~ sqrt(-8 (K - Kc) / (Kc^3 g''(0))).
/// Returns 0 at K == Kc; throws std::domain_error for K < Kc and
/// std::invalid_argument when g''(0) >= 0 is not available.
[[nodiscard]] double scaling_prediction(double K, const FrequencyDistribution& dist);

struct LockPartition {
    std::vector<std::size_t> locked;
    std::vector<std::size_t> drifting;
};

/// Exhaustive, disjoint partition: oscillator j is locked iff |omega_j| <= K R.
[[nodiscard]] LockPartition classify_locked(std::span<const double> natural_frequencies, double K,
                                            double R);

}  // namespace ksync
