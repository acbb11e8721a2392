#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ksync/frequency_distribution.hpp"
#include "ksync/integrate.hpp"

namespace ksync {

/// Post-processed synchronization summary of one trace.
struct SyncReport {
    double final_R = 0.0;                       ///< tail-mean order parameter
    bool settled = false;                       ///< R >= threshold over the whole tail window
    std::optional<double> settling_time;        ///< first time after which R never drops below threshold
    double frequency_band_width = 0.0;          ///< max - min running frequency over the tail window
    std::optional<double> locked_fraction;      ///< filled by the mode-specific pipeline
    double r_tail_spread = 0.0;                 ///< max - min of R over the tail window
};

/// Default analysis knobs: the order parameter saturates well before the run
/// end in the synchronized regime, so a late 25% window and a 0.9 threshold
/// classify it robustly.
constexpr double kDefaultTailFraction = 0.25;
constexpr double kDefaultRThreshold = 0.9;

[[nodiscard]] SyncReport analyze(const SimulationTrace& trace, double tail_fraction = kDefaultTailFraction,
                                 double R_threshold = kDefaultRThreshold);

/// Per-oscillator running frequency (theta(t_end) - theta(t_end - w)) / w over
/// the tail window.
[[nodiscard]] std::vector<double> running_frequencies(const SimulationTrace& trace,
                                                      double tail_fraction = kDefaultTailFraction);

/// Fraction of oscillators with |omega_j| <= K * Rbar, Rbar the tail-mean R.
[[nodiscard]] double locked_fraction(const SimulationTrace& trace,
                                     std::span<const double> natural_frequencies, double K,
                                     double tail_fraction = kDefaultTailFraction);

/// Fraction of oscillators whose running frequency lies within the majority
/// band around the median: |nu_j - median| <= max(rel_tol |median|, abs_tol).
/// Used for junction-array runs, where no scalar (K, R) pair applies.
[[nodiscard]] double band_locked_fraction(std::span<const double> frequencies, double rel_tol = 0.05,
                                          double abs_tol = 0.0);

/// Result of a coupling-strength sweep.
struct SweepResult {
    std::vector<double> K_values;
    std::vector<double> steady_R;
    std::optional<double> Kc_empirical;
    std::optional<double> beta_fit;
};

/// Specification of a mean-field coupling sweep over one sampled ensemble.
struct SweepSpec {
    std::size_t n = 0;
    FrequencyDistribution distribution;
    std::vector<double> K_values;               ///< strictly increasing, >= 8 points
    IntegrationConfig integration;
    std::uint64_t seed = 0;                     ///< frequencies/phases derive sub-streams from this
    double tail_fraction = kDefaultTailFraction;
    double onset_offset = 0.2;                  ///< steady_R rise above baseline that marks onset
    std::size_t max_threads = 0;                ///< 0: use KURAMOTO_SYNC_THREADS or hardware
};

/// Runs one simulation per grid point (same frequency sample and initial
/// phases for every K), tail-averages R, locates the onset by linear
/// interpolation and fits the critical exponent over K in (Kc, 1.5 Kc].
[[nodiscard]] SweepResult sweep_coupling(const SweepSpec& spec);

/// Spearman rank correlation of two equal-length sequences.
[[nodiscard]] double spearman_rank_correlation(std::span<const double> x, std::span<const double> y);

/// Worker count honoring the KURAMOTO_SYNC_THREADS environment variable.
[[nodiscard]] std::size_t sweep_thread_count(std::size_t requested, std::size_t tasks);

}  // namespace ksync
