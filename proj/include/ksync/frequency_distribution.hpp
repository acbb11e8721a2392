#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ksync {

enum class DistributionKind { Logistic, Lorentzian, Gaussian, Delta };

[[nodiscard]] std::string to_string(DistributionKind kind);
[[nodiscard]] DistributionKind distribution_kind_from_string(const std::string& name);

/// Parametric frequency density g(omega), unimodal and symmetric about its
/// mean. `width` is the scale parameter of each family (logistic scale,
/// Cauchy half-width, normal standard deviation); Delta ignores it.
struct FrequencyDistribution {
    DistributionKind kind = DistributionKind::Gaussian;
    double width = 1.0;
    double mean = 0.0;

    static FrequencyDistribution logistic(double width, double mean = 0.0);
    static FrequencyDistribution lorentzian(double width, double mean = 0.0);
    static FrequencyDistribution gaussian(double width, double mean = 0.0);
    static FrequencyDistribution delta(double mean = 0.0);

    /// Throws std::invalid_argument on a non-positive width (except Delta).
    void validate() const;

    /// Density at omega. Undefined for Delta (throws).
    [[nodiscard]] double density(double omega) const;

    /// Peak density g(0). Requires mean == 0; Delta is rejected (unbounded).
    [[nodiscard]] double density_at_zero() const;

    /// Analytic g''(0). Requires mean == 0; Delta is rejected.
    [[nodiscard]] double second_derivative_at_zero() const;

    /// Inverse CDF at u in (0,1) (Gaussian handled by sampling, not here).
    [[nodiscard]] double quantile(double u) const;
};

/// Draws n frequencies (inverse-CDF for Logistic/Lorentzian, Box-Muller for
/// Gaussian), then shifts the sample so its empirical mean equals dist.mean
/// exactly. Deterministic for a fixed seed.
[[nodiscard]] std::vector<double> sample_frequencies(const FrequencyDistribution& dist, std::size_t n,
                                                     std::uint64_t seed);

/// Quadrature of the density over the whole real line via a tangent
/// substitution; used by normalization checks.
[[nodiscard]] double integrate_density(const FrequencyDistribution& dist, std::size_t points = 1 << 14);

}  // namespace ksync
