#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ksync/jj/junction_array.hpp"

namespace ksync::jj {

/// Per-junction coefficients of the averaged phase model
///   dpsi_j/dtau~ = 1 + (K_j/N) sum_k A_k sin(psi_j - psi_k - zeta_j).
struct ReducedModel {
    std::vector<double> K;        ///< canonical coupling, first-harmonic response route
    std::vector<double> A;        ///< drive amplitudes I_k rho_k (1 - a_k^2 + a_k sqrt(a_k^2-1))
    std::vector<double> zeta;     ///< response phase beta_1j in (-pi, pi]
    std::vector<double> K_printed;  ///< literal textbook variant of K_j; reported only, never integrated
    std::vector<double> rate;     ///< d tau~_j / d tau~_ref, ~1 for near-identical junctions
    std::optional<double> identical_K;  ///< effective scalar coupling when all junctions are equal

    [[nodiscard]] std::size_t size() const { return K.size(); }
};

/// Orientation of the averaged coupling term when the model is integrated:
/// carrying out the cycle average gives
///   <dpsi_j/dtau~> = 1 - (K_j/N) sum_k A_k sin(psi_j - psi_k - zeta_j)
/// with K_j > 0, i.e. the written form enters the dynamics with a minus sign.
/// Validated against the full circuit (weak-coupling agreement test).
constexpr double kAveragedCouplingOrientation = -1.0;

/// Number of Fourier harmonics kept available by the reduction machinery.
constexpr std::size_t kMaxHarmonics = 32;

/// Builds the averaged-model coefficients for the array. K uses the
/// first-harmonic response denominator; the printed variant with the squared
/// detuning is emitted alongside for comparison.
[[nodiscard]] ReducedModel reduced_coefficients(const JunctionArraySpec& spec);

/// Effective scalar coupling of an array of equal junctions,
/// K = epsilon (delta I_c rho) B_1 / (2 sqrt(alpha^2 - 1)). Rejects arrays
/// whose junctions differ by more than 1e-12 relative tolerance.
[[nodiscard]] double identical_coupling(const JunctionArraySpec& spec);

/// Verbatim averaged drift dpsi_j/dtau~ = 1 + (K_j/N) sum_k A_k sin(psi_j - psi_k - zeta_j)
/// (the sum runs over all k including k = j). O(N) via harmonic sums.
void reduced_drift(std::span<const double> psi, const ReducedModel& model, std::span<double> out);
[[nodiscard]] std::vector<double> reduced_drift(std::span<const double> psi, const ReducedModel& model);

/// Integrable form of the averaged model in the shared reference time:
/// dpsi_j/dtau~_ref = rate_j (1 + orientation * coupling_scale * coupling_j).
class ReducedSystem {
public:
    ReducedSystem(ReducedModel model, double coupling_scale = 1.0,
                  double orientation = kAveragedCouplingOrientation);

    /// Identical-junction variant dpsi_j/dtau~ = 1 + (K/N) sum_k sin(psi_j - psi_k - beta_1).
    static ReducedSystem identical(const JunctionArraySpec& spec, double coupling_scale = 1.0,
                                   double orientation = kAveragedCouplingOrientation);

    void operator()(const std::vector<double>& psi, std::vector<double>& dpsi, double t) const;

    [[nodiscard]] const ReducedModel& model() const { return model_; }

private:
    ReducedModel model_;
    double coupling_scale_;
    double orientation_;
};

}  // namespace ksync::jj
