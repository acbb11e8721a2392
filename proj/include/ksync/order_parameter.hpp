#pragma once

#include <span>

namespace ksync {

/// Centroid of the phases on the unit circle: R e^{i psi} = (1/N) sum e^{i theta_j}.
/// R = 1 is full coherence, R = 0 incoherence. psi is reported in (-pi, pi]
/// and set to 0 by convention when R < 1e-12 (argument is ill-defined).
struct OrderParameter {
    double R = 0.0;
    double psi = 0.0;
};

[[nodiscard]] OrderParameter order_parameter(std::span<const double> phases);

}  // namespace ksync
