#pragma once

namespace ksync::jj {

/// Dimensionless running frequency sqrt(alpha^2 - 1) of an overbiased
/// junction. Throws std::domain_error for alpha <= 1 (no running solution).
[[nodiscard]] double natural_frequency(double alpha);

/// Natural angle psi(phi) = 2 atan(sqrt((a-1)/(a+1)) tan(phi/2 + pi/4)),
/// continued across the tangent singularities by branch tracking so the map
/// is a continuous strictly increasing bijection on the whole real line
/// (psi(phi + 2 pi) = psi(phi) + 2 pi).
[[nodiscard]] double psi_of_phi(double phi, double alpha);

/// Inverse map phi(psi) = 2 atan(sqrt((a+1)/(a-1)) tan(psi/2)) - pi/2,
/// branch-tracked the same way.
[[nodiscard]] double phi_of_psi(double psi, double alpha);

/// sin(phi(psi)) in closed form: (1 - a cos psi)/(a - cos psi).
[[nodiscard]] double sin_phi_of_psi(double psi, double alpha);

}  // namespace ksync::jj
