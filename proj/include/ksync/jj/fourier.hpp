#pragma once

#include <cstddef>
#include <vector>

namespace ksync::jj {

/// Default grid of the periodic trapezoid rule used for the cosine
/// coefficients; spectrally accurate for the smooth integrand.
constexpr std::size_t kDefaultQuadraturePoints = 512;

/// Cosine coefficient of sin(phi(psi)):
///   A_0 = (1/pi) int_{-pi}^{pi} sin_phi_of_psi dpsi,
///   A_n = (1/pi) int_{-pi}^{pi} sin_phi_of_psi cos(n psi) dpsi.
/// Rejects quadrature_points < 16 (accuracy floor).
[[nodiscard]] double fourier_A(double alpha, std::size_t n,
                               std::size_t quadrature_points = kDefaultQuadraturePoints);

/// Coefficients A_0 .. A_{n_max} in one quadrature sweep.
[[nodiscard]] std::vector<double> fourier_series(double alpha, std::size_t n_max,
                                                 std::size_t quadrature_points = kDefaultQuadraturePoints);

/// Partial-sum reconstruction A_0/2 + sum_{n>=1} A_n cos(n psi) (the DC
/// coefficient enters with the standard 1/2 weight).
[[nodiscard]] double reconstruct_sin_phi(double psi, const std::vector<double>& coefficients);

/// Amplitude and phase of the steady response of the driven load equation:
///   B_n = |A_n| / sqrt(n^2 gamma^2 (a^2-1) + (n^2 (a^2-1) - w0^2)^2),
///   beta_n = atan2(n gamma sqrt(a^2-1), n^2 (a^2-1) - w0^2) in (-pi, pi].
struct ResponseCoefficients {
    double B = 0.0;
    double beta = 0.0;
};

/// Throws std::domain_error on an exactly singular response (gamma = 0 at
/// resonance n^2 (a^2-1) = w0^2).
[[nodiscard]] ResponseCoefficients response_B_beta(double alpha, double gamma, double omega0_sq,
                                                   std::size_t n, double A_n);

}  // namespace ksync::jj
