#include "ksync/jj/fourier.hpp"

#include <cmath>
#include <stdexcept>

#include "ksync/jj/natural_angle.hpp"

namespace ksync::jj {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void check_points(std::size_t points) {
    if (points < 16) throw std::invalid_argument("quadrature needs at least 16 points");
}
}  // namespace

double fourier_A(double alpha, std::size_t n, std::size_t quadrature_points) {
    check_points(quadrature_points);
    // Periodic trapezoid over one period == uniform sample mean times 2.
    const double h = 2.0 * kPi / static_cast<double>(quadrature_points);
    double sum = 0.0;
    for (std::size_t i = 0; i < quadrature_points; ++i) {
        const double psi = -kPi + static_cast<double>(i) * h;
        sum += sin_phi_of_psi(psi, alpha) * std::cos(static_cast<double>(n) * psi);
    }
    return sum * h / kPi;
}

std::vector<double> fourier_series(double alpha, std::size_t n_max, std::size_t quadrature_points) {
    check_points(quadrature_points);
    std::vector<double> coeffs(n_max + 1, 0.0);
    const double h = 2.0 * kPi / static_cast<double>(quadrature_points);
    for (std::size_t i = 0; i < quadrature_points; ++i) {
        const double psi = -kPi + static_cast<double>(i) * h;
        const double f = sin_phi_of_psi(psi, alpha);
        for (std::size_t n = 0; n <= n_max; ++n) {
            coeffs[n] += f * std::cos(static_cast<double>(n) * psi);
        }
    }
    for (auto& c : coeffs) c *= h / kPi;
    return coeffs;
}

double reconstruct_sin_phi(double psi, const std::vector<double>& coefficients) {
    if (coefficients.empty()) throw std::invalid_argument("empty coefficient vector");
    double value = 0.5 * coefficients[0];
    for (std::size_t n = 1; n < coefficients.size(); ++n) {
        value += coefficients[n] * std::cos(static_cast<double>(n) * psi);
    }
    return value;
}

ResponseCoefficients response_B_beta(double alpha, double gamma, double omega0_sq, std::size_t n,
                                     double A_n) {
    if (!(alpha > 1.0)) throw std::domain_error("response coefficients require alpha > 1");
    if (n == 0) throw std::invalid_argument("response coefficients are defined for n >= 1");
    const double nn = static_cast<double>(n);
    const double omega_sq = alpha * alpha - 1.0;
    const double detune = nn * nn * omega_sq - omega0_sq;
    const double damping = nn * gamma * std::sqrt(omega_sq);
    const double denom_sq = damping * damping + detune * detune;
    if (denom_sq == 0.0) {
        throw std::domain_error("singular response: undamped drive exactly at resonance");
    }
    ResponseCoefficients rc;
    rc.B = std::abs(A_n) / std::sqrt(denom_sq);
    rc.beta = std::atan2(damping, detune);
    return rc;
}

}  // namespace ksync::jj
