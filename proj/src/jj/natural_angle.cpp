#include "ksync/jj/natural_angle.hpp"

#include <cmath>
#include <stdexcept>

namespace ksync::jj {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_alpha(double alpha) {
    if (!(alpha > 1.0)) {
        throw std::domain_error("natural-angle transform requires alpha > 1");
    }
}

/// 2 (atan(scale * tan(x)) + k pi) where k is the branch index of x: the
/// piecewise-atan images are stitched into one increasing function of x.
double scaled_tan_map(double x, double scale) {
    const double branch = std::floor((x + 0.5 * kPi) / kPi);
    const double x0 = x - branch * kPi;  // in [-pi/2, pi/2)
    double core;
    if (std::abs(std::abs(x0) - 0.5 * kPi) < 1e-15) {
        core = (x0 > 0.0) ? 0.5 * kPi : -0.5 * kPi;
    } else {
        core = std::atan(scale * std::tan(x0));
    }
    return 2.0 * (core + branch * kPi);
}

}  // namespace

double natural_frequency(double alpha) {
    check_alpha(alpha);
    return std::sqrt(alpha * alpha - 1.0);
}

double psi_of_phi(double phi, double alpha) {
    check_alpha(alpha);
    const double scale = std::sqrt((alpha - 1.0) / (alpha + 1.0));
    return scaled_tan_map(0.5 * phi + 0.25 * kPi, scale);
}

double phi_of_psi(double psi, double alpha) {
    check_alpha(alpha);
    const double scale = std::sqrt((alpha + 1.0) / (alpha - 1.0));
    return scaled_tan_map(0.5 * psi, scale) - 0.5 * kPi;
}

double sin_phi_of_psi(double psi, double alpha) {
    check_alpha(alpha);
    // Denominator alpha - cos(psi) >= alpha - 1 > 0.
    return alpha - (alpha * alpha - 1.0) / (alpha - std::cos(psi));
}

}  // namespace ksync::jj
