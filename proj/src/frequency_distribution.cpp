#include "ksync/frequency_distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ksync/rng.hpp"

namespace ksync {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtTwoPi = 2.506628274631000502415765284811045253;
}  // namespace

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::Logistic: return "logistic";
        case DistributionKind::Lorentzian: return "lorentzian";
        case DistributionKind::Gaussian: return "gaussian";
        case DistributionKind::Delta: return "delta";
    }
    return "unknown";
}

DistributionKind distribution_kind_from_string(const std::string& name) {
    if (name == "logistic") return DistributionKind::Logistic;
    if (name == "lorentzian") return DistributionKind::Lorentzian;
    if (name == "gaussian") return DistributionKind::Gaussian;
    if (name == "delta") return DistributionKind::Delta;
    throw std::invalid_argument("unknown distribution kind: '" + name + "'");
}

FrequencyDistribution FrequencyDistribution::logistic(double width, double mean) {
    FrequencyDistribution d{DistributionKind::Logistic, width, mean};
    d.validate();
    return d;
}

FrequencyDistribution FrequencyDistribution::lorentzian(double width, double mean) {
    FrequencyDistribution d{DistributionKind::Lorentzian, width, mean};
    d.validate();
    return d;
}

FrequencyDistribution FrequencyDistribution::gaussian(double width, double mean) {
    FrequencyDistribution d{DistributionKind::Gaussian, width, mean};
    d.validate();
    return d;
}

FrequencyDistribution FrequencyDistribution::delta(double mean) {
    return FrequencyDistribution{DistributionKind::Delta, 0.0, mean};
}

void FrequencyDistribution::validate() const {
    if (kind == DistributionKind::Delta) return;
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw std::invalid_argument("distribution width must be positive, got " + std::to_string(width));
    }
    if (!std::isfinite(mean)) throw std::invalid_argument("distribution mean must be finite");
}

double FrequencyDistribution::density(double omega) const {
    validate();
    const double x = omega - mean;
    switch (kind) {
        case DistributionKind::Logistic: {
            // exp(-x/w) / (w (1 + exp(-x/w))^2), evaluated via sech^2 for
            // symmetry and to avoid overflow in either tail.
            const double s = 1.0 / std::cosh(x / (2.0 * width));
            return s * s / (4.0 * width);
        }
        case DistributionKind::Lorentzian:
            // Normalized Cauchy: width / (pi (x^2 + width^2)).
            return width / (kPi * (x * x + width * width));
        case DistributionKind::Gaussian:
            return std::exp(-0.5 * x * x / (width * width)) / (width * kSqrtTwoPi);
        case DistributionKind::Delta:
            break;
    }
    throw std::invalid_argument("density is undefined for the Delta distribution");
}

double FrequencyDistribution::density_at_zero() const {
    validate();
    if (kind == DistributionKind::Delta) {
        throw std::invalid_argument("g(0) is unbounded for the Delta distribution");
    }
    if (mean != 0.0) throw std::domain_error("density_at_zero requires a zero-mean distribution");
    switch (kind) {
        case DistributionKind::Logistic: return 1.0 / (4.0 * width);
        case DistributionKind::Lorentzian: return 1.0 / (kPi * width);
        case DistributionKind::Gaussian: return 1.0 / (width * kSqrtTwoPi);
        case DistributionKind::Delta: break;
    }
    throw std::logic_error("unreachable");
}

double FrequencyDistribution::second_derivative_at_zero() const {
    validate();
    if (kind == DistributionKind::Delta) {
        throw std::invalid_argument("g''(0) is undefined for the Delta distribution");
    }
    if (mean != 0.0) throw std::domain_error("second_derivative_at_zero requires a zero-mean distribution");
    switch (kind) {
        case DistributionKind::Logistic: return -1.0 / (8.0 * width * width * width);
        case DistributionKind::Lorentzian: return -2.0 / (kPi * width * width * width);
        case DistributionKind::Gaussian: return -1.0 / (width * width * width * kSqrtTwoPi);
        case DistributionKind::Delta: break;
    }
    throw std::logic_error("unreachable");
}

double FrequencyDistribution::quantile(double u) const {
    validate();
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile argument must lie in (0,1)");
    switch (kind) {
        case DistributionKind::Logistic: return mean + width * std::log(u / (1.0 - u));
        case DistributionKind::Lorentzian: return mean + width * std::tan(kPi * (u - 0.5));
        case DistributionKind::Delta: return mean;
        case DistributionKind::Gaussian:
            throw std::invalid_argument("Gaussian sampling uses normal deviates, not the quantile");
    }
    throw std::logic_error("unreachable");
}

std::vector<double> sample_frequencies(const FrequencyDistribution& dist, std::size_t n, std::uint64_t seed) {
    dist.validate();
    if (n == 0) throw std::invalid_argument("sample_frequencies requires n >= 1");

    std::vector<double> omega(n);
    if (dist.kind == DistributionKind::Delta) {
        for (auto& w : omega) w = dist.mean;
        return omega;
    }

    Rng rng(seed);
    if (dist.kind == DistributionKind::Gaussian) {
        for (auto& w : omega) w = dist.mean + dist.width * rng.normal();
    } else {
        for (auto& w : omega) {
            double u = rng.uniform01();
            while (u <= 0.0) u = rng.uniform01();
            w = dist.quantile(u);
        }
    }

    // Re-center so the empirical mean matches the target mean exactly.
    const double sample_mean = std::accumulate(omega.begin(), omega.end(), 0.0) / static_cast<double>(n);
    const double shift = dist.mean - sample_mean;
    for (auto& w : omega) w += shift;
    return omega;
}

double integrate_density(const FrequencyDistribution& dist, std::size_t points) {
    dist.validate();
    if (dist.kind == DistributionKind::Delta) {
        throw std::invalid_argument("Delta distribution has no density to integrate");
    }
    // omega = mean + width tan(u) maps (-pi/2, pi/2) onto the real line;
    // midpoint rule keeps clear of the endpoint poles.
    const double half_pi = 0.5 * kPi;
    const double h = kPi / static_cast<double>(points);
    double sum = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double u = -half_pi + (static_cast<double>(i) + 0.5) * h;
        const double t = std::tan(u);
        const double jacobian = dist.width * (1.0 + t * t);
        sum += dist.density(dist.mean + dist.width * t) * jacobian;
    }
    return sum * h;
}

}  // namespace ksync
