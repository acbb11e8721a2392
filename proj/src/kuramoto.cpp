#include "ksync/kuramoto.hpp"

#include <cmath>
#include <stdexcept>

namespace ksync {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void check_same_size(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || a != c) throw std::invalid_argument("phase/frequency/output lengths must match");
    if (a == 0) throw std::invalid_argument("ensemble must be nonempty");
}
}  // namespace

void OscillatorEnsemble::validate() const {
    if (phases.empty()) throw std::invalid_argument("ensemble must contain at least one oscillator");
    if (natural_frequencies.size() != phases.size()) {
        throw std::invalid_argument("phases and natural_frequencies must have the same length");
    }
    noise.validate();
    std::visit([&](const auto& c) { c.validate(); }, coupling);
    if (const auto* net = std::get_if<NetworkCoupling>(&coupling)) {
        if (net->size() != phases.size()) {
            throw std::invalid_argument("network coupling size must match the ensemble size");
        }
    }
}

double critical_coupling(const FrequencyDistribution& dist) {
    return 2.0 / (kPi * dist.density_at_zero());
}

void drift_mean_field(std::span<const double> phases, std::span<const double> natural_frequencies,
                      double K, std::span<double> out) {
    check_same_size(phases.size(), natural_frequencies.size(), out.size());
    if (!(K >= 0.0)) throw std::invalid_argument("mean-field K must be >= 0");

    // One pass accumulates the order-parameter components R cos(psi), R sin(psi);
    // K R sin(psi - theta_j) then expands to K (S cos theta_j - C sin theta_j).
    const std::size_t n = phases.size();
    double c_sum = 0.0;
    double s_sum = 0.0;
    // Cache per-oscillator trig for the second pass.
    thread_local std::vector<double> cos_theta;
    thread_local std::vector<double> sin_theta;
    cos_theta.resize(n);
    sin_theta.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        cos_theta[j] = std::cos(phases[j]);
        sin_theta[j] = std::sin(phases[j]);
        c_sum += cos_theta[j];
        s_sum += sin_theta[j];
    }
    const double c_mean = c_sum / static_cast<double>(n);
    const double s_mean = s_sum / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = natural_frequencies[j] + K * (s_mean * cos_theta[j] - c_mean * sin_theta[j]);
    }
}

std::vector<double> drift_mean_field(std::span<const double> phases,
                                     std::span<const double> natural_frequencies, double K) {
    std::vector<double> out(phases.size());
    drift_mean_field(phases, natural_frequencies, K, out);
    return out;
}

void drift_network(std::span<const double> phases, std::span<const double> natural_frequencies,
                   const NetworkCoupling& coupling, std::span<double> out) {
    check_same_size(phases.size(), natural_frequencies.size(), out.size());
    const std::size_t n = phases.size();
    if (coupling.size() != n) throw std::invalid_argument("network coupling size must match phases");
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!coupling.connected(j, i)) continue;
            acc += coupling.strength(j, i) * std::sin(phases[i] - phases[j]);
        }
        out[j] = natural_frequencies[j] + acc;
    }
}

std::vector<double> drift_network(std::span<const double> phases,
                                  std::span<const double> natural_frequencies,
                                  const NetworkCoupling& coupling) {
    std::vector<double> out(phases.size());
    drift_network(phases, natural_frequencies, coupling, out);
    return out;
}

NoisyDrift noisy_drift_and_diffusion(std::span<const double> phases,
                                     std::span<const double> natural_frequencies, double K,
                                     const NoiseSpec& noise) {
    noise.validate();
    NoisyDrift result;
    result.drift.resize(phases.size());
    // sigma-scaled frequencies plus the usual mean-field term.
    thread_local std::vector<double> scaled;
    scaled.assign(natural_frequencies.begin(), natural_frequencies.end());
    for (auto& w : scaled) w *= noise.sigma;
    drift_mean_field(phases, scaled, K, result.drift);
    result.diffusion = std::sqrt(noise.gamma);
    return result;
}

double scaling_prediction(double K, const FrequencyDistribution& dist) {
    const double kc = critical_coupling(dist);
    if (K < kc) throw std::domain_error("scaling prediction applies only for K >= Kc");
    const double g2 = dist.second_derivative_at_zero();
    if (g2 >= 0.0) throw std::invalid_argument("scaling law requires g''(0) < 0");
    return std::sqrt(-8.0 * (K - kc) / (kc * kc * kc * g2));
}

LockPartition classify_locked(std::span<const double> natural_frequencies, double K, double R) {
    if (!(K >= 0.0)) throw std::invalid_argument("K must be >= 0");
    if (!(R >= 0.0 && R <= 1.0)) throw std::invalid_argument("R must lie in [0,1]");
    LockPartition part;
    const double bound = K * R;
    for (std::size_t j = 0; j < natural_frequencies.size(); ++j) {
        if (std::abs(natural_frequencies[j]) <= bound) {
            part.locked.push_back(j);
        } else {
            part.drifting.push_back(j);
        }
    }
    return part;
}

}  // namespace ksync
