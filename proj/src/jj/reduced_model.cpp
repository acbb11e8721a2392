#include "ksync/jj/reduced_model.hpp"

#include <cmath>
#include <stdexcept>

#include "ksync/jj/fourier.hpp"
#include "ksync/jj/natural_angle.hpp"

namespace ksync::jj {

ReducedModel reduced_coefficients(const JunctionArraySpec& spec) {
    spec.validate();
    const std::size_t n = spec.size();
    ReducedModel model;
    model.K.resize(n);
    model.A.resize(n);
    model.zeta.resize(n);
    model.K_printed.resize(n);
    model.rate.resize(n);

    const double mean_ic = spec.mean_critical_current();
    const double mean_rho = spec.mean_resistance();
    const double mean_alpha = spec.bias_current / mean_ic;
    if (!(mean_alpha > 1.0)) throw std::invalid_argument("mean alpha must exceed 1");
    const double mean_omega = std::sqrt(mean_alpha * mean_alpha - 1.0);

    bool identical = true;
    for (std::size_t j = 0; j < n; ++j) {
        const DimensionlessJunction d = dimensionless_coeffs(spec, j);
        const double omega_sq = d.alpha * d.alpha - 1.0;
        const double omega = std::sqrt(omega_sq);

        const double detune = omega_sq - d.omega0_sq;
        const double damping = d.gamma * omega;
        model.zeta[j] = std::atan2(damping, detune);

        // Canonical K_j: first-harmonic response denominator.
        model.K[j] = d.epsilon * d.delta / (omega * std::sqrt(damping * damping + detune * detune));
        // Printed variant: squared detuning terms, kept for comparison.
        const double g2 = d.gamma * d.gamma * omega_sq * omega_sq;
        const double w2 = (d.omega0_sq - omega_sq * omega_sq) * (d.omega0_sq - omega_sq * omega_sq);
        model.K_printed[j] = d.epsilon * d.delta / (omega * std::sqrt(g2 + w2));

        const Junction& junction = spec.junctions[j];
        model.A[j] = junction.critical_current * junction.resistance *
                     (1.0 - d.alpha * d.alpha + d.alpha * omega);

        // d tau~_j / d tau~_ref = (rho_j I_j / rho_mean I_mean) * omega_j / omega_mean.
        const double tscale = (junction.resistance * junction.critical_current) / (mean_rho * mean_ic);
        model.rate[j] = tscale * omega / mean_omega;

        if (std::abs(junction.critical_current - spec.junctions[0].critical_current) >
                1e-12 * spec.junctions[0].critical_current ||
            std::abs(junction.resistance - spec.junctions[0].resistance) >
                1e-12 * spec.junctions[0].resistance) {
            identical = false;
        }
    }
    if (identical) model.identical_K = identical_coupling(spec);
    return model;
}

double identical_coupling(const JunctionArraySpec& spec) {
    spec.validate();
    const Junction& first = spec.junctions[0];
    for (const auto& j : spec.junctions) {
        if (std::abs(j.critical_current - first.critical_current) > 1e-12 * first.critical_current ||
            std::abs(j.resistance - first.resistance) > 1e-12 * first.resistance) {
            throw std::invalid_argument("identical_coupling requires an array of equal junctions");
        }
    }
    const DimensionlessJunction d = dimensionless_coeffs(spec, 0);
    const double omega = std::sqrt(d.alpha * d.alpha - 1.0);
    const double a1 = fourier_A(d.alpha, 1);
    const double b1 = response_B_beta(d.alpha, d.gamma, d.omega0_sq, 1, a1).B;
    // Drive coefficient of the charge equation for equal junctions is
    // delta * I_c * rho; together with epsilon = 1/I_c the scalar coupling is
    // rho * delta * B_1 / (2 omega).
    return first.resistance * d.delta * b1 / (2.0 * omega);
}

void reduced_drift(std::span<const double> psi, const ReducedModel& model, std::span<double> out) {
    const std::size_t n = psi.size();
    if (model.size() != n || out.size() != n) {
        throw std::invalid_argument("reduced_drift: psi/model/output lengths must match");
    }
    // sum_k A_k sin(psi_j - psi_k - zeta_j)
    //   = sin(psi_j - zeta_j) sum_k A_k cos(psi_k) - cos(psi_j - zeta_j) sum_k A_k sin(psi_k).
    double ac = 0.0;
    double as = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        ac += model.A[k] * std::cos(psi[k]);
        as += model.A[k] * std::sin(psi[k]);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double shifted = psi[j] - model.zeta[j];
        const double coupling = std::sin(shifted) * ac - std::cos(shifted) * as;
        out[j] = 1.0 + model.K[j] * inv_n * coupling;
    }
}

std::vector<double> reduced_drift(std::span<const double> psi, const ReducedModel& model) {
    std::vector<double> out(psi.size());
    reduced_drift(psi, model, out);
    return out;
}

ReducedSystem::ReducedSystem(ReducedModel model, double coupling_scale, double orientation)
    : model_(std::move(model)), coupling_scale_(coupling_scale), orientation_(orientation) {}

ReducedSystem ReducedSystem::identical(const JunctionArraySpec& spec, double coupling_scale,
                                       double orientation) {
    const double K = identical_coupling(spec);
    const DimensionlessJunction d = dimensionless_coeffs(spec, 0);
    const double omega = std::sqrt(d.alpha * d.alpha - 1.0);
    const double beta1 =
        std::atan2(d.gamma * omega, d.alpha * d.alpha - 1.0 - d.omega0_sq);

    ReducedModel model;
    const std::size_t n = spec.size();
    model.K.assign(n, K);
    model.A.assign(n, 1.0);
    model.zeta.assign(n, beta1);
    model.K_printed.assign(n, K);
    model.rate.assign(n, 1.0);
    model.identical_K = K;
    return ReducedSystem(std::move(model), coupling_scale, orientation);
}

void ReducedSystem::operator()(const std::vector<double>& psi, std::vector<double>& dpsi,
                               double /*t*/) const {
    reduced_drift(psi, model_, dpsi);
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double coupling = dpsi[j] - 1.0;
        dpsi[j] = model_.rate[j] * (1.0 + orientation_ * coupling_scale_ * coupling);
    }
}

}  // namespace ksync::jj
