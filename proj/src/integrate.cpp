#include "ksync/integrate.hpp"

#include <cmath>

#include "ksync/rng.hpp"

namespace ksync {

namespace {

constexpr double kDivergenceBound = 1e12;

bool state_ok(const std::vector<double>& y) {
    for (const double v : y) {
        if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) return false;
    }
    return true;
}

void extract_phases(const PhaseExtractor& extractor, const std::vector<double>& y,
                    std::vector<double>& phases) {
    if (extractor) {
        extractor(y, phases);
    } else {
        phases = y;
    }
}

void record_sample(SimulationTrace& trace, const PhaseExtractor& phase_extractor,
                   const AuxExtractor& aux_extractor, const std::vector<double>& y, double t) {
    std::vector<double> phases;
    extract_phases(phase_extractor, y, phases);
    trace.order_parameters.push_back(order_parameter(phases));
    trace.phase_snapshots.push_back(std::move(phases));
    trace.times.push_back(t);
    if (aux_extractor) trace.aux.push_back(aux_extractor(y));
}

}  // namespace

void IntegrationConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
    if (!(t_end >= dt)) throw std::invalid_argument("t_end must be >= dt");
    if (record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

std::size_t IntegrationConfig::steps() const {
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

SimulationTrace integrate_rk4(const OdeSystem& rhs, std::vector<double> initial_state,
                              const IntegrationConfig& config, const PhaseExtractor& phase_extractor,
                              const AuxExtractor& aux_extractor) {
    config.validate();
    const std::size_t n = initial_state.size();
    const std::size_t steps = config.steps();
    const double dt = config.dt;

    SimulationTrace trace;
    trace.times.reserve(steps / config.record_every + 2);

    std::vector<double> y = std::move(initial_state);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);

    if (!state_ok(y)) throw DivergenceError(0.0, "initial state is not finite");
    record_sample(trace, phase_extractor, aux_extractor, y, 0.0);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * dt;

        rhs(y, k1, t);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
        rhs(tmp, k2, t + 0.5 * dt);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
        rhs(tmp, k3, t + 0.5 * dt);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
        rhs(tmp, k4, t + dt);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }

        const double t_next = static_cast<double>(step + 1) * dt;
        if (!state_ok(y)) {
            throw DivergenceError(t, "state diverged at t = " + std::to_string(t_next) +
                                         "; last good time t = " + std::to_string(t));
        }
        if ((step + 1) % config.record_every == 0 || step + 1 == steps) {
            record_sample(trace, phase_extractor, aux_extractor, y, t_next);
        }
    }
    return trace;
}

SimulationTrace integrate_euler_maruyama(const SdeDrift& drift, double diffusion,
                                         std::vector<double> initial_state,
                                         const IntegrationConfig& config) {
    config.validate();
    if (!(diffusion >= 0.0)) throw std::invalid_argument("diffusion amplitude must be >= 0");
    const std::size_t n = initial_state.size();
    const std::size_t steps = config.steps();
    const double dt = config.dt;
    const double noise_scale = diffusion * std::sqrt(dt);

    Rng rng(config.seed);
    SimulationTrace trace;
    std::vector<double> y = std::move(initial_state);
    std::vector<double> d(n);

    if (!state_ok(y)) throw DivergenceError(0.0, "initial state is not finite");
    record_sample(trace, {}, {}, y, 0.0);

    for (std::size_t step = 0; step < steps; ++step) {
        const double t = static_cast<double>(step) * dt;
        drift(y, d, t);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += d[i] * dt;
            if (noise_scale > 0.0) y[i] += noise_scale * rng.normal();
        }
        const double t_next = static_cast<double>(step + 1) * dt;
        if (!state_ok(y)) {
            throw DivergenceError(t, "state diverged at t = " + std::to_string(t_next) +
                                         "; last good time t = " + std::to_string(t));
        }
        if ((step + 1) % config.record_every == 0 || step + 1 == steps) {
            record_sample(trace, {}, {}, y, t_next);
        }
    }
    return trace;
}

}  // namespace ksync
