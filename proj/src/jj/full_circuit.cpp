#include "ksync/jj/full_circuit.hpp"

#include <cmath>
#include <stdexcept>

#include "ksync/jj/natural_angle.hpp"

namespace ksync::jj {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

FullCircuitSystem::FullCircuitSystem(const JunctionArraySpec& spec, double coupling_scale)
    : coupling_scale_(coupling_scale) {
    spec.validate();
    if (!(coupling_scale >= 0.0)) throw std::invalid_argument("coupling scale must be >= 0");

    const std::size_t n = spec.size();
    const double mean_ic = spec.mean_critical_current();
    const double mean_rho = spec.mean_resistance();
    const double mean_alpha = spec.bias_current / mean_ic;
    if (!(mean_alpha > 1.0)) throw std::invalid_argument("mean alpha must exceed 1");

    t_ref_ = spec.flux_quantum / (kTwoPi * mean_rho * mean_ic);
    mean_omega_ = std::sqrt(mean_alpha * mean_alpha - 1.0);

    alpha_.resize(n);
    tscale_.resize(n);
    feedback_.resize(n);
    drive_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Junction& junction = spec.junctions[j];
        alpha_[j] = spec.bias_current / junction.critical_current;
        if (!(alpha_[j] > 1.0)) throw std::invalid_argument("every junction must satisfy alpha > 1");
        tscale_[j] = (junction.resistance * junction.critical_current) / (mean_rho * mean_ic);
        feedback_[j] = mean_ic / junction.critical_current;
        drive_[j] = junction.critical_current * junction.resistance;
    }

    const double total_r = spec.load.resistance + spec.total_junction_resistance();
    gamma_ref_ = t_ref_ * total_r / spec.load.inductance;
    omega0_sq_ref_ = t_ref_ * t_ref_ / (spec.load.inductance * spec.load.capacitance);
    drive_coeff_ = t_ref_ / (spec.load.inductance * mean_ic);
}

void FullCircuitSystem::operator()(const std::vector<double>& y, std::vector<double>& dydt,
                                   double /*tau*/) const {
    const std::size_t n = size();
    if (y.size() != n + 2) throw std::invalid_argument("state dimension mismatch");
    dydt.resize(n + 2);

    const double v_c = y[n];
    const double u = y[n + 1];

    double drive_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double sin_phi = std::sin(y[j]);
        drive_sum += drive_[j] * sin_phi;
        dydt[j] = tscale_[j] * (alpha_[j] - sin_phi - coupling_scale_ * feedback_[j] * u);
    }
    dydt[n] = omega0_sq_ref_ * u;
    dydt[n + 1] = -gamma_ref_ * u - v_c - drive_coeff_ * drive_sum;
}

std::vector<double> FullCircuitSystem::initial_state(const std::vector<double>& phases,
                                                     bool precharge_load) const {
    if (phases.size() != size()) throw std::invalid_argument("initial phases must match the array size");
    std::vector<double> y(phases);
    double v_c0 = 0.0;
    if (precharge_load) {
        // DC operating point: the capacitor term cancels the cycle-mean of
        // the junction drive, <sin phi> = alpha - sqrt(alpha^2 - 1).
        double dc_drive = 0.0;
        for (std::size_t j = 0; j < size(); ++j) {
            dc_drive += drive_[j] * (alpha_[j] - std::sqrt(alpha_[j] * alpha_[j] - 1.0));
        }
        v_c0 = -drive_coeff_ * dc_drive;
    }
    y.push_back(v_c0);
    y.push_back(0.0);
    return y;
}

CircuitState FullCircuitSystem::unpack(const std::vector<double>& y) const {
    if (y.size() != size() + 2) throw std::invalid_argument("state dimension mismatch");
    CircuitState state;
    state.phi.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(size()));
    state.q = y[size()] / omega0_sq_ref_;
    state.q_dot = y[size() + 1];
    return state;
}

std::vector<double> FullCircuitSystem::pack(const CircuitState& state) const {
    if (state.phi.size() != size()) throw std::invalid_argument("state dimension mismatch");
    std::vector<double> y(state.phi);
    y.push_back(state.q * omega0_sq_ref_);
    y.push_back(state.q_dot);
    return y;
}

double FullCircuitSystem::min_uncoupled_period() const {
    double min_period = 0.0;
    for (std::size_t j = 0; j < size(); ++j) {
        const double rate = tscale_[j] * std::sqrt(alpha_[j] * alpha_[j] - 1.0);
        const double period = kTwoPi / rate;
        if (j == 0 || period < min_period) min_period = period;
    }
    return min_period;
}

double FullCircuitSystem::junction_charge(const CircuitState& state, std::size_t j) const {
    if (j >= size()) throw std::invalid_argument("junction index out of range");
    // q_j = Q / t_cj = q * s_j in units of the mean critical current.
    return state.q * tscale_[j];
}

PhaseExtractor FullCircuitSystem::phase_extractor() const {
    const std::size_t n = size();
    return [n](const std::vector<double>& y, std::vector<double>& phases) {
        phases.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    };
}

AuxExtractor FullCircuitSystem::aux_extractor() const {
    const std::size_t n = size();
    return [n](const std::vector<double>& y) { return std::vector<double>{y[n], y[n + 1]}; };
}

CircuitState full_circuit_rhs(const CircuitState& state, const JunctionArraySpec& spec,
                              double coupling_scale) {
    FullCircuitSystem system(spec, coupling_scale);
    std::vector<double> dydt;
    system(system.pack(state), dydt, 0.0);
    // dydt carries (dphi, d v_c, d q_dot); unpack maps d v_c back to dq
    // through the same omega0^2 factor, i.e. dq/dtau = q_dot exactly.
    return system.unpack(dydt);
}

SimulationTrace to_natural_angle_trace(const SimulationTrace& trace, const std::vector<double>& alphas,
                                       double tau_tilde_factor) {
    if (trace.n_phases() != alphas.size()) {
        throw std::invalid_argument("alpha vector must match the trace width");
    }
    SimulationTrace out;
    out.times.reserve(trace.samples());
    out.phase_snapshots.reserve(trace.samples());
    out.order_parameters.reserve(trace.samples());
    for (std::size_t k = 0; k < trace.samples(); ++k) {
        out.times.push_back(trace.times[k] * tau_tilde_factor);
        std::vector<double> psi(alphas.size());
        for (std::size_t j = 0; j < alphas.size(); ++j) {
            psi[j] = psi_of_phi(trace.phase_snapshots[k][j], alphas[j]);
        }
        out.order_parameters.push_back(order_parameter(psi));
        out.phase_snapshots.push_back(std::move(psi));
    }
    out.aux = trace.aux;
    return out;
}

}  // namespace ksync::jj
