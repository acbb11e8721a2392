#include "ksync/jj/junction_array.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ksync/rng.hpp"

namespace ksync::jj {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

void Junction::validate() const {
    if (!(critical_current > 0.0)) throw std::invalid_argument("junction critical current must be > 0");
    if (!(resistance > 0.0)) throw std::invalid_argument("junction resistance must be > 0");
}

void LoadCircuit::validate() const {
    if (!(inductance > 0.0)) throw std::invalid_argument("load inductance must be > 0");
    if (!(resistance > 0.0)) throw std::invalid_argument("load resistance must be > 0");
    if (!(capacitance > 0.0)) throw std::invalid_argument("load capacitance must be > 0");
}

ScaledLoad scaled_load(const LoadCircuit& load, std::size_t n) {
    load.validate();
    if (n == 0) throw std::invalid_argument("scaled_load requires n >= 1");
    const double nn = static_cast<double>(n);
    return ScaledLoad{load.inductance / nn, load.resistance / nn, nn * load.capacitance};
}

double JunctionArraySpec::mean_critical_current() const {
    double sum = 0.0;
    for (const auto& j : junctions) sum += j.critical_current;
    return sum / static_cast<double>(junctions.size());
}

double JunctionArraySpec::mean_resistance() const {
    double sum = 0.0;
    for (const auto& j : junctions) sum += j.resistance;
    return sum / static_cast<double>(junctions.size());
}

double JunctionArraySpec::total_junction_resistance() const {
    double sum = 0.0;
    for (const auto& j : junctions) sum += j.resistance;
    return sum;
}

void JunctionArraySpec::validate() const {
    if (junctions.empty()) throw std::invalid_argument("junction array must contain at least one junction");
    load.validate();
    if (!(flux_quantum > 0.0)) throw std::invalid_argument("flux quantum must be > 0");
    for (const auto& j : junctions) {
        j.validate();
        if (!(bias_current > j.critical_current)) {
            throw std::invalid_argument(
                "bias current must exceed every junction critical current (running regime)");
        }
    }
}

DimensionlessJunction dimensionless_coeffs(const JunctionArraySpec& spec, std::size_t j) {
    spec.validate();
    if (j >= spec.size()) throw std::invalid_argument("junction index out of range");
    const Junction& junction = spec.junctions[j];

    DimensionlessJunction d;
    d.alpha = spec.bias_current / junction.critical_current;
    if (!(d.alpha > 1.0)) {
        throw std::invalid_argument("alpha_j = I_b/I_j must exceed 1, got " + std::to_string(d.alpha));
    }

    const ScaledLoad sl = scaled_load(spec.load, spec.size());
    const double t_j = spec.flux_quantum / (kTwoPi * junction.resistance * junction.critical_current);
    const double mean_rho = spec.total_junction_resistance() / static_cast<double>(spec.size());

    d.gamma = t_j * (sl.r + mean_rho) / sl.l;
    d.omega0_sq = t_j * t_j / (sl.l * sl.c);
    d.delta = t_j / sl.l;
    d.epsilon = 1.0 / junction.critical_current;
    return d;
}

JunctionArraySpec make_identical_array(std::size_t n, const Junction& junction, const LoadCircuit& load,
                                       double bias_current) {
    if (n == 0) throw std::invalid_argument("array size must be >= 1");
    JunctionArraySpec spec;
    spec.junctions.assign(n, junction);
    spec.load = load;
    spec.bias_current = bias_current;
    spec.validate();
    return spec;
}

JunctionArraySpec make_spread_array(std::size_t n, const Junction& mean_junction, double ic_spread,
                                    double rho_spread, const LoadCircuit& load, double bias_current,
                                    std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("array size must be >= 1");
    if (ic_spread < 0.0 || rho_spread < 0.0 || ic_spread >= 1.0 || rho_spread >= 1.0) {
        throw std::invalid_argument("relative spreads must lie in [0, 1)");
    }
    JunctionArraySpec spec;
    spec.junctions.resize(n);
    Rng rng(seed);
    for (auto& j : spec.junctions) {
        j.critical_current = mean_junction.critical_current * (1.0 + ic_spread * rng.uniform(-1.0, 1.0));
        j.resistance = mean_junction.resistance * (1.0 + rho_spread * rng.uniform(-1.0, 1.0));
    }
    spec.load = load;
    spec.bias_current = bias_current;
    spec.validate();
    return spec;
}

}  // namespace ksync::jj
