#pragma once

#include <cstdint>
#include <vector>

namespace ksync::jj {

/// Superconducting flux quantum h/(2e) in webers.
constexpr double kFluxQuantum = 2.0678e-15;

/// One resistively shunted junction: critical current I_c and shunt
/// resistance rho, both SI.
struct Junction {
    double critical_current = 0.0;  ///< amperes
    double resistance = 0.0;        ///< ohms
    void validate() const;
};

/// External series load: inductance L, resistance R, capacitance C (SI).
struct LoadCircuit {
    double inductance = 0.0;
    double resistance = 0.0;
    double capacitance = 0.0;
    void validate() const;
};

/// Per-junction view of the load: l = L/N, r = R/N, c = N C.
struct ScaledLoad {
    double l = 0.0;
    double r = 0.0;
    double c = 0.0;
};

[[nodiscard]] ScaledLoad scaled_load(const LoadCircuit& load, std::size_t n);

/// Series array of junctions with a common bias current.
struct JunctionArraySpec {
    std::vector<Junction> junctions;
    LoadCircuit load;
    double bias_current = 0.0;  ///< amperes; must exceed every critical current
    double flux_quantum = kFluxQuantum;

    [[nodiscard]] std::size_t size() const { return junctions.size(); }
    [[nodiscard]] double mean_critical_current() const;
    [[nodiscard]] double mean_resistance() const;
    /// Sum of the junction shunt resistances.
    [[nodiscard]] double total_junction_resistance() const;
    void validate() const;
};

/// Dimensionless per-junction coefficients of the circuit equations.
struct DimensionlessJunction {
    double alpha = 0.0;      ///< I_b / I_j, > 1 in the running regime
    double gamma = 0.0;      ///< load damping seen by junction j
    double omega0_sq = 0.0;  ///< load resonance (squared) seen by junction j
    double delta = 0.0;      ///< drive coefficient of the charge equation
    double epsilon = 0.0;    ///< 1 / I_j, feedback coefficient (per ampere)
};

/// alpha_j = I_b/I_j, gamma_j = t_j (r + sum_k rho_k / N) / l,
/// omega0j^2 = t_j^2/(l c), delta_j = t_j / l, epsilon_j = 1/I_j with
/// t_j = Phi0 / (2 pi rho_j I_j). Throws for alpha_j <= 1.
[[nodiscard]] DimensionlessJunction dimensionless_coeffs(const JunctionArraySpec& spec, std::size_t j);

/// Array of n identical junctions.
[[nodiscard]] JunctionArraySpec make_identical_array(std::size_t n, const Junction& junction,
                                                     const LoadCircuit& load, double bias_current);

/// Array with uniform relative perturbations: each I_c in
/// [mean (1-ic_spread), mean (1+ic_spread)] and likewise for rho, seeded.
[[nodiscard]] JunctionArraySpec make_spread_array(std::size_t n, const Junction& mean_junction,
                                                  double ic_spread, double rho_spread,
                                                  const LoadCircuit& load, double bias_current,
                                                  std::uint64_t seed);

}  // namespace ksync::jj
