#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace ksync {

/// Uniform all-to-all coupling of strength K >= 0 (applied as K/N per pair).
struct MeanFieldCoupling {
    double K = 0.0;
    void validate() const;
};

/// Per-edge coupling on an undirected graph: entry (j,i) couples oscillator j
/// to i with strength k(j,i) when adjacency(j,i) == 1. The adjacency matrix
/// must be symmetric with a zero diagonal; strengths must be finite and >= 0.
class NetworkCoupling {
public:
    NetworkCoupling() = default;
    NetworkCoupling(std::size_t n, std::vector<double> strengths, std::vector<std::uint8_t> adjacency);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double strength(std::size_t j, std::size_t i) const { return strengths_[j * n_ + i]; }
    [[nodiscard]] bool connected(std::size_t j, std::size_t i) const { return adjacency_[j * n_ + i] != 0; }

    /// Complete graph with uniform strength K/n; reduces to the mean field.
    static NetworkCoupling complete(std::size_t n, double K);
    /// Ring where each node couples to `neighbors` nodes on each side.
    static NetworkCoupling ring(std::size_t n, double K, std::size_t neighbors = 1);
    /// Erdos-Renyi graph with edge probability p, seeded.
    static NetworkCoupling random(std::size_t n, double K, double edge_probability, std::uint64_t seed);

    void validate() const;

private:
    std::size_t n_ = 0;
    std::vector<double> strengths_;
    std::vector<std::uint8_t> adjacency_;
};

using CouplingSpec = std::variant<MeanFieldCoupling, NetworkCoupling>;

/// Noise parameters of the stochastic model: drift sigma * omega_j plus a
/// per-oscillator white-noise term of intensity gamma. sigma = 1, gamma = 0
/// recovers the deterministic model with the sampled frequencies.
struct NoiseSpec {
    double sigma = 1.0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    void validate() const;
};

}  // namespace ksync
