#include "ksync/coupling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ksync/rng.hpp"

namespace ksync {

void MeanFieldCoupling::validate() const {
    if (!(K >= 0.0) || !std::isfinite(K)) {
        throw std::invalid_argument("mean-field coupling strength must be finite and >= 0");
    }
}

NetworkCoupling::NetworkCoupling(std::size_t n, std::vector<double> strengths,
                                 std::vector<std::uint8_t> adjacency)
    : n_(n), strengths_(std::move(strengths)), adjacency_(std::move(adjacency)) {
    validate();
}

void NetworkCoupling::validate() const {
    if (strengths_.size() != n_ * n_ || adjacency_.size() != n_ * n_) {
        throw std::invalid_argument("network coupling matrices must be N x N");
    }
    for (std::size_t j = 0; j < n_; ++j) {
        if (adjacency_[j * n_ + j] != 0) {
            throw std::invalid_argument("adjacency matrix must have a zero diagonal");
        }
        for (std::size_t i = 0; i < n_; ++i) {
            if (adjacency_[j * n_ + i] != adjacency_[i * n_ + j]) {
                throw std::invalid_argument("adjacency matrix must be symmetric");
            }
            if (adjacency_[j * n_ + i] > 1) {
                throw std::invalid_argument("adjacency entries must be 0 or 1");
            }
            const double k = strengths_[j * n_ + i];
            if (!std::isfinite(k) || k < 0.0) {
                throw std::invalid_argument("coupling strengths must be finite and >= 0");
            }
        }
    }
}

NetworkCoupling NetworkCoupling::complete(std::size_t n, double K) {
    if (n == 0) throw std::invalid_argument("network size must be >= 1");
    std::vector<double> k(n * n, K / static_cast<double>(n));
    std::vector<std::uint8_t> a(n * n, 1);
    for (std::size_t j = 0; j < n; ++j) a[j * n + j] = 0;
    return NetworkCoupling(n, std::move(k), std::move(a));
}

NetworkCoupling NetworkCoupling::ring(std::size_t n, double K, std::size_t neighbors) {
    if (n == 0) throw std::invalid_argument("network size must be >= 1");
    std::vector<double> k(n * n, 0.0);
    std::vector<std::uint8_t> a(n * n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t d = 1; d <= neighbors && d < n; ++d) {
            const std::size_t i1 = (j + d) % n;
            const std::size_t i2 = (j + n - d % n) % n;
            for (std::size_t i : {i1, i2}) {
                if (i == j) continue;
                a[j * n + i] = 1;
                k[j * n + i] = K;
            }
        }
    }
    return NetworkCoupling(n, std::move(k), std::move(a));
}

NetworkCoupling NetworkCoupling::random(std::size_t n, double K, double edge_probability,
                                        std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("network size must be >= 1");
    if (edge_probability < 0.0 || edge_probability > 1.0) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    std::vector<double> k(n * n, 0.0);
    std::vector<std::uint8_t> a(n * n, 0);
    Rng rng(seed);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j + 1; i < n; ++i) {
            if (rng.uniform01() < edge_probability) {
                a[j * n + i] = a[i * n + j] = 1;
                k[j * n + i] = k[i * n + j] = K;
            }
        }
    }
    return NetworkCoupling(n, std::move(k), std::move(a));
}

void NoiseSpec::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("noise sigma must be >= 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("noise gamma must be >= 0");
}

}  // namespace ksync
