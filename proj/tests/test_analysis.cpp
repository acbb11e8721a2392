#include <doctest.h>

#include <cmath>
#include <vector>

#include "ksync/analysis.hpp"
#include "ksync/kuramoto.hpp"
#include "ksync/rng.hpp"

using namespace ksync;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

SimulationTrace synthetic_trace(const std::vector<double>& times,
                                const std::vector<std::vector<double>>& phases) {
    SimulationTrace trace;
    trace.times = times;
    trace.phase_snapshots = phases;
    for (const auto& p : phases) trace.order_parameters.push_back(order_parameter(p));
    return trace;
}

SimulationTrace kuramoto_run(std::size_t n, double K, const FrequencyDistribution& dist,
                             std::uint64_t seed, double t_end = 25.0) {
    const auto omega = sample_frequencies(dist, n, Rng::mix(seed, 1));
    std::vector<double> theta0(n);
    Rng rng = Rng::fork(seed, 2);
    for (auto& t : theta0) t = rng.uniform(-kPi, kPi);
    IntegrationConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = t_end;
    cfg.record_every = 10;
    const OdeSystem rhs = [&omega, K](const std::vector<double>& y, std::vector<double>& dydt, double) {
        drift_mean_field(y, omega, K, dydt);
    };
    return integrate_rk4(rhs, theta0, cfg);
}
}  // namespace

TEST_CASE("analyze on a fully coherent constant trace") {
    std::vector<double> times;
    std::vector<std::vector<double>> phases;
    for (int k = 0; k <= 100; ++k) {
        times.push_back(0.1 * k);
        phases.push_back(std::vector<double>(8, 1.0 + 0.05 * k));
    }
    const auto report = analyze(synthetic_trace(times, phases));
    CHECK(report.final_R == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.settled);
    REQUIRE(report.settling_time.has_value());
    CHECK(*report.settling_time == 0.0);
    CHECK(report.frequency_band_width == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(report.r_tail_spread < 1e-12);
}

TEST_CASE("analyze input validation") {
    std::vector<double> times{0.0};
    std::vector<std::vector<double>> phases{{0.1}};
    CHECK_THROWS_AS((void)analyze(synthetic_trace(times, phases)), std::invalid_argument);
    const auto trace = kuramoto_run(8, 0.0, FrequencyDistribution::delta(), 1, 2.0);
    CHECK_THROWS_AS((void)analyze(trace, 0.0, 0.9), std::invalid_argument);
    CHECK_THROWS_AS((void)analyze(trace, 0.6, 0.9), std::invalid_argument);
    CHECK_THROWS_AS((void)analyze(trace, 0.25, 1.5), std::invalid_argument);
}

TEST_CASE("identical uncoupled oscillators have zero band width") {
    // Delta frequencies at 0.7, K = 0: all phases advance at the same rate.
    const auto trace = kuramoto_run(16, 0.0, FrequencyDistribution::delta(0.7), 3, 10.0);
    const auto report = analyze(trace);
    CHECK(report.frequency_band_width < 1e-12);
    const auto freqs = running_frequencies(trace);
    for (const double f : freqs) CHECK(f == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("uncoupled wide ensemble stays incoherent") {
    const auto trace = kuramoto_run(100, 0.0, FrequencyDistribution::logistic(0.2), 5);
    const auto report = analyze(trace);
    CHECK_FALSE(report.settled);
    CHECK(report.final_R < 0.3);
}

TEST_CASE("analyze is invariant under a uniform phase shift") {
    const auto trace = kuramoto_run(32, 1.0, FrequencyDistribution::gaussian(0.3), 8, 10.0);
    SimulationTrace shifted = trace;
    for (auto& snap : shifted.phase_snapshots) {
        for (auto& p : snap) p += 1.234;
    }
    for (std::size_t k = 0; k < shifted.samples(); ++k) {
        shifted.order_parameters[k] = order_parameter(shifted.phase_snapshots[k]);
    }
    const auto a = analyze(trace);
    const auto b = analyze(shifted);
    CHECK(a.final_R == doctest::Approx(b.final_R).epsilon(1e-12));
    CHECK(a.settled == b.settled);
    CHECK(a.frequency_band_width == doctest::Approx(b.frequency_band_width).epsilon(1e-9));
}

TEST_CASE("settling time is the first time R stays above threshold") {
    std::vector<double> times;
    std::vector<std::vector<double>> phases;
    // Two oscillators closing in: R crosses 0.9 for good at a known time.
    for (int k = 0; k <= 200; ++k) {
        const double t = 0.05 * k;
        const double gap = kPi * std::exp(-t);  // R = cos(gap/2)
        times.push_back(t);
        phases.push_back({0.0, gap});
    }
    const auto report = analyze(synthetic_trace(times, phases), 0.25, 0.9);
    REQUIRE(report.settling_time.has_value());
    // R >= 0.9 <=> gap <= 2 acos(0.9) <=> t >= ln(pi / (2 acos(0.9))).
    const double t_star = std::log(kPi / (2.0 * std::acos(0.9)));
    CHECK(*report.settling_time >= t_star - 0.05);
    CHECK(*report.settling_time <= t_star + 0.05);
    CHECK(report.settled);
}

TEST_CASE("locked fraction") {
    // Delta frequencies: everything locks as soon as R > 0.
    {
        const auto trace = kuramoto_run(12, 1.0, FrequencyDistribution::delta(), 2, 5.0);
        CHECK(locked_fraction(trace, std::vector<double>(12, 0.0), 1.0) == 1.0);
    }
    // K = 0 with nonzero frequencies: nothing locks.
    {
        const auto trace = kuramoto_run(12, 0.0, FrequencyDistribution::gaussian(1.0), 2, 5.0);
        const auto omega = sample_frequencies(FrequencyDistribution::gaussian(1.0), 12, Rng::mix(2, 1));
        CHECK(locked_fraction(trace, omega, 0.0) == 0.0);
    }
    // Matches classify_locked exactly at the tail-mean R.
    {
        const auto dist = FrequencyDistribution::gaussian(1.0);
        const auto trace = kuramoto_run(64, 2.5, dist, 4);
        const auto omega = sample_frequencies(dist, 64, Rng::mix(4, 1));
        double r_sum = 0.0;
        std::size_t count = 0;
        const double cutoff = trace.times.back() - 0.25 * (trace.times.back() - trace.times.front());
        for (std::size_t k = 0; k < trace.samples(); ++k) {
            if (trace.times[k] >= cutoff) {
                r_sum += trace.order_parameters[k].R;
                ++count;
            }
        }
        const double r_bar = r_sum / static_cast<double>(count);
        const auto part = classify_locked(omega, 2.5, r_bar);
        CHECK(locked_fraction(trace, omega, 2.5) ==
              doctest::Approx(static_cast<double>(part.locked.size()) / 64.0).epsilon(1e-12));
    }
}

TEST_CASE("band locked fraction") {
    std::vector<double> freqs{1.0, 1.001, 0.999, 1.0005, 1.2};
    CHECK(band_locked_fraction(freqs, 0.01) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(band_locked_fraction(freqs, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> tight{2.0, 2.0, 2.0};
    CHECK(band_locked_fraction(tight, 1e-6) == 1.0);
}

TEST_CASE("sweep locates the lorentzian onset") {
    SweepSpec spec;
    spec.n = 400;
    spec.distribution = FrequencyDistribution::lorentzian(0.2);
    spec.seed = 12;
    spec.integration.dt = 0.02;
    spec.integration.t_end = 120.0;
    spec.integration.record_every = 50;
    for (int i = 0; i < 12; ++i) spec.K_values.push_back(0.1 + 0.065 * i);
    const auto result = sweep_coupling(spec);

    REQUIRE(result.Kc_empirical.has_value());
    CHECK(*result.Kc_empirical == doctest::Approx(0.4).epsilon(0.4));
    // steady_R rises essentially monotonically with K.
    CHECK(spearman_rank_correlation(result.K_values, result.steady_R) >= 0.9);
    // locked_fraction = 1 whenever the band collapses and R > 0: spot-check
    // the strongest coupling with a direct run.
    CHECK(result.steady_R.back() > 0.6);
}

TEST_CASE("sweep input validation") {
    SweepSpec spec;
    spec.n = 10;
    spec.distribution = FrequencyDistribution::lorentzian(0.2);
    spec.K_values = {0.1, 0.2, 0.3};  // too few
    spec.integration.dt = 0.1;
    spec.integration.t_end = 1.0;
    CHECK_THROWS_AS((void)sweep_coupling(spec), std::invalid_argument);
    spec.K_values = {0.1, 0.2, 0.3, 0.3, 0.4, 0.5, 0.6, 0.7};  // not strictly increasing
    CHECK_THROWS_AS((void)sweep_coupling(spec), std::invalid_argument);
}

TEST_CASE("spearman rank correlation") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    std::vector<double> inc{0.1, 0.2, 0.3, 0.4};
    std::vector<double> dec{4.0, 3.0, 2.0, 1.0};
    CHECK(spearman_rank_correlation(x, inc) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spearman_rank_correlation(x, dec) == doctest::Approx(-1.0).epsilon(1e-12));
}
