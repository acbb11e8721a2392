#include "ksync/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "ksync/kuramoto.hpp"
#include "ksync/rng.hpp"

namespace ksync {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::size_t tail_start_index(const SimulationTrace& trace, double tail_fraction) {
    const double t_end = trace.times.back();
    const double t_begin = trace.times.front();
    const double window = tail_fraction * (t_end - t_begin);
    const double cutoff = t_end - window;
    auto it = std::lower_bound(trace.times.begin(), trace.times.end(), cutoff);
    std::size_t idx = static_cast<std::size_t>(it - trace.times.begin());
    if (idx >= trace.times.size() - 1) idx = trace.times.size() - 2;  // at least two tail samples
    return idx;
}

}  // namespace

SyncReport analyze(const SimulationTrace& trace, double tail_fraction, double R_threshold) {
    if (trace.samples() < 2) throw std::invalid_argument("trace must contain at least 2 samples");
    if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) {
        throw std::invalid_argument("tail_fraction must lie in (0, 0.5]");
    }
    if (!(R_threshold > 0.0 && R_threshold < 1.0)) {
        throw std::invalid_argument("R_threshold must lie in (0, 1)");
    }

    SyncReport report;
    const std::size_t tail0 = tail_start_index(trace, tail_fraction);
    const std::size_t m = trace.samples();

    double r_sum = 0.0;
    double r_min = trace.order_parameters[tail0].R;
    double r_max = r_min;
    for (std::size_t k = tail0; k < m; ++k) {
        const double r = trace.order_parameters[k].R;
        r_sum += r;
        r_min = std::min(r_min, r);
        r_max = std::max(r_max, r);
    }
    report.final_R = r_sum / static_cast<double>(m - tail0);
    report.r_tail_spread = r_max - r_min;
    report.settled = r_min >= R_threshold;

    // First sample index after which R never drops below the threshold.
    std::size_t k0 = m;
    for (std::size_t k = m; k-- > 0;) {
        if (trace.order_parameters[k].R < R_threshold) break;
        k0 = k;
    }
    if (k0 < m) report.settling_time = trace.times[k0];

    const std::vector<double> freqs = running_frequencies(trace, tail_fraction);
    const auto [lo, hi] = std::minmax_element(freqs.begin(), freqs.end());
    report.frequency_band_width = *hi - *lo;
    return report;
}

std::vector<double> running_frequencies(const SimulationTrace& trace, double tail_fraction) {
    if (trace.samples() < 2) throw std::invalid_argument("trace must contain at least 2 samples");
    const std::size_t tail0 = tail_start_index(trace, tail_fraction);
    const std::size_t last = trace.samples() - 1;
    const double window = trace.times[last] - trace.times[tail0];
    if (!(window > 0.0)) throw std::invalid_argument("tail window has zero duration");

    const std::size_t n = trace.n_phases();
    std::vector<double> freqs(n);
    for (std::size_t j = 0; j < n; ++j) {
        freqs[j] = (trace.phase_snapshots[last][j] - trace.phase_snapshots[tail0][j]) / window;
    }
    return freqs;
}

double locked_fraction(const SimulationTrace& trace, std::span<const double> natural_frequencies,
                       double K, double tail_fraction) {
    if (trace.samples() < 2) throw std::invalid_argument("trace must contain at least 2 samples");
    if (natural_frequencies.size() != trace.n_phases()) {
        throw std::invalid_argument("natural_frequencies length must match the trace");
    }
    const std::size_t tail0 = tail_start_index(trace, tail_fraction);
    double r_sum = 0.0;
    for (std::size_t k = tail0; k < trace.samples(); ++k) r_sum += trace.order_parameters[k].R;
    const double r_bar = r_sum / static_cast<double>(trace.samples() - tail0);

    const LockPartition part = classify_locked(natural_frequencies, K, std::clamp(r_bar, 0.0, 1.0));
    return static_cast<double>(part.locked.size()) / static_cast<double>(natural_frequencies.size());
}

double band_locked_fraction(std::span<const double> frequencies, double rel_tol, double abs_tol) {
    if (frequencies.empty()) throw std::invalid_argument("band_locked_fraction requires frequencies");
    std::vector<double> sorted(frequencies.begin(), frequencies.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median = (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const double tol = std::max(rel_tol * std::abs(median), abs_tol);
    std::size_t inside = 0;
    for (const double f : frequencies) {
        if (std::abs(f - median) <= tol) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(n);
}

std::size_t sweep_thread_count(std::size_t requested, std::size_t tasks) {
    std::size_t limit = requested;
    if (limit == 0) {
        if (const char* env = std::getenv("KURAMOTO_SYNC_THREADS")) {
            const long parsed = std::strtol(env, nullptr, 10);
            if (parsed > 0) limit = static_cast<std::size_t>(parsed);
        }
    }
    if (limit == 0) limit = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(limit, tasks));
}

SweepResult sweep_coupling(const SweepSpec& spec) {
    if (spec.n == 0) throw std::invalid_argument("sweep requires n >= 1 oscillators");
    if (spec.K_values.size() < 8) throw std::invalid_argument("sweep requires >= 8 grid points");
    if (!std::is_sorted(spec.K_values.begin(), spec.K_values.end()) ||
        std::adjacent_find(spec.K_values.begin(), spec.K_values.end()) != spec.K_values.end()) {
        throw std::invalid_argument("sweep K grid must be strictly increasing");
    }
    spec.integration.validate();

    // One ensemble shared by every grid point: K is the only thing that moves.
    const std::vector<double> omega =
        sample_frequencies(spec.distribution, spec.n, Rng::mix(spec.seed, 1));
    std::vector<double> theta0(spec.n);
    Rng phase_rng = Rng::fork(spec.seed, 2);
    for (auto& t : theta0) t = phase_rng.uniform(-3.141592653589793, 3.141592653589793);

    SweepResult result;
    result.K_values = spec.K_values;
    result.steady_R.assign(spec.K_values.size(), 0.0);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.K_values.size()) return;
            const double K = spec.K_values[i];
            OdeSystem rhs = [&omega, K](const std::vector<double>& y, std::vector<double>& dydt, double) {
                drift_mean_field(y, omega, K, dydt);
            };
            const SimulationTrace trace = integrate_rk4(rhs, theta0, spec.integration);
            const SyncReport rep = analyze(trace, spec.tail_fraction, kDefaultRThreshold);
            result.steady_R[i] = rep.final_R;
        }
    };

    const std::size_t workers = sweep_thread_count(spec.max_threads, spec.K_values.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Onset: first grid point rising onset_offset above the sub-critical
    // baseline, refined by linear interpolation on steady_R.
    const double baseline = *std::min_element(result.steady_R.begin(), result.steady_R.end());
    const double level = baseline + spec.onset_offset;
    std::optional<std::size_t> onset;
    for (std::size_t i = 0; i < result.steady_R.size(); ++i) {
        if (result.steady_R[i] >= level) {
            onset = i;
            break;
        }
    }
    if (onset) {
        const std::size_t i = *onset;
        if (i == 0) {
            result.Kc_empirical = result.K_values.front();
        } else {
            const double r0 = result.steady_R[i - 1];
            const double r1 = result.steady_R[i];
            const double f = (level - r0) / (r1 - r0);
            result.Kc_empirical = result.K_values[i - 1] + f * (result.K_values[i] - result.K_values[i - 1]);
        }
    }

    // Critical exponent: slope of log(steady_R) vs log(K - Kc) restricted to
    // the near-onset window K in (Kc, 1.5 Kc].
    if (result.Kc_empirical) {
        const double kc = *result.Kc_empirical;
        std::vector<double> lx;
        std::vector<double> ly;
        for (std::size_t i = 0; i < result.K_values.size(); ++i) {
            const double K = result.K_values[i];
            if (K > kc && K <= 1.5 * kc && result.steady_R[i] > 0.0) {
                lx.push_back(std::log(K - kc));
                ly.push_back(std::log(result.steady_R[i]));
            }
        }
        if (lx.size() >= 2) {
            const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());
            const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(ly.size());
            double sxx = 0.0;
            double sxy = 0.0;
            for (std::size_t i = 0; i < lx.size(); ++i) {
                sxx += (lx[i] - mx) * (lx[i] - mx);
                sxy += (lx[i] - mx) * (ly[i] - my);
            }
            if (sxx > 0.0) result.beta_fit = sxy / sxx;
        }
    }
    return result;
}

double spearman_rank_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman correlation needs two equal-length series (n >= 2)");
    }
    const std::size_t n = x.size();
    auto ranks = [n](std::span<const double> v) {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(n);
        for (std::size_t pos = 0; pos < n;) {
            std::size_t end = pos;
            while (end + 1 < n && v[idx[end + 1]] == v[idx[pos]]) ++end;
            const double mean_rank = 0.5 * static_cast<double>(pos + end);
            for (std::size_t k = pos; k <= end; ++k) r[idx[k]] = mean_rank;
            pos = end + 1;
        }
        return r;
    };
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    const double mean = 0.5 * static_cast<double>(n - 1);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (rx[i] - mean) * (rx[i] - mean);
        syy += (ry[i] - mean) * (ry[i] - mean);
        sxy += (rx[i] - mean) * (ry[i] - mean);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace ksync
