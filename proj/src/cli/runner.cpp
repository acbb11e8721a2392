#include "ksync/cli/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ksync/jj/full_circuit.hpp"
#include "ksync/jj/junction_array.hpp"
#include "ksync/jj/natural_angle.hpp"
#include "ksync/jj/reduced_model.hpp"
#include "ksync/kuramoto.hpp"
#include "ksync/rng.hpp"

namespace ksync::cli {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::vector<double> initial_phases(std::size_t n, double spread, std::uint64_t seed) {
    Rng rng = Rng::fork(seed, kSeedInitialPhases);
    std::vector<double> phases(n);
    for (auto& p : phases) p = rng.uniform(-spread, spread);
    return phases;
}

jj::JunctionArraySpec build_array(const RunConfig& cfg) {
    const jj::Junction mean{cfg.array.ic, cfg.array.rho};
    const jj::LoadCircuit load{cfg.load.inductance, cfg.load.resistance, cfg.load.capacitance};
    jj::JunctionArraySpec spec;
    if (cfg.array.ic_spread > 0.0 || cfg.array.rho_spread > 0.0) {
        spec = jj::make_spread_array(cfg.array.n, mean, cfg.array.ic_spread, cfg.array.rho_spread,
                                     load, cfg.bias_current, Rng::mix(cfg.seed, kSeedArraySpread));
    } else {
        spec = jj::make_identical_array(cfg.array.n, mean, load, cfg.bias_current);
    }
    for (const auto& [idx, ov] : cfg.array.overrides) {
        if (idx >= spec.size()) throw ConfigError("junction override index out of range");
        if (ov.ic) spec.junctions[idx].critical_current = *ov.ic;
        if (ov.rho) spec.junctions[idx].resistance = *ov.rho;
    }
    spec.validate();
    return spec;
}

/// Pins the integration step so that t_end is an exact multiple of dt.
void resolve_dt(RunConfig& cfg, double natural_dt) {
    if (!cfg.dt_explicit) {
        const double steps = std::ceil(cfg.integration.t_end / natural_dt);
        cfg.integration.dt = cfg.integration.t_end / steps;
        cfg.dt_explicit = true;
    }
}

OscillatorEnsemble build_ensemble(const RunConfig& cfg) {
    OscillatorEnsemble ensemble;
    const std::size_t n = cfg.kuramoto.n;
    ensemble.natural_frequencies =
        sample_frequencies(cfg.kuramoto.distribution, n, Rng::mix(cfg.seed, kSeedFrequencies));
    ensemble.phases = initial_phases(n, cfg.kuramoto.init_phase_spread, cfg.seed);
    ensemble.noise = NoiseSpec{cfg.noise.sigma, cfg.noise.gamma, Rng::mix(cfg.seed, kSeedNoise)};
    if (cfg.mode == RunMode::KuramotoNetwork) {
        switch (cfg.network.topology) {
            case NetworkTopology::Complete:
                ensemble.coupling =
                    NetworkCoupling::complete(n, cfg.network.edge_coupling * static_cast<double>(n));
                break;
            case NetworkTopology::Ring:
                ensemble.coupling =
                    NetworkCoupling::ring(n, cfg.network.edge_coupling, cfg.network.neighbors);
                break;
            case NetworkTopology::Random:
                ensemble.coupling =
                    NetworkCoupling::random(n, cfg.network.edge_coupling, cfg.network.edge_probability,
                                            Rng::mix(cfg.seed, kSeedArraySpread));
                break;
        }
    } else {
        ensemble.coupling = MeanFieldCoupling{cfg.kuramoto.coupling};
    }
    ensemble.validate();
    return ensemble;
}

void run_kuramoto(RunConfig& cfg, RunArtifacts& artifacts) {
    const OscillatorEnsemble ensemble = build_ensemble(cfg);
    const std::vector<double>& omega = ensemble.natural_frequencies;

    if (cfg.mode == RunMode::Kuramoto) {
        const double K = std::get<MeanFieldCoupling>(ensemble.coupling).K;
        const OdeSystem rhs = [&omega, K](const std::vector<double>& y, std::vector<double>& dydt,
                                          double) { drift_mean_field(y, omega, K, dydt); };
        artifacts.trace = integrate_rk4(rhs, ensemble.phases, cfg.integration);
    } else if (cfg.mode == RunMode::KuramotoNoise) {
        const double K = std::get<MeanFieldCoupling>(ensemble.coupling).K;
        const NoiseSpec& noise = ensemble.noise;
        const SdeDrift drift = [&omega, &noise, K](const std::vector<double>& y,
                                                   std::vector<double>& d, double) {
            const NoisyDrift nd = noisy_drift_and_diffusion(y, omega, K, noise);
            d = nd.drift;
        };
        IntegrationConfig ic = cfg.integration;
        ic.seed = ensemble.noise.seed;
        artifacts.trace =
            integrate_euler_maruyama(drift, std::sqrt(ensemble.noise.gamma), ensemble.phases, ic);
    } else {
        const auto& coupling = std::get<NetworkCoupling>(ensemble.coupling);
        const OdeSystem rhs = [&omega, &coupling](const std::vector<double>& y,
                                                  std::vector<double>& dydt, double) {
            drift_network(y, omega, coupling, dydt);
        };
        artifacts.trace = integrate_rk4(rhs, ensemble.phases, cfg.integration);
    }

    SyncReport report = analyze(artifacts.trace, cfg.tail_fraction, cfg.r_threshold);
    if (cfg.mode != RunMode::KuramotoNetwork) {
        // No single scalar K exists for a general network, so the |omega| <= K R
        // criterion is reported only for the mean-field variants.
        report.locked_fraction =
            locked_fraction(artifacts.trace, omega, cfg.kuramoto.coupling, cfg.tail_fraction);
    }
    artifacts.report = report;
}

void run_jj(RunConfig& cfg, RunArtifacts& artifacts) {
    const jj::JunctionArraySpec spec = build_array(cfg);
    const std::vector<double> phi0 =
        initial_phases(spec.size(), cfg.jj_init_phase_spread, cfg.seed);

    if (cfg.mode == RunMode::JjFull) {
        const jj::FullCircuitSystem system(spec, cfg.coupling_scale);
        const double w = system.tau_tilde_factor();
        resolve_dt(cfg, system.min_uncoupled_period() * w / 200.0);

        // Integrate directly in tau~ so recorded times and the configured
        // t_end share the same clock.
        const OdeSystem rhs = [&system, w](const std::vector<double>& y, std::vector<double>& dydt,
                                           double tau_tilde) {
            system(y, dydt, tau_tilde / w);
            for (auto& v : dydt) v /= w;
        };
        artifacts.trace = integrate_rk4(rhs, system.initial_state(phi0, cfg.precharge_load),
                                        cfg.integration,
                                        system.phase_extractor(), system.aux_extractor());
        artifacts.natural_trace = jj::to_natural_angle_trace(artifacts.trace, system.alphas(), 1.0);
    } else {
        jj::ReducedSystem system = (cfg.mode == RunMode::JjReduced)
                                       ? jj::ReducedSystem(jj::reduced_coefficients(spec),
                                                           cfg.coupling_scale)
                                       : jj::ReducedSystem::identical(spec, cfg.coupling_scale);
        double max_rate = 0.0;
        for (const double r : system.model().rate) max_rate = std::max(max_rate, r);
        resolve_dt(cfg, 2.0 * kPi / max_rate / 200.0);

        std::vector<double> psi0(spec.size());
        for (std::size_t j = 0; j < spec.size(); ++j) {
            psi0[j] = jj::psi_of_phi(phi0[j], spec.bias_current / spec.junctions[j].critical_current);
        }
        const OdeSystem rhs = [&system](const std::vector<double>& y, std::vector<double>& dydt,
                                        double t) { system(y, dydt, t); };
        artifacts.trace = integrate_rk4(rhs, psi0, cfg.integration);
    }

    SyncReport report = analyze(artifacts.trace, cfg.tail_fraction, cfg.r_threshold);
    const SimulationTrace& freq_view =
        artifacts.natural_trace ? *artifacts.natural_trace : artifacts.trace;
    report.locked_fraction = band_locked_fraction(
        running_frequencies(freq_view, cfg.tail_fraction), cfg.band_tolerance);
    artifacts.report = report;
}

void run_sweep(RunConfig& cfg, RunArtifacts& artifacts) {
    SweepSpec spec;
    spec.n = cfg.kuramoto.n;
    spec.distribution = cfg.kuramoto.distribution;
    spec.integration = cfg.integration;
    spec.seed = cfg.seed;
    spec.tail_fraction = cfg.tail_fraction;
    spec.onset_offset = cfg.sweep.onset_offset;
    spec.K_values.resize(cfg.sweep.points);
    const double step = (cfg.sweep.k_max - cfg.sweep.k_min) / static_cast<double>(cfg.sweep.points - 1);
    for (std::size_t i = 0; i < cfg.sweep.points; ++i) {
        spec.K_values[i] = cfg.sweep.k_min + static_cast<double>(i) * step;
    }
    artifacts.sweep = sweep_coupling(spec);
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    for (const char c : label) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    }
    return out.empty() ? std::string("run") : out;
}

}  // namespace

RunArtifacts run_simulation(const RunConfig& config) {
    RunArtifacts artifacts;
    artifacts.resolved = config;
    artifacts.resolved.validate();
    switch (config.mode) {
        case RunMode::Kuramoto:
        case RunMode::KuramotoNoise:
        case RunMode::KuramotoNetwork:
            run_kuramoto(artifacts.resolved, artifacts);
            break;
        case RunMode::JjFull:
        case RunMode::JjReduced:
        case RunMode::JjReducedIdentical:
            run_jj(artifacts.resolved, artifacts);
            break;
        case RunMode::Sweep:
            run_sweep(artifacts.resolved, artifacts);
            break;
    }
    return artifacts;
}

std::string trace_to_csv(const SimulationTrace& trace, bool phase_dump) {
    std::ostringstream out;
    out << "t,R,psi";
    if (phase_dump) {
        for (std::size_t j = 0; j < trace.n_phases(); ++j) out << ",theta_" << j;
    }
    out << "\n";
    for (std::size_t k = 0; k < trace.samples(); ++k) {
        out << format_double(trace.times[k]) << ',' << format_double(trace.order_parameters[k].R)
            << ',' << format_double(trace.order_parameters[k].psi);
        if (phase_dump) {
            for (const double theta : trace.phase_snapshots[k]) out << ',' << format_double(theta);
        }
        out << "\n";
    }
    return out.str();
}

std::string report_to_text(const RunArtifacts& artifacts) {
    std::ostringstream out;
    const RunConfig& cfg = artifacts.resolved;
    out << "mode: " << to_string(cfg.mode) << "\n";
    out << "label: " << cfg.label << "\n";
    out << "seed: " << cfg.seed << "\n";
    if (artifacts.report) {
        const SyncReport& r = *artifacts.report;
        out << "final_R: " << format_double(r.final_R) << "\n";
        out << "settled: " << (r.settled ? "true" : "false") << "\n";
        out << "settling_time: " << (r.settling_time ? format_double(*r.settling_time) : "none") << "\n";
        out << "frequency_band_width: " << format_double(r.frequency_band_width) << "\n";
        out << "locked_fraction: "
            << (r.locked_fraction ? format_double(*r.locked_fraction) : "none") << "\n";
        out << "r_tail_spread: " << format_double(r.r_tail_spread) << "\n";
        if (artifacts.natural_trace) {
            const auto freqs = running_frequencies(*artifacts.natural_trace, cfg.tail_fraction);
            const auto [lo, hi] = std::minmax_element(freqs.begin(), freqs.end());
            out << "natural_band_width: " << format_double(*hi - *lo) << "\n";
        }
    }
    if (artifacts.sweep) {
        const SweepResult& s = *artifacts.sweep;
        out << "K_values:";
        for (const double k : s.K_values) out << ' ' << format_double(k);
        out << "\n";
        out << "steady_R:";
        for (const double r : s.steady_R) out << ' ' << format_double(r);
        out << "\n";
        out << "Kc_empirical: " << (s.Kc_empirical ? format_double(*s.Kc_empirical) : "none") << "\n";
        out << "beta_fit: " << (s.beta_fit ? format_double(*s.beta_fit) : "none") << "\n";
    }
    return out.str();
}

RunArtifacts execute_run(const RunConfig& config, const std::optional<std::string>& out_dir_override,
                         const std::optional<std::uint64_t>& seed_override) {
    RunConfig cfg = config;
    if (seed_override) cfg.seed = *seed_override;
    if (out_dir_override) cfg.output.dir = *out_dir_override;

    RunArtifacts artifacts = run_simulation(cfg);

    const std::filesystem::path dir(artifacts.resolved.output.dir);
    std::filesystem::create_directories(dir);
    const std::string stem = sanitize_label(artifacts.resolved.label);

    const auto write_file = [](const std::filesystem::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
        out << content;
    };

    if (artifacts.resolved.mode != RunMode::Sweep) {
        const auto csv = dir / (stem + ".csv");
        write_file(csv, trace_to_csv(artifacts.trace, artifacts.resolved.output.phase_dump));
        artifacts.csv_path = csv.string();
    }
    const auto report = dir / (stem + ".report.txt");
    write_file(report, report_to_text(artifacts));
    artifacts.report_path = report.string();

    RunConfig manifest_cfg = artifacts.resolved;
    manifest_cfg.provenance.push_back("manifest: fully resolved run configuration; rerunning this "
                                      "file reproduces the outputs byte for byte");
    manifest_cfg.provenance.push_back(
        "seed streams: frequencies=mix(seed,1) phases=mix(seed,2) noise=mix(seed,3) "
        "array-spread=mix(seed,4)");
    const auto manifest = dir / (stem + ".manifest.ini");
    write_file(manifest, manifest_cfg.to_text());
    artifacts.manifest_path = manifest.string();
    return artifacts;
}

}  // namespace ksync::cli
