#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ksync/cli/presets.hpp"
#include "ksync/cli/runner.hpp"

using namespace ksync;
using namespace ksync::cli;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("ksync_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("quantity parsing") {
    CHECK(parse_quantity("10uA") == doctest::Approx(10e-6).epsilon(1e-12));
    CHECK(parse_quantity("4.2kohm") == doctest::Approx(4200.0).epsilon(1e-12));
    CHECK(parse_quantity("1nH") == doctest::Approx(1e-9).epsilon(1e-12));
    CHECK(parse_quantity("1uF") == doctest::Approx(1e-6).epsilon(1e-12));
    CHECK(parse_quantity("2ohm") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(parse_quantity("2 Ohm") == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(parse_quantity("0.1%") == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(parse_quantity("2.5e-3") == doctest::Approx(2.5e-3).epsilon(1e-12));
    CHECK(parse_quantity("12.5") == doctest::Approx(12.5).epsilon(1e-12));
    CHECK(parse_quantity("3GA") == doctest::Approx(3e9).epsilon(1e-12));
    CHECK_THROWS_AS((void)parse_quantity("abc"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_quantity("3qA"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_quantity("10 furlongs"), std::invalid_argument);
}

TEST_CASE("config parsing reports line-anchored errors") {
    const std::string good =
        "[run]\n"
        "mode = kuramoto\n"
        "seed = 11\n"
        "[model]\n"
        "n = 50\n"
        "coupling = 2.0\n"
        "distribution = lorentzian\n"
        "width = 0.2\n"
        "[integration]\n"
        "dt = 1e-2\n"
        "t_end = 5\n";
    const RunConfig cfg = RunConfig::from_text(good, "good.ini");
    CHECK(cfg.mode == RunMode::Kuramoto);
    CHECK(cfg.seed == 11);
    CHECK(cfg.kuramoto.n == 50);
    CHECK(cfg.kuramoto.distribution.kind == DistributionKind::Lorentzian);

    // Unknown key, with its line number in the message.
    const std::string bad =
        "[run]\n"
        "mode = kuramoto\n"
        "[model]\n"
        "bogus_key = 1\n";
    try {
        (void)RunConfig::from_text(bad, "bad.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bad.ini:4") != std::string::npos);
        CHECK(msg.find("bogus_key") != std::string::npos);
    }

    // Unknown mode.
    CHECK_THROWS_AS((void)RunConfig::from_text("[run]\nmode = wrong\n", "m.ini"), ConfigError);
    // Malformed line.
    CHECK_THROWS_AS((void)RunConfig::from_text("[run]\nmode kuramoto\n", "m.ini"), ConfigError);
    // Missing [run].
    CHECK_THROWS_AS((void)RunConfig::from_text("[model]\nn = 5\n", "m.ini"), ConfigError);
}

TEST_CASE("config serialization round-trips") {
    for (const auto& name : preset_names()) {
        const RunConfig cfg = make_preset(name);
        const std::string text = cfg.to_text();
        const RunConfig back = RunConfig::from_text(text, name);
        CHECK(back.mode == cfg.mode);
        CHECK(back.seed == cfg.seed);
        CHECK(back.to_text() == RunConfig::from_text(back.to_text(), name).to_text());
    }
}

TEST_CASE("preset inventory") {
    const auto names = preset_names();
    CHECK(names.size() == 9);
    const std::string listing = preset_listing();
    for (const std::string required :
         {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"}) {
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
        CHECK(listing.find(required) != std::string::npos);
    }
    // Each line carries its parameter provenance.
    CHECK(listing.find("K=4") != std::string::npos);
    CHECK(listing.find("Ib=12uA") != std::string::npos);
    CHECK(listing.find("10.8785uA") != std::string::npos);

    CHECK_THROWS_AS((void)make_preset("fig99"), ConfigError);
    try {
        (void)make_preset("fig99");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fig2") != std::string::npos);  // lists valid names
    }
}

TEST_CASE("run artifacts: csv shape and determinism") {
    RunConfig cfg = make_preset("fig2");
    cfg.kuramoto.n = 20;  // keep the unit test light
    cfg.integration.t_end = 2.0;
    cfg.integration.dt = 1e-2;
    cfg.integration.record_every = 10;

    const auto dir1 = temp_dir("csv_a");
    const auto dir2 = temp_dir("csv_b");
    const auto a = execute_run(cfg, dir1.string());
    const auto b = execute_run(cfg, dir2.string());

    const std::string csv_a = slurp(a.csv_path);
    const std::string csv_b = slurp(b.csv_path);
    CHECK(csv_a == csv_b);  // same config + same seed -> byte-identical

    // Header and column count: 3 + N with phase dump enabled.
    std::istringstream lines(csv_a);
    std::string header;
    std::getline(lines, header);
    CHECK(header.rfind("t,R,psi,theta_0,", 0) == 0);
    CHECK(static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) == 2 + 20);
    std::size_t rows = 0;
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++rows;
    }
    // floor(t_end / (dt * record_every)) + 1
    CHECK(rows == static_cast<std::size_t>(2.0 / (1e-2 * 10)) + 1);

    // Different seed changes the trace.
    const auto dir3 = temp_dir("csv_c");
    const auto c = execute_run(cfg, dir3.string(), 999);
    CHECK(slurp(c.csv_path) != csv_a);

    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    std::filesystem::remove_all(dir3);
}

TEST_CASE("manifest round-trips to an identical run") {
    RunConfig cfg = make_preset("fig8");  // jj mode exercises dt resolution
    cfg.integration.t_end = 3.0;

    const auto dir1 = temp_dir("manifest_a");
    const auto a = execute_run(cfg, dir1.string());
    const std::string manifest = slurp(a.manifest_path);

    RunConfig replay = RunConfig::from_text(manifest, "manifest.ini");
    const auto dir2 = temp_dir("manifest_b");
    replay.output.dir = dir2.string();
    const auto b = execute_run(replay);

    CHECK(slurp(a.csv_path) == slurp(b.csv_path));
    CHECK(slurp(a.report_path) == slurp(b.report_path));

    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("reports carry the analysis fields") {
    RunConfig cfg = make_preset("fig2");
    cfg.kuramoto.n = 30;
    cfg.integration.t_end = 10.0;
    const auto dir = temp_dir("report");
    const auto artifacts = execute_run(cfg, dir.string());
    const std::string report = slurp(artifacts.report_path);
    for (const std::string key : {"mode:", "final_R:", "settled:", "settling_time:",
                                  "frequency_band_width:", "locked_fraction:", "r_tail_spread:"}) {
        CHECK(report.find(key) != std::string::npos);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("kuramoto-noise and network modes run end to end") {
    {
        RunConfig cfg;
        cfg.mode = RunMode::KuramotoNoise;
        cfg.seed = 5;
        cfg.kuramoto.n = 16;
        cfg.kuramoto.coupling = 1.0;
        cfg.noise.sigma = 1.0;
        cfg.noise.gamma = 0.2;
        cfg.integration.dt = 1e-3;
        cfg.integration.t_end = 1.0;
        cfg.integration.record_every = 100;
        const auto artifacts = run_simulation(cfg);
        CHECK(artifacts.trace.samples() == 11);
        CHECK(artifacts.report.has_value());
    }
    {
        RunConfig cfg;
        cfg.mode = RunMode::KuramotoNetwork;
        cfg.seed = 6;
        cfg.kuramoto.n = 12;
        cfg.kuramoto.distribution = FrequencyDistribution::gaussian(0.2);
        cfg.network.topology = NetworkTopology::Ring;
        cfg.network.edge_coupling = 0.5;
        cfg.network.neighbors = 2;
        cfg.integration.dt = 1e-2;
        cfg.integration.t_end = 2.0;
        const auto artifacts = run_simulation(cfg);
        CHECK(artifacts.report.has_value());
        CHECK_FALSE(artifacts.report->locked_fraction.has_value());
    }
}

TEST_CASE("jj reduced modes run end to end") {
    for (const RunMode mode : {RunMode::JjReduced, RunMode::JjReducedIdentical}) {
        RunConfig cfg;
        cfg.mode = mode;
        cfg.seed = 3;
        cfg.array.n = 8;
        cfg.bias_current = 12e-6;
        cfg.integration.t_end = 10.0;
        cfg.integration.record_every = 5;
        const auto artifacts = run_simulation(cfg);
        CHECK(artifacts.report.has_value());
        CHECK(artifacts.trace.n_phases() == 8);
        // Frequencies sit near 1 in tau~ units.
        const auto freqs = running_frequencies(artifacts.trace);
        for (const double f : freqs) CHECK(f == doctest::Approx(1.0).epsilon(0.2));
    }
}

TEST_CASE("csv without phase dump has exactly three columns") {
    RunConfig cfg = make_preset("fig2");
    cfg.kuramoto.n = 5;
    cfg.integration.t_end = 1.0;
    cfg.integration.dt = 0.1;
    cfg.integration.record_every = 5;
    cfg.output.phase_dump = false;
    const auto artifacts = run_simulation(cfg);
    const std::string csv = trace_to_csv(artifacts.trace, false);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,R,psi");
}

TEST_CASE("every preset runs end to end") {
    for (const auto& name : preset_names()) {
        RunConfig cfg = make_preset(name);
        // Trim the heavy mean-field presets; junction presets are cheap.
        if (cfg.is_kuramoto_mode()) {
            cfg.integration.t_end = 2.0;
        } else if (cfg.is_jj_mode()) {
            cfg.integration.t_end = std::min(cfg.integration.t_end, 5.0);
        }
        const auto artifacts = run_simulation(cfg);
        CHECK(artifacts.trace.samples() >= 2);
        REQUIRE(artifacts.report.has_value());
        CHECK(artifacts.report->final_R >= 0.0);
        CHECK(artifacts.report->final_R <= 1.0 + 1e-12);
    }
}
