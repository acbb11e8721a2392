#include "ksync/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ksync::cli {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

struct ParsedFile {
    std::string name;
    // section -> key -> entry, with section line numbers for diagnostics
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::map<std::string, int> section_lines;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

ParsedFile parse_ini(const std::string& text, const std::string& name) {
    ParsedFile file;
    file.name = name;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        // Strip full-line and trailing ' #' comments.
        std::string line = raw;
        if (auto pos = line.find(" #"); pos != std::string::npos) line = line.substr(0, pos);
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(name, line_no, "malformed section header '" + raw + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(name, line_no, "empty section name");
            file.sections[section];  // sections may legitimately repeat (merged)
            if (!file.section_lines.count(section)) file.section_lines[section] = line_no;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(name, line_no, "expected 'key = value', got '" + raw + "'");
        if (section.empty()) fail(name, line_no, "key outside any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(name, line_no, "empty key");
        auto& sec = file.sections[section];
        if (sec.count(key)) fail(name, line_no, "duplicate key '" + key + "' in [" + section + "]");
        sec[key] = Entry{value, line_no, false};
    }
    return file;
}

/// Typed access to one section, tracking which keys were consumed.
class SectionReader {
public:
    SectionReader(ParsedFile& file, const std::string& section)
        : file_(file), section_(section), entries_(nullptr) {
        auto it = file.sections.find(section);
        if (it != file.sections.end()) entries_ = &it->second;
    }

    [[nodiscard]] bool present() const { return entries_ != nullptr; }

    std::optional<std::string> take_string(const std::string& key) {
        if (!entries_) return std::nullopt;
        auto it = entries_->find(key);
        if (it == entries_->end()) return std::nullopt;
        it->second.used = true;
        last_line_ = it->second.line;
        return it->second.value;
    }

    std::optional<double> take_quantity(const std::string& key) {
        auto s = take_string(key);
        if (!s) return std::nullopt;
        try {
            return parse_quantity(*s);
        } catch (const std::exception& e) {
            fail(file_.name, last_line_, "key '" + key + "': " + e.what());
        }
    }

    std::optional<std::size_t> take_size(const std::string& key) {
        auto v = take_quantity(key);
        if (!v) return std::nullopt;
        if (*v < 0.0 || *v != std::floor(*v)) {
            fail(file_.name, last_line_, "key '" + key + "' must be a nonnegative integer");
        }
        return static_cast<std::size_t>(*v);
    }

    std::optional<std::uint64_t> take_u64(const std::string& key) {
        auto s = take_string(key);
        if (!s) return std::nullopt;
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s->c_str(), &end, 10);
        if (end == s->c_str() || *end != '\0') {
            fail(file_.name, last_line_, "key '" + key + "' must be an unsigned integer");
        }
        return static_cast<std::uint64_t>(v);
    }

    std::optional<bool> take_bool(const std::string& key) {
        auto s = take_string(key);
        if (!s) return std::nullopt;
        if (*s == "true" || *s == "1" || *s == "yes") return true;
        if (*s == "false" || *s == "0" || *s == "no") return false;
        fail(file_.name, last_line_, "key '" + key + "' must be a boolean (true/false)");
    }

    [[nodiscard]] int last_line() const { return last_line_; }

private:
    ParsedFile& file_;
    std::string section_;
    std::map<std::string, Entry>* entries_;
    int last_line_ = 0;
};

void check_all_used(const ParsedFile& file) {
    for (const auto& [section, entries] : file.sections) {
        for (const auto& [key, entry] : entries) {
            if (!entry.used) {
                fail(file.name, entry.line, "unknown key '" + key + "' in [" + section + "]");
            }
        }
    }
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Kuramoto: return "kuramoto";
        case RunMode::KuramotoNoise: return "kuramoto-noise";
        case RunMode::KuramotoNetwork: return "kuramoto-network";
        case RunMode::JjFull: return "jj-full";
        case RunMode::JjReduced: return "jj-reduced";
        case RunMode::JjReducedIdentical: return "jj-reduced-identical";
        case RunMode::Sweep: return "sweep";
    }
    return "unknown";
}

RunMode run_mode_from_string(const std::string& name) {
    if (name == "kuramoto") return RunMode::Kuramoto;
    if (name == "kuramoto-noise") return RunMode::KuramotoNoise;
    if (name == "kuramoto-network") return RunMode::KuramotoNetwork;
    if (name == "jj-full") return RunMode::JjFull;
    if (name == "jj-reduced") return RunMode::JjReduced;
    if (name == "jj-reduced-identical") return RunMode::JjReducedIdentical;
    if (name == "sweep") return RunMode::Sweep;
    throw ConfigError("unknown mode '" + name +
                      "' (expected kuramoto, kuramoto-noise, kuramoto-network, jj-full, jj-reduced, "
                      "jj-reduced-identical or sweep)");
}

std::string to_string(NetworkTopology topology) {
    switch (topology) {
        case NetworkTopology::Complete: return "complete";
        case NetworkTopology::Ring: return "ring";
        case NetworkTopology::Random: return "random";
    }
    return "unknown";
}

double parse_quantity(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty value");
    char* end = nullptr;
    const double value = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw std::invalid_argument("not a number: '" + s + "'");
    std::string suffix = trim(std::string(end));
    if (suffix.empty()) return value;
    if (suffix == "%") return value / 100.0;

    auto is_unit = [](const std::string& u) {
        return u == "A" || u == "ohm" || u == "Ohm" || u == "H" || u == "F" || u == "V" ||
               u == "Wb" || u == "s";
    };
    if (is_unit(suffix)) return value;

    static const std::map<char, double> prefixes = {
        {'f', 1e-15}, {'p', 1e-12}, {'n', 1e-9}, {'u', 1e-6}, {'m', 1e-3},
        {'k', 1e3},   {'M', 1e6},   {'G', 1e9},  {'T', 1e12},
    };
    const auto pf = prefixes.find(suffix[0]);
    if (pf != prefixes.end() && is_unit(suffix.substr(1))) return value * pf->second;
    throw std::invalid_argument("unknown unit suffix '" + suffix + "'");
}

void RunConfig::validate() const {
    integration.validate();
    if (!(tail_fraction > 0.0 && tail_fraction <= 0.5)) {
        throw ConfigError("tail_fraction must lie in (0, 0.5]");
    }
    if (!(r_threshold > 0.0 && r_threshold < 1.0)) throw ConfigError("r_threshold must lie in (0, 1)");
    if (is_kuramoto_mode() || mode == RunMode::Sweep) {
        if (kuramoto.n == 0) throw ConfigError("model n must be >= 1");
        kuramoto.distribution.validate();
    }
    if (mode == RunMode::Kuramoto || mode == RunMode::KuramotoNoise) {
        if (kuramoto.coupling < 0.0) throw ConfigError("coupling must be >= 0");
    }
    if (mode == RunMode::KuramotoNoise) {
        if (noise.sigma < 0.0 || noise.gamma < 0.0) throw ConfigError("noise amplitudes must be >= 0");
    }
    if (mode == RunMode::KuramotoNetwork) {
        if (network.edge_coupling < 0.0) throw ConfigError("edge_coupling must be >= 0");
    }
    if (is_jj_mode()) {
        if (array.n == 0) throw ConfigError("array n must be >= 1");
        if (!(array.ic > 0.0) || !(array.rho > 0.0)) throw ConfigError("ic and rho must be > 0");
        if (!(bias_current > 0.0)) throw ConfigError("bias current must be > 0");
        if (coupling_scale < 0.0) throw ConfigError("coupling_scale must be >= 0");
        if (!(band_tolerance > 0.0)) throw ConfigError("band_tolerance must be > 0");
    }
    if (mode == RunMode::Sweep) {
        if (sweep.points < 8) throw ConfigError("sweep needs >= 8 grid points");
        if (!(sweep.k_min < sweep.k_max)) throw ConfigError("sweep requires k_min < k_max");
        if (!(sweep.k_min >= 0.0)) throw ConfigError("sweep couplings must be >= 0");
    }
}

RunConfig RunConfig::from_text(const std::string& text, const std::string& name) {
    ParsedFile file = parse_ini(text, name);
    RunConfig cfg;
    cfg.label = name;

    SectionReader run(file, "run");
    if (!run.present()) throw ConfigError(name + ": missing [run] section");
    {
        auto mode_str = run.take_string("mode");
        if (!mode_str) throw ConfigError(name + ": [run] must set 'mode'");
        try {
            cfg.mode = run_mode_from_string(*mode_str);
        } catch (const ConfigError& e) {
            fail(name, run.last_line(), e.what());
        }
        if (auto v = run.take_u64("seed")) cfg.seed = *v;
        if (auto v = run.take_string("label")) cfg.label = *v;
    }

    SectionReader model(file, "model");
    if (model.present()) {
        if (auto v = model.take_size("n")) cfg.kuramoto.n = *v;
        if (auto v = model.take_quantity("coupling")) cfg.kuramoto.coupling = *v;
        double width = cfg.kuramoto.distribution.width;
        double mean = cfg.kuramoto.distribution.mean;
        DistributionKind kind = cfg.kuramoto.distribution.kind;
        if (auto v = model.take_string("distribution")) {
            try {
                kind = distribution_kind_from_string(*v);
            } catch (const std::exception& e) {
                fail(name, model.last_line(), e.what());
            }
        }
        if (auto v = model.take_quantity("width")) width = *v;
        if (auto v = model.take_quantity("mean")) mean = *v;
        cfg.kuramoto.distribution = FrequencyDistribution{kind, width, mean};
        if (auto v = model.take_quantity("init_phase_spread")) cfg.kuramoto.init_phase_spread = *v;
    }

    SectionReader noise(file, "noise");
    if (noise.present()) {
        if (auto v = noise.take_quantity("sigma")) cfg.noise.sigma = *v;
        if (auto v = noise.take_quantity("gamma")) cfg.noise.gamma = *v;
    }

    SectionReader network(file, "network");
    if (network.present()) {
        if (auto v = network.take_string("topology")) {
            if (*v == "complete") {
                cfg.network.topology = NetworkTopology::Complete;
            } else if (*v == "ring") {
                cfg.network.topology = NetworkTopology::Ring;
            } else if (*v == "random") {
                cfg.network.topology = NetworkTopology::Random;
            } else {
                fail(name, network.last_line(), "unknown topology '" + *v + "'");
            }
        }
        if (auto v = network.take_quantity("edge_coupling")) cfg.network.edge_coupling = *v;
        if (auto v = network.take_size("neighbors")) cfg.network.neighbors = *v;
        if (auto v = network.take_quantity("edge_probability")) cfg.network.edge_probability = *v;
    }

    SectionReader array(file, "array");
    if (array.present()) {
        if (auto v = array.take_size("n")) cfg.array.n = *v;
        if (auto v = array.take_quantity("ic")) cfg.array.ic = *v;
        if (auto v = array.take_quantity("rho")) cfg.array.rho = *v;
        if (auto v = array.take_quantity("ic_spread")) cfg.array.ic_spread = *v;
        if (auto v = array.take_quantity("rho_spread")) cfg.array.rho_spread = *v;
    }
    // Per-junction overrides live in [junction.<index>] sections.
    for (auto& [section, entries] : file.sections) {
        if (section.rfind("junction.", 0) != 0) continue;
        const std::string idx_str = section.substr(9);
        char* end = nullptr;
        const unsigned long idx = std::strtoul(idx_str.c_str(), &end, 10);
        if (end == idx_str.c_str() || *end != '\0') {
            fail(name, file.section_lines.at(section), "bad junction index '" + idx_str + "'");
        }
        SectionReader jr(file, section);
        JunctionOverride ov;
        if (auto v = jr.take_quantity("ic")) ov.ic = *v;
        if (auto v = jr.take_quantity("rho")) ov.rho = *v;
        cfg.array.overrides[static_cast<std::size_t>(idx)] = ov;
        (void)entries;
    }

    SectionReader load(file, "load");
    if (load.present()) {
        if (auto v = load.take_quantity("inductance")) cfg.load.inductance = *v;
        if (auto v = load.take_quantity("resistance")) cfg.load.resistance = *v;
        if (auto v = load.take_quantity("capacitance")) cfg.load.capacitance = *v;
    }

    SectionReader bias(file, "bias");
    if (bias.present()) {
        if (auto v = bias.take_quantity("current")) cfg.bias_current = *v;
    }

    SectionReader jj(file, "jj");
    if (jj.present()) {
        if (auto v = jj.take_quantity("coupling_scale")) cfg.coupling_scale = *v;
        if (auto v = jj.take_quantity("band_tolerance")) cfg.band_tolerance = *v;
        if (auto v = jj.take_bool("precharge_load")) cfg.precharge_load = *v;
        if (auto v = jj.take_quantity("init_phase_spread")) cfg.jj_init_phase_spread = *v;
    }

    SectionReader sweep(file, "sweep");
    if (sweep.present()) {
        if (auto v = sweep.take_quantity("k_min")) cfg.sweep.k_min = *v;
        if (auto v = sweep.take_quantity("k_max")) cfg.sweep.k_max = *v;
        if (auto v = sweep.take_size("points")) cfg.sweep.points = *v;
        if (auto v = sweep.take_quantity("onset_offset")) cfg.sweep.onset_offset = *v;
    }

    SectionReader integration(file, "integration");
    bool have_dt = false;
    if (integration.present()) {
        if (auto v = integration.take_quantity("dt")) {
            cfg.integration.dt = *v;
            have_dt = true;
        }
        if (auto v = integration.take_quantity("t_end")) cfg.integration.t_end = *v;
        if (auto v = integration.take_size("record_every")) cfg.integration.record_every = *v;
    }
    cfg.dt_explicit = have_dt;
    if (!have_dt && cfg.is_kuramoto_mode()) cfg.integration.dt = 1e-3;
    if (!have_dt && cfg.mode == RunMode::Sweep) cfg.integration.dt = 1e-2;

    SectionReader analysis(file, "analysis");
    if (analysis.present()) {
        if (auto v = analysis.take_quantity("tail_fraction")) cfg.tail_fraction = *v;
        if (auto v = analysis.take_quantity("r_threshold")) cfg.r_threshold = *v;
    }

    SectionReader output(file, "output");
    if (output.present()) {
        if (auto v = output.take_string("dir")) cfg.output.dir = *v;
        if (auto v = output.take_bool("phase_dump")) cfg.output.phase_dump = *v;
    }

    check_all_used(file);
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    RunConfig cfg = from_text(text.str(), path);
    // Parse errors anchor to the full path; artifacts are named by the stem.
    if (cfg.label == path) cfg.label = std::filesystem::path(path).stem().string();
    return cfg;
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    for (const auto& note : provenance) out << "# " << note << "\n";

    out << "[run]\n";
    out << "mode = " << to_string(mode) << "\n";
    out << "seed = " << seed << "\n";
    if (!label.empty()) out << "label = " << label << "\n";
    out << "\n";

    if (is_kuramoto_mode() || mode == RunMode::Sweep) {
        out << "[model]\n";
        out << "n = " << kuramoto.n << "\n";
        if (mode != RunMode::Sweep && mode != RunMode::KuramotoNetwork) {
            out << "coupling = " << format_double(kuramoto.coupling) << "\n";
        }
        out << "distribution = " << ksync::to_string(kuramoto.distribution.kind) << "\n";
        out << "width = " << format_double(kuramoto.distribution.width) << "\n";
        out << "mean = " << format_double(kuramoto.distribution.mean) << "\n";
        out << "init_phase_spread = " << format_double(kuramoto.init_phase_spread) << "\n";
        out << "\n";
    }
    if (mode == RunMode::KuramotoNoise) {
        out << "[noise]\n";
        out << "sigma = " << format_double(noise.sigma) << "\n";
        out << "gamma = " << format_double(noise.gamma) << "\n\n";
    }
    if (mode == RunMode::KuramotoNetwork) {
        out << "[network]\n";
        out << "topology = " << to_string(network.topology) << "\n";
        out << "edge_coupling = " << format_double(network.edge_coupling) << "\n";
        if (network.topology == NetworkTopology::Ring) {
            out << "neighbors = " << network.neighbors << "\n";
        }
        if (network.topology == NetworkTopology::Random) {
            out << "edge_probability = " << format_double(network.edge_probability) << "\n";
        }
        out << "\n";
    }
    if (is_jj_mode()) {
        out << "[array]\n";
        out << "n = " << array.n << "\n";
        out << "ic = " << format_double(array.ic) << "\n";
        out << "rho = " << format_double(array.rho) << "\n";
        out << "ic_spread = " << format_double(array.ic_spread) << "\n";
        out << "rho_spread = " << format_double(array.rho_spread) << "\n";
        out << "\n";
        for (const auto& [idx, ov] : array.overrides) {
            out << "[junction." << idx << "]\n";
            if (ov.ic) out << "ic = " << format_double(*ov.ic) << "\n";
            if (ov.rho) out << "rho = " << format_double(*ov.rho) << "\n";
            out << "\n";
        }
        out << "[load]\n";
        out << "inductance = " << format_double(load.inductance) << "\n";
        out << "resistance = " << format_double(load.resistance) << "\n";
        out << "capacitance = " << format_double(load.capacitance) << "\n";
        out << "\n";
        out << "[bias]\n";
        out << "current = " << format_double(bias_current) << "\n";
        out << "\n";
        out << "[jj]\n";
        out << "coupling_scale = " << format_double(coupling_scale) << "\n";
        out << "band_tolerance = " << format_double(band_tolerance) << "\n";
        out << "precharge_load = " << bool_str(precharge_load) << "\n";
        out << "init_phase_spread = " << format_double(jj_init_phase_spread) << "\n";
        out << "\n";
    }
    if (mode == RunMode::Sweep) {
        out << "[sweep]\n";
        out << "k_min = " << format_double(sweep.k_min) << "\n";
        out << "k_max = " << format_double(sweep.k_max) << "\n";
        out << "points = " << sweep.points << "\n";
        out << "onset_offset = " << format_double(sweep.onset_offset) << "\n";
        out << "\n";
    }

    out << "[integration]\n";
    out << "dt = " << format_double(integration.dt) << "\n";
    out << "t_end = " << format_double(integration.t_end) << "\n";
    out << "record_every = " << integration.record_every << "\n";
    out << "\n";
    out << "[analysis]\n";
    out << "tail_fraction = " << format_double(tail_fraction) << "\n";
    out << "r_threshold = " << format_double(r_threshold) << "\n";
    out << "\n";
    out << "[output]\n";
    out << "dir = " << output.dir << "\n";
    out << "phase_dump = " << bool_str(output.phase_dump) << "\n";
    return out.str();
}

}  // namespace ksync::cli
