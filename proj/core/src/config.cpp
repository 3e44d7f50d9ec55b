#include "sphc/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sphc/errors.hpp"

namespace sphc {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    std::ostringstream out;
    out << "config error";
    if (line > 0) out << " at line " << line;
    out << ": " << msg;
    throw ConfigError(out.str());
}

double parse_double(const std::string& value, int line, const std::string& key) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        fail(line, "value of '" + key + "' is not a number: '" + value + "'");
    }
    if (pos != value.size())
        fail(line, "trailing characters in value of '" + key + "': '" + value + "'");
    if (!std::isfinite(v)) fail(line, "value of '" + key + "' must be finite");
    return v;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(value, &pos);
    } catch (const std::exception&) {
        fail(line, "value of '" + key + "' is not an integer: '" + value + "'");
    }
    if (pos != value.size())
        fail(line, "trailing characters in value of '" + key + "': '" + value + "'");
    return static_cast<int>(v);
}

struct Entry {
    std::string value;
    int line = 0;
};

}  // namespace

RunConfig parse_config(const std::string& text) {
    std::map<std::string, Entry> entries;
    {
        std::istringstream in(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            const size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const std::string line = trim(raw);
            if (line.empty()) continue;
            const size_t eq = line.find('=');
            if (eq == std::string::npos)
                fail(line_no, "expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) fail(line_no, "empty key");
            if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
            if (entries.count(key))
                fail(line_no, "duplicate key '" + key + "' (first at line " +
                                  std::to_string(entries[key].line) + ")");
            entries[key] = {value, line_no};
        }
    }

    RunConfig cfg;
    std::set<std::string> seen;
    auto take = [&](const std::string& key) -> const Entry* {
        auto it = entries.find(key);
        if (it == entries.end()) return nullptr;
        seen.insert(key);
        return &it->second;
    };
    auto take_double = [&](const std::string& key) -> std::optional<double> {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        return parse_double(e->value, e->line, key);
    };
    auto take_int = [&](const std::string& key) -> std::optional<int> {
        const Entry* e = take(key);
        if (!e) return std::nullopt;
        return parse_int(e->value, e->line, key);
    };
    auto require_double = [&](const std::string& key) {
        auto v = take_double(key);
        if (!v) fail(0, "missing required key '" + key + "'");
        return *v;
    };

    // cavity
    cfg.system.cavity.length = require_double("cavity.length");
    cfg.system.cavity.cap_per_len = require_double("cavity.cap_per_len");
    const auto ind = take_double("cavity.ind_per_len");
    const auto z0 = take_double("cavity.z0");
    if (ind && z0)
        fail(0, "give either cavity.ind_per_len or cavity.z0, not both");
    if (ind) {
        cfg.system.cavity.ind_per_len = *ind;
    } else if (z0) {
        // l = Z0^2 c
        cfg.system.cavity.ind_per_len = (*z0) * (*z0) * cfg.system.cavity.cap_per_len;
    } else {
        fail(0, "missing cavity inductance: set cavity.ind_per_len or cavity.z0");
    }
    cfg.system.cavity.loss_per_len = take_double("cavity.loss_per_len").value_or(0.0);

    auto read_resistor = [&](const std::string& prefix, ResistorParams& r) {
        r.resistance = require_double(prefix + ".resistance");
        r.position_fraction = require_double(prefix + ".position_fraction");
        r.volume = require_double(prefix + ".volume");
        r.sigma_ep = require_double(prefix + ".sigma_ep");
        r.coupling_override = take_double(prefix + ".coupling_override");
    };
    read_resistor("resistor1", cfg.system.resistor1);
    read_resistor("resistor2", cfg.system.resistor2);

    cfg.system.bath_temperature = require_double("bath_temperature");
    cfg.system.n_modes = take_int("n_modes").value_or(10);
    cfg.system.n_photons_max = take_int("n_photons_max").value_or(50);

    if (const Entry* e = take("coupling_mode")) {
        if (e->value == "explicit") cfg.coupling_mode = CouplingMode::explicit_rate;
        else if (e->value == "geometric") cfg.coupling_mode = CouplingMode::geometric;
        else fail(e->line, "coupling_mode must be 'explicit' or 'geometric'");
    }
    if (const Entry* e = take("model")) {
        if (e->value == "quantum") cfg.model = ModelChoice::quantum;
        else if (e->value == "two_level") cfg.model = ModelChoice::two_level;
        else if (e->value == "semiclassical") cfg.model = ModelChoice::semiclassical;
        else if (e->value == "all") cfg.model = ModelChoice::all;
        else fail(e->line, "model must be quantum, two_level, semiclassical or all");
    }
    if (const Entry* e = take("t2_rule")) {
        if (e->value == "self_consistent") cfg.t2_rule = T2Rule::self_consistent;
        else if (e->value == "offset") cfg.t2_rule = T2Rule::offset;
        else fail(e->line, "t2_rule must be 'self_consistent' or 'offset'");
    }
    cfg.t2_offset = take_double("t2_offset").value_or(0.0);
    cfg.t1 = take_double("t1");
    if (const Entry* e = take("output")) cfg.output_path = e->value;

    const bool any_sweep = entries.count("sweep.start") || entries.count("sweep.stop") ||
                           entries.count("sweep.points") || entries.count("sweep.variable");
    if (any_sweep) {
        SweepSpec sw;
        if (const Entry* e = take("sweep.variable")) {
            if (e->value != "t1") fail(e->line, "sweep.variable: only 't1' is supported");
            sw.variable = e->value;
        }
        auto start = take_double("sweep.start");
        auto stop = take_double("sweep.stop");
        auto points = take_int("sweep.points");
        if (!start || !stop || !points)
            fail(0, "incomplete sweep block: sweep.start, sweep.stop and sweep.points are all required");
        sw.start = *start;
        sw.stop = *stop;
        sw.points = *points;
        cfg.sweep = sw;
    }

    cfg.numeric.n_nodes = take_int("numeric.n_nodes").value_or(100);
    cfg.numeric.quadrature_tol = take_double("numeric.quadrature_tol").value_or(1e-6);
    cfg.numeric.fixed_point_tol = take_double("numeric.fixed_point_tol").value_or(1e-9);
    cfg.numeric.max_iterations = take_int("numeric.max_iterations").value_or(1000);

    for (const auto& [key, entry] : entries)
        if (!seen.count(key)) fail(entry.line, "unknown key '" + key + "'");

    // cross-field validation
    cfg.system.validate();
    const bool has1 = cfg.system.resistor1.coupling_override.has_value();
    const bool has2 = cfg.system.resistor2.coupling_override.has_value();
    if (cfg.coupling_mode == CouplingMode::explicit_rate && !(has1 && has2))
        fail(0, "coupling_mode = explicit requires resistor1.coupling_override and resistor2.coupling_override");
    if (cfg.coupling_mode == CouplingMode::geometric && (has1 || has2))
        fail(0, "coupling_override conflicts with coupling_mode = geometric");
    if (cfg.sweep) {
        if (!(cfg.sweep->start < cfg.sweep->stop))
            fail(0, "sweep.start must be < sweep.stop");
        if (cfg.sweep->points < 2) fail(0, "sweep.points must be >= 2");
        if (cfg.sweep->start <= 0.0) fail(0, "sweep.start must be > 0");
    }
    if (cfg.t1 && *cfg.t1 <= 0.0) fail(0, "t1 must be > 0");
    if (cfg.t2_offset < 0.0) fail(0, "t2_offset must be >= 0");
    if (cfg.t2_rule == T2Rule::offset) {
        const double lowest = cfg.sweep ? cfg.sweep->start : cfg.t1.value_or(0.0);
        if (lowest > 0.0 && lowest - cfg.t2_offset <= 0.0)
            fail(0, "t2_offset too large: t1 - offset must stay > 0 across the run");
    }
    if (cfg.numeric.n_nodes < 10) fail(0, "numeric.n_nodes must be >= 10");
    if (cfg.numeric.quadrature_tol <= 0.0) fail(0, "numeric.quadrature_tol must be > 0");
    if (cfg.numeric.fixed_point_tol <= 0.0) fail(0, "numeric.fixed_point_tol must be > 0");
    if (cfg.numeric.max_iterations < 1) fail(0, "numeric.max_iterations must be >= 1");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& config) {
    std::ostringstream out;
    out.precision(17);
    auto kv = [&out](const std::string& key, auto value) {
        out << key << " = " << value << "\n";
    };
    kv("cavity.length", config.system.cavity.length);
    kv("cavity.cap_per_len", config.system.cavity.cap_per_len);
    kv("cavity.ind_per_len", config.system.cavity.ind_per_len);
    kv("cavity.loss_per_len", config.system.cavity.loss_per_len);
    auto resistor = [&](const std::string& prefix, const ResistorParams& r) {
        kv(prefix + ".resistance", r.resistance);
        kv(prefix + ".position_fraction", r.position_fraction);
        kv(prefix + ".volume", r.volume);
        kv(prefix + ".sigma_ep", r.sigma_ep);
        if (r.coupling_override) kv(prefix + ".coupling_override", *r.coupling_override);
    };
    resistor("resistor1", config.system.resistor1);
    resistor("resistor2", config.system.resistor2);
    kv("bath_temperature", config.system.bath_temperature);
    kv("n_modes", config.system.n_modes);
    kv("n_photons_max", config.system.n_photons_max);
    kv("coupling_mode",
       config.coupling_mode == CouplingMode::explicit_rate ? "explicit" : "geometric");
    switch (config.model) {
        case ModelChoice::quantum: kv("model", "quantum"); break;
        case ModelChoice::two_level: kv("model", "two_level"); break;
        case ModelChoice::semiclassical: kv("model", "semiclassical"); break;
        case ModelChoice::all: kv("model", "all"); break;
    }
    kv("t2_rule", config.t2_rule == T2Rule::offset ? "offset" : "self_consistent");
    kv("t2_offset", config.t2_offset);
    if (config.t1) kv("t1", *config.t1);
    kv("output", config.output_path);
    if (config.sweep) {
        kv("sweep.variable", config.sweep->variable);
        kv("sweep.start", config.sweep->start);
        kv("sweep.stop", config.sweep->stop);
        kv("sweep.points", config.sweep->points);
    }
    kv("numeric.n_nodes", config.numeric.n_nodes);
    kv("numeric.quadrature_tol", config.numeric.quadrature_tol);
    kv("numeric.fixed_point_tol", config.numeric.fixed_point_tol);
    kv("numeric.max_iterations", config.numeric.max_iterations);
    return out.str();
}

}  // namespace sphc
