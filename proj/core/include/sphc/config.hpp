#pragma once

#include <optional>
#include <string>

#include "sphc/params.hpp"

namespace sphc {

enum class CouplingMode { explicit_rate, geometric };
enum class ModelChoice { quantum, two_level, semiclassical, all };
enum class T2Rule { self_consistent, offset };

struct SweepSpec {
    std::string variable = "t1";  // only t1 sweeps are defined
    double start = 0.0;           // K
    double stop = 0.0;            // K
    int points = 0;
};

struct NumericOptions {
    int n_nodes = 100;
    double quadrature_tol = 1e-6;
    double fixed_point_tol = 1e-9;  // K
    int max_iterations = 1000;
};

/// One experiment: system parameters plus run directives, parsed from a flat
/// `key = value` file with '#' comments and dotted keys.
struct RunConfig {
    SystemParams system;
    CouplingMode coupling_mode = CouplingMode::geometric;
    ModelChoice model = ModelChoice::all;
    std::optional<SweepSpec> sweep;
    T2Rule t2_rule = T2Rule::self_consistent;
    double t2_offset = 0.0;           // K, used when t2_rule == offset
    std::optional<double> t1;         // K, fixed resistor-1 temperature (single solve)
    std::string output_path = "out.csv";
    NumericOptions numeric;
};

/// Parses and fully validates a config. Unknown or duplicate keys, malformed
/// values and violated invariants throw ConfigError with the line number.
/// When `cavity.z0` is given instead of `cavity.ind_per_len`, the inductance
/// is derived as l = Z0^2 c at parse time.
[[nodiscard]] RunConfig parse_config(const std::string& text);

/// Reads the file at `path` and parses it.
[[nodiscard]] RunConfig parse_config_file(const std::string& path);

/// Canonical textual form; parse(serialize(cfg)) reproduces cfg exactly.
[[nodiscard]] std::string serialize_config(const RunConfig& config);

}  // namespace sphc
