#pragma once

#include "hlmono/report.hpp"
#include "hlmono/zoo.hpp"

#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlmono {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names{"angle", "identities", "monotonicity", "bernstein", "classical"};
    return names;
}

/// r0 2^(k/2) for k < count.
std::vector<double> sweep_radii(double r0, int count);

/// Flat key = value configuration; '#' starts a comment.
///
///   surface   plane | sw_cone | lagrangian_graph | euclidean_minimal | file
///   suites    comma-separated subset of known_suites()
///   radii     "r1, r2, ..." or "sweep r0 n" for r0 2^(k/2), k < n
///   tolerance.<entry name>   replaces the tolerance of that report entry
///   out, threads
/// plus the generator parameters of the chosen surface (p, q, angular,
/// rings_per_octave, inner_octave, outer_octave, tip_fan, rotation, potential,
/// amplitude, half_width, cells, minimal, neck, half_height, axial, mesh).
struct RunConfig {
    std::string surface = "plane";
    std::map<std::string, std::string> params;
    std::vector<std::string> suites;
    std::vector<double> radii = sweep_radii(0.1, 7);
    std::map<std::string, double> tolerances;
    std::filesystem::path out = "hlmono-out";
    unsigned threads = 0;  ///< 0 defers to HLMONO_THREADS, then the hardware
};

/// Applies one key = value pair; throws ConfigError on unknown keys or bad values.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);
RunConfig parse_config(std::istream& in, const std::string& source = "config");
RunConfig load_config(const std::filesystem::path& path);
/// Throws ConfigError unless the configuration can be run.
void validate(const RunConfig& config);

std::vector<std::string> split_list(const std::string& text);

/// Generator parameters of a surface (with defaults filled in), as strings.
std::map<std::string, std::string> surface_parameters(const RunConfig& config);
ZooSurface build_surface(const RunConfig& config);

/// Runs the configured suites in dependency order.
VerificationReport run(const RunConfig& config);

}  // namespace hlmono
