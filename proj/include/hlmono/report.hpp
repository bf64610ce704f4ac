#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hlmono {

struct ReportEntry {
    std::string name;  ///< suite-qualified, e.g. "angle.el_residual"
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string name;
    std::vector<ReportEntry> entries;
    double seconds = 0.0;  ///< wall clock; kept out of report.json so reports stay reproducible

    void add(const std::string& entry, double value, double tolerance);
    bool pass() const;
};

struct DensityTable {
    std::vector<double> radii, density, area;
    std::vector<char> reliable;
};

struct VerificationReport {
    std::map<std::string, std::string> surface;  ///< generator parameters, as configured
    std::size_t nodes = 0;
    std::size_t triangles = 0;
    double mesh_size = 0.0;
    std::vector<SuiteResult> suites;
    std::optional<DensityTable> density;
    std::map<int, double> theta0;
    std::map<std::string, double> constants;

    bool pass() const;
    /// Replaces the tolerance of every entry named in `overrides` and re-evaluates it.
    void apply_tolerances(const std::map<std::string, double>& overrides);
};

/// Deterministic JSON text: keys sorted, reals in shortest round-trip form.
std::string report_json(const VerificationReport& report);

void write_density_csv(const DensityTable& table, std::ostream& out);
/// name,value,tolerance,pass for every entry of every suite.
void write_entries_csv(const VerificationReport& report, std::ostream& out);

/// report.json, entries.csv, density.csv (when present) and timings.csv.
void write_report(const VerificationReport& report, const std::filesystem::path& dir);

/// Human-readable table of a stored report.json.
std::string summarize_report(std::istream& json);

}  // namespace hlmono
