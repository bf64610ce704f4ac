#include "hlmono/report.hpp"

#include "hlmono/mesh_io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hlmono {

namespace {

using nlohmann::json;

bool within(double value, double tolerance) { return std::isfinite(value) && value <= tolerance; }

// NaN and infinities have no JSON form; they are written as null.
json real(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_for_writing(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

}  // namespace

void SuiteResult::add(const std::string& entry, double value, double tolerance) {
    entries.push_back({name + "." + entry, value, tolerance, within(value, tolerance)});
}

bool SuiteResult::pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

bool VerificationReport::pass() const {
    for (const auto& s : suites)
        if (!s.pass()) return false;
    return true;
}

void VerificationReport::apply_tolerances(const std::map<std::string, double>& overrides) {
    for (auto& s : suites)
        for (auto& e : s.entries)
            if (auto it = overrides.find(e.name); it != overrides.end()) {
                e.tolerance = it->second;
                e.pass = within(e.value, e.tolerance);
            }
}

std::string report_json(const VerificationReport& report) {
    json j;
    j["surface"] = report.surface;
    j["mesh"] = {{"nodes", report.nodes}, {"triangles", report.triangles}, {"h", real(report.mesh_size)}};
    json suites = json::object();
    for (const auto& s : report.suites) {
        json entries = json::array();
        for (const auto& e : s.entries)
            entries.push_back(
                {{"name", e.name}, {"value", real(e.value)}, {"tolerance", real(e.tolerance)}, {"pass", e.pass}});
        suites[s.name] = {{"entries", entries}, {"pass", s.pass()}};
    }
    j["suites"] = suites;
    if (report.density) {
        json rows = json::array();
        const DensityTable& d = *report.density;
        for (std::size_t k = 0; k < d.radii.size(); ++k)
            rows.push_back({{"r", real(d.radii[k])},
                            {"density", real(d.density[k])},
                            {"area", real(d.area[k])},
                            {"reliable", d.reliable[k] != 0}});
        j["density"] = rows;
    }
    json theta = json::object();
    for (const auto& [p, w] : report.theta0) theta[std::to_string(p)] = real(w);
    j["theta0"] = theta;
    json constants = json::object();
    for (const auto& [k, v] : report.constants) constants[k] = real(v);
    j["constants"] = constants;
    j["pass"] = report.pass();
    return j.dump(2) + "\n";
}

void write_density_csv(const DensityTable& table, std::ostream& out) {
    out << "r,density,area,reliable\n";
    for (std::size_t k = 0; k < table.radii.size(); ++k)
        out << format_real(table.radii[k]) << ',' << format_real(table.density[k]) << ','
            << format_real(table.area[k]) << ',' << (table.reliable[k] ? 1 : 0) << '\n';
}

void write_entries_csv(const VerificationReport& report, std::ostream& out) {
    out << "name,value,tolerance,pass\n";
    for (const auto& s : report.suites)
        for (const auto& e : s.entries)
            out << e.name << ',' << format_real(e.value) << ',' << format_real(e.tolerance) << ','
                << (e.pass ? 1 : 0) << '\n';
}

void write_report(const VerificationReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    open_for_writing(dir / "report.json") << report_json(report);
    {
        auto out = open_for_writing(dir / "entries.csv");
        write_entries_csv(report, out);
    }
    if (report.density) {
        auto out = open_for_writing(dir / "density.csv");
        write_density_csv(*report.density, out);
    }
    auto out = open_for_writing(dir / "timings.csv");
    out << "suite,seconds\n";
    for (const auto& s : report.suites) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", s.seconds);
        out << s.name << ',' << buf << '\n';
    }
}

std::string summarize_report(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report: ") + e.what());
    }
    auto num = [](const json& v) {
        if (v.is_null()) return std::string("-");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
        return std::string(buf);
    };
    std::ostringstream out;
    const json surface = j.value("surface", json::object());
    const json suites = j.value("suites", json::object());
    out << "surface:";
    for (const auto& [k, v] : surface.items()) out << ' ' << k << '=' << v.get<std::string>();
    out << '\n';
    if (j.contains("mesh"))
        out << "mesh: " << j["mesh"].value("nodes", 0) << " nodes, " << j["mesh"].value("triangles", 0)
            << " triangles, h " << num(j["mesh"]["h"]) << '\n';
    for (const auto& [name, suite] : suites.items()) {
        out << '\n' << name << (suite.value("pass", false) ? "  pass" : "  FAIL") << '\n';
        for (const auto& e : suite["entries"]) {
            char line[256];
            std::snprintf(line, sizeof line, "  %-48s %14s  tol %-12s %s\n", e["name"].get<std::string>().c_str(),
                          num(e["value"]).c_str(), num(e["tolerance"]).c_str(),
                          e["pass"].get<bool>() ? "ok" : "FAIL");
            out << line;
        }
    }
    if (j.contains("theta0") && !j["theta0"].empty()) {
        out << "\ntheta0:";
        for (const auto& [p, w] : j["theta0"].items()) out << " [" << p << "] " << num(w);
        out << '\n';
    }
    if (j.contains("constants") && !j["constants"].empty()) {
        out << "\nconstants:\n";
        for (const auto& [k, v] : j["constants"].items()) out << "  " << k << " = " << num(v) << '\n';
    }
    out << "\noverall: " << (j.value("pass", false) ? "pass" : "FAIL") << '\n';
    return out.str();
}

}  // namespace hlmono
