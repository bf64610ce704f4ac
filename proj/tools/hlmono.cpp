// hlmono: generate test surfaces, run verification suites, write reports.
//
//   hlmono gen sw_cone p=2 q=1 --out cone.hlmesh
//   hlmono verify --config plane.cfg --out results --threads 4
//   hlmono density surface=plane radii="sweep 0.1 9" --out results
//   hlmono report results
//
// Exit status: 0 all entries pass, 1 some tolerance fails, 2 input error.

#include "hlmono/mesh_io.hpp"
#include "hlmono/monotonicity.hpp"
#include "hlmono/parallel.hpp"
#include "hlmono/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hlmono;

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct CommonOptions {
    std::string config;
    std::string out;
    std::string suites;
    int threads = -1;
    std::vector<std::string> tolerances;
    std::vector<std::string> settings;  // trailing key=value pairs
};

std::pair<std::string, std::string> split_setting(const std::string& s) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("expected key=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

RunConfig assemble(const CommonOptions& o) {
    RunConfig config = o.config.empty() ? RunConfig{} : load_config(o.config);
    for (const auto& s : o.settings) {
        const auto [k, v] = split_setting(s);
        apply_setting(config, k, v);
    }
    for (const auto& t : o.tolerances) {
        const auto [k, v] = split_setting(t);
        apply_setting(config, "tolerance." + k, v);
    }
    if (!o.suites.empty()) apply_setting(config, "suites", o.suites);
    if (!o.out.empty()) config.out = o.out;
    if (o.threads >= 0) config.threads = static_cast<unsigned>(o.threads);
    return config;
}

int cmd_gen(const std::string& kind, const std::vector<std::string>& settings, const std::string& out) {
    RunConfig config;
    apply_setting(config, "surface", kind);
    for (const auto& s : settings) {
        const auto [k, v] = split_setting(s);
        apply_setting(config, k, v);
    }
    const ZooSurface z = build_surface(config);
    save_mesh(z.mesh, out);
    std::printf("wrote %s: %zu nodes, %zu triangles\n", out.c_str(), z.mesh.node_count(), z.mesh.triangle_count());
    return 0;
}

int cmd_verify(const CommonOptions& o) {
    const RunConfig config = assemble(o);
    const VerificationReport rep = run(config);
    write_report(rep, config.out);
    std::istringstream json(report_json(rep));
    std::cout << summarize_report(json);
    for (const auto& s : rep.suites)
        for (const auto& e : s.entries)
            if (!e.pass) std::fprintf(stderr, "tolerance failure: %s\n", e.name.c_str());
    return rep.pass() ? 0 : kExitFail;
}

int cmd_density(const CommonOptions& o) {
    RunConfig config = assemble(o);
    validate(config);
    if (config.threads) set_thread_count(config.threads);
    const ZooSurface z = build_surface(config);
    const DensityReport d = density_curve(z.mesh, config.radii);
    const DensityTable table{d.radii, d.density, d.area, d.reliable};
    std::filesystem::create_directories(config.out);
    const auto path = config.out / "density.csv";
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    write_density_csv(table, file);
    write_density_csv(table, std::cout);
    return 0;
}

int cmd_report(const std::string& where) {
    std::filesystem::path path = where;
    if (std::filesystem::is_directory(path)) path /= "report.json";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::cout << summarize_report(in);
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& o, bool with_suites) {
    cmd->add_option("--config", o.config, "flat key = value configuration file");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--threads", o.threads, "worker threads (0: hardware; default HLMONO_THREADS)");
    if (with_suites) {
        cmd->add_option("--suite", o.suites, "comma-separated suites: angle, identities, monotonicity, bernstein, classical");
        cmd->add_option("--tolerance", o.tolerances, "entry=value tolerance override (repeatable)");
    }
    cmd->add_option("settings", o.settings, "configuration overrides as key=value");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Almost monotonicity checks for Legendrian surfaces in the Heisenberg group"};
    app.require_subcommand(1);

    std::string gen_kind, gen_out;
    std::vector<std::string> gen_settings;
    auto* gen = app.add_subcommand("gen", "write a generated surface as an HLMESH file");
    gen->add_option("kind", gen_kind, "plane | sw_cone | lagrangian_graph | euclidean_minimal")->required();
    gen->add_option("settings", gen_settings, "generator parameters as key=value");
    gen->add_option("--out", gen_out, "output mesh path")->required();

    CommonOptions verify_opts, density_opts;
    auto* verify = app.add_subcommand("verify", "run verification suites and write a report");
    add_common(verify, verify_opts, true);
    auto* density = app.add_subcommand("density", "write the density curve r, r^-2 Area{gauge < r}");
    add_common(density, density_opts, false);

    std::string report_path;
    auto* report = app.add_subcommand("report", "print a stored report");
    report->add_option("path", report_path, "report.json or its directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*gen) return cmd_gen(gen_kind, gen_settings, gen_out);
        if (*verify) return cmd_verify(verify_opts);
        if (*density) return cmd_density(density_opts);
        if (*report) return cmd_report(report_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "hlmono: %s\n", e.what());
        return kExitInput;
    }
    return kExitInput;
}
