#include "hlmono/run.hpp"

#include "hlmono/identities.hpp"
#include "hlmono/mesh_io.hpp"
#include "hlmono/monotonicity.hpp"
#include "hlmono/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace hlmono {

namespace {

constexpr double kPi = std::numbers::pi;
// Closed-form comparisons (densities, weights, ratios) are relative.
constexpr double kClosedFormTolerance = 1e-2;
constexpr double kBalanceTolerance = 1e-2;
constexpr double kMaslovRounding = 0.1;
// Largest accepted c_upper max(1, c_lower) over a radii sweep.
constexpr double kSweepBound = 1e3;
constexpr double kConclusionTolerance = 1e-8;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_real(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(text.substr(used)) != "") throw ConfigError(key + ": not a number: '" + text + "'");
    return v;
}

int to_int(const std::string& key, const std::string& text) {
    const double v = to_real(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(key + ": not an integer: '" + text + "'");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes") return true;
    if (text == "0" || text == "false" || text == "no") return false;
    throw ConfigError(key + ": not a boolean: '" + text + "'");
}

const std::map<std::string, std::map<std::string, std::string>>& surface_defaults() {
    static const std::map<std::string, std::map<std::string, std::string>> d{
        {"plane",
         {{"angular", "128"}, {"rings_per_octave", "0"}, {"inner_octave", "-8"}, {"outer_octave", "2"},
          {"rotation", "0, 0, 0"}}},
        {"sw_cone",
         {{"p", "2"}, {"q", "1"}, {"angular", "128"}, {"rings_per_octave", "0"}, {"inner_octave", "-8"},
          {"outer_octave", "2"}, {"tip_fan", "1"}}},
        {"lagrangian_graph", {{"potential", "cubic_x1"}, {"amplitude", "1"}, {"half_width", "1"}, {"cells", "64"}}},
        {"euclidean_minimal",
         {{"minimal", "plane"}, {"angular", "128"}, {"rings_per_octave", "0"}, {"inner_octave", "-8"},
          {"outer_octave", "2"}, {"neck", "1"}, {"half_height", "2.8"}, {"axial", "160"}}},
        {"file", {{"mesh", ""}}},
    };
    return d;
}

std::vector<std::string> applicable_suites(bool euclidean) {
    if (euclidean) return {"monotonicity", "classical"};
    return {"angle", "identities", "monotonicity", "bernstein"};
}

PolarResolution polar(const std::map<std::string, std::string>& p) {
    PolarResolution r;
    r.angular = to_int("angular", p.at("angular"));
    r.rings_per_octave = to_int("rings_per_octave", p.at("rings_per_octave"));
    r.inner_octave = to_int("inner_octave", p.at("inner_octave"));
    r.outer_octave = to_int("outer_octave", p.at("outer_octave"));
    if (auto it = p.find("tip_fan"); it != p.end()) r.tip_fan = to_bool("tip_fan", it->second);
    return r;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double relative_error(double value, double truth) { return std::abs(value - truth) / std::abs(truth); }

struct Context {
    const RunConfig& config;
    const ZooSurface& zoo;
    double h = 0.0;
    double covered = 0.0;
    std::optional<AngleForm> form;
    std::optional<std::map<int, double>> weights;

    const SurfaceMesh& mesh() const { return zoo.mesh; }
    bool has_truth() const { return zoo.truth.origin_weight > 0.0 || zoo.truth.density > 0.0; }
    double weak_tolerance() const { return std::max(IdentityTolerances{}.weak_factor * h, IdentityTolerances{}.floor); }

    const std::map<int, double>& theta0() {
        if (!weights) weights = theta0_weights(mesh());
        return *weights;
    }
    double theta0_total() {
        double s = 0.0;
        for (const auto& [p, w] : theta0()) s += w;
        return s;
    }
};

void angle_suite(Context& ctx, SuiteResult& s, VerificationReport& rep) {
    const ElResidual el = el_residual(ctx.mesh(), *ctx.form);
    s.add("el_residual", el.el_norm, ctx.weak_tolerance());
    rep.constants["el_gauss_norm"] = el.gauss_norm;
    rep.constants["el_harmonic_norm"] = el.harmonic_norm;
    if (ctx.zoo.rings.empty()) return;
    const std::vector<int>& loop = ctx.zoo.rings[ctx.zoo.rings.size() / 2];
    const MaslovResult m = maslov_index(ctx.mesh(), *ctx.form, loop);
    s.add("maslov_rounding", m.rounding_residual, kMaslovRounding);
    rep.constants["maslov_index"] = m.index;
    if (ctx.config.surface == "sw_cone" || ctx.config.surface == "plane") {
        const auto params = surface_parameters(ctx.config);
        const int expected = ctx.config.surface == "plane"
                                 ? 0
                                 : to_int("p", params.at("p")) - to_int("q", params.at("q"));
        s.add("maslov_index_error", std::abs(m.index - expected), 0.0);
    }
}

void identities_suite(Context& ctx, SuiteResult& s) {
    const SurfaceMesh& mesh = ctx.mesh();
    IdentityReport ir = check_pointwise_identities(mesh, &*ctx.form);
    const std::vector<TestFunction> tests = default_tests(mesh);
    DivIdentityOptions opts;
    for (const auto& [p, w] : ctx.theta0()) opts.origin_weights[p] = w;
    ir.merge(check_div_identity(mesh, *ctx.form, tests, opts));
    for (const auto& [name, e] : ir.entries) s.add(name, e.value, e.tolerance);
    for (const auto& t : tests) s.add("k2[" + t.name + "]", check_k2(mesh, *ctx.form, t), ctx.weak_tolerance());
}

void monotonicity_suite(Context& ctx, SuiteResult& s, VerificationReport& rep) {
    const SurfaceMesh& mesh = ctx.mesh();
    const GroundTruth& truth = ctx.zoo.truth;
    const DensityReport d = density_curve(mesh, ctx.config.radii);
    rep.density = DensityTable{d.radii, d.density, d.area, d.reliable};
    if (truth.density > 0.0) {
        double worst = 0.0;
        for (std::size_t k = 0; k < d.radii.size(); ++k)
            if (d.reliable[k]) worst = std::max(worst, relative_error(d.density[k], truth.density));
        s.add("density_error", worst, kClosedFormTolerance);
    }

    rep.theta0 = ctx.theta0();
    for (const auto& [p, w] : rep.theta0) {
        const std::string tag = "[" + std::to_string(p) + "]";
        if (truth.origin_weight > 0.0)
            s.add("theta0_error" + tag, relative_error(w, truth.origin_weight), kClosedFormTolerance);
        else
            s.add("theta0_deficit" + tag, std::max(0.0, 1.0 - w / (2.0 * kPi)), kClosedFormTolerance);
    }
    rep.constants["theta0_total"] = ctx.theta0_total();
    if (!mesh.is_heisenberg()) return;

    const CutoffSpec chi = make_cutoff(CutoffKind::main);
    const double r_balance = std::min(0.5, ctx.covered / chi.end);
    const BalanceTerms b = k10_balance(mesh, &*ctx.form, r_balance, chi, ctx.theta0_total());
    s.add("k10_residual", b.residual, kBalanceTolerance);
    if (b.angle_gap) s.add("k10_angle_gap", *b.angle_gap, ctx.weak_tolerance());
    rep.constants["k10_radius"] = r_balance;

    const DirichletSigma ds = dirichlet_sigma(mesh, std::min(1.0, ctx.covered));
    s.add("dirichlet_discrepancy", ds.discrepancy / (1.0 + ds.sigma_term), std::max(ctx.h, 1e-10));
    rep.constants["dirichlet_sigma"] = ds.sigma_term;
    rep.constants["dirichlet_normal"] = ds.normal_term;

    if (ctx.covered < 2.0) return;
    const LemmaBound lemma = lemma_density_bound(mesh);
    rep.constants["lemma_ratio"] = lemma.ratio;
    // sigma = 0 on every closed-form zoo surface with a known density.
    if (truth.density > 0.0) s.add("lemma_ratio_error", relative_error(lemma.ratio, 2.0 / 3.0), kClosedFormTolerance);

    std::vector<double> inner;
    for (double r : ctx.config.radii)
        if (r < 1.0) inner.push_back(r);
    if (inner.empty()) return;
    const MainTheoremCheck mt = main_theorem_check(mesh, inner);
    s.add("main_theorem_bound", mt.bounded ? mt.sweep_bound : std::numeric_limits<double>::infinity(), kSweepBound);
    double up = 0.0, low = 0.0;
    for (const auto& row : mt.rows) {
        up = std::max(up, row.c_upper);
        low = std::max(low, row.c_lower);
    }
    rep.constants["c_upper_max"] = up;
    rep.constants["c_lower_max"] = low;
    if (truth.density > 0.0) {
        double eu = 0.0, el = 0.0;
        for (const auto& row : mt.rows) {
            eu = std::max(eu, relative_error(row.c_upper, 4.0 / 15.0));
            el = std::max(el, relative_error(row.c_lower, 2.0));
        }
        s.add("main_theorem_upper_error", eu, kClosedFormTolerance);
        s.add("main_theorem_lower_error", el, kClosedFormTolerance);
    }
}

void bernstein_suite(Context& ctx, SuiteResult& s, VerificationReport& rep) {
    std::vector<double> radii;
    for (double r : ctx.config.radii)
        if (2.0 * r <= ctx.covered) radii.push_back(r);
    if (radii.empty()) throw ConfigError("bernstein: no radius r with {gauge < 2r} inside the mesh");
    const BernsteinCheck b = bernstein_check(ctx.mesh(), radii);
    double worst = 0.0;
    for (const auto& row : b.rows) worst = std::max(worst, row.residual);
    s.add("balance_residual", worst, kBalanceTolerance);
    rep.constants["bernstein_plane_like"] = b.plane_like ? 1.0 : 0.0;
    rep.constants["bernstein_mean_last"] = b.rows.back().annulus_mean;
    const GroundTruth& truth = ctx.zoo.truth;
    if (truth.density > 0.0) {
        double err = 0.0;
        for (const auto& row : b.rows) err = std::max(err, relative_error(row.annulus_mean, 2.0 * truth.density));
        s.add("annulus_mean_error", err, kClosedFormTolerance);
        const bool expected = std::abs(truth.density - kPi) < 1e-12;
        s.add("verdict_mismatch", b.plane_like == expected ? 0.0 : 1.0, 0.0);
    }
    if (b.conclusion_energy) s.add("conclusion_energy", *b.conclusion_energy, kConclusionTolerance);
}

void classical_suite(Context& ctx, SuiteResult& s, VerificationReport& rep) {
    const ClassicalCheck c = classical_monotonicity(ctx.mesh(), ctx.config.radii);
    s.add("identity_residual", c.max_residual, kClosedFormTolerance);
    s.add("density_monotone", c.monotone ? 0.0 : 1.0, 0.0);
    rep.constants["minimality_residual"] = c.minimality_residual;
    rep.constants["origin_count"] = c.origin_count;
}

}  // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> sweep_radii(double r0, int count) {
    std::vector<double> radii;
    for (int k = 0; k < count; ++k) radii.push_back(r0 * std::exp2(0.5 * k));
    return radii;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "surface") {
        if (!surface_defaults().count(value)) throw ConfigError("surface: unknown kind '" + value + "'");
        config.surface = value;
    } else if (key == "suites") {
        config.suites = split_list(value);
    } else if (key == "radii") {
        config.radii.clear();
        std::istringstream in(value);
        std::string head;
        in >> head;
        if (head == "sweep") {
            std::string r0, n;
            if (!(in >> r0 >> n)) throw ConfigError("radii: expected 'sweep <r0> <count>'");
            const double start = to_real("radii", r0);
            const int count = to_int("radii", n);
            if (count < 1) throw ConfigError("radii: sweep needs a positive count");
            config.radii = sweep_radii(start, count);
        } else {
            for (const auto& item : split_list(value)) config.radii.push_back(to_real("radii", item));
        }
    } else if (key.rfind("tolerance.", 0) == 0) {
        config.tolerances[key.substr(10)] = to_real(key, value);
    } else if (key == "out") {
        config.out = value;
    } else if (key == "threads") {
        const int n = to_int(key, value);
        if (n < 0) throw ConfigError("threads: must be nonnegative");
        config.threads = static_cast<unsigned>(n);
    } else {
        bool known = false;
        for (const auto& [kind, params] : surface_defaults()) known = known || params.count(key);
        if (!known) throw ConfigError("unknown configuration key '" + key + "'");
        config.params[key] = value;
    }
}

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig config;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(number) + ": expected key = value");
        try {
            apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(number) + ": " + e.what());
        }
    }
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read configuration " + path.string());
    return parse_config(in, path.string());
}

std::map<std::string, std::string> surface_parameters(const RunConfig& config) {
    const auto& defaults = surface_defaults().at(config.surface);
    std::map<std::string, std::string> out = defaults;
    for (const auto& [k, v] : config.params) {
        if (!defaults.count(k)) throw ConfigError("key '" + k + "' does not apply to surface " + config.surface);
        out[k] = v;
    }
    out["surface"] = config.surface;
    return out;
}

void validate(const RunConfig& config) {
    surface_parameters(config);
    if (config.surface == "file" && !config.params.count("mesh")) throw ConfigError("surface file needs mesh = <path>");
    std::set<std::string> seen;
    for (const auto& s : config.suites) {
        if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
            throw ConfigError("unknown suite '" + s + "'");
        if (!seen.insert(s).second) throw ConfigError("suite '" + s + "' listed twice");
    }
    if (config.radii.empty()) throw ConfigError("radii: empty sweep");
    for (std::size_t k = 0; k < config.radii.size(); ++k)
        if (!(config.radii[k] > 0.0) || (k > 0 && !(config.radii[k] > config.radii[k - 1])))
            throw ConfigError("radii must be positive and strictly increasing");
}

ZooSurface build_surface(const RunConfig& config) {
    const auto p = surface_parameters(config);
    if (config.surface == "plane") {
        const auto angles = split_list(p.at("rotation"));
        if (angles.size() != 3) throw ConfigError("rotation: expected three angles");
        const Eigen::Matrix4d U = unitary_rotation(to_real("rotation", angles[0]), to_real("rotation", angles[1]),
                                                   to_real("rotation", angles[2]));
        return make_plane(U * Vec4(1, 0, 0, 0), U * Vec4(0, 0, 1, 0), polar(p));
    }
    if (config.surface == "sw_cone") {
        const int a = to_int("p", p.at("p")), b = to_int("q", p.at("q"));
        if (a < 1 || b < 1) throw ConfigError("sw_cone: p and q must be positive");
        return make_sw_cone(a, b, polar(p));
    }
    if (config.surface == "lagrangian_graph") {
        Potential pot;
        try {
            pot = parse_potential(p.at("potential"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return make_lagrangian_graph(pot, to_real("amplitude", p.at("amplitude")),
                                     to_real("half_width", p.at("half_width")), to_int("cells", p.at("cells")));
    }
    if (config.surface == "euclidean_minimal") {
        ClassicalKind kind;
        try {
            kind = parse_classical(p.at("minimal"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        CatenoidResolution cat;
        cat.neck = to_real("neck", p.at("neck"));
        cat.half_height = to_real("half_height", p.at("half_height"));
        cat.axial = to_int("axial", p.at("axial"));
        if (config.params.count("angular")) cat.angular = to_int("angular", p.at("angular"));
        return make_classical_minimal(kind, polar(p), cat);
    }
    ZooSurface z;
    z.mesh = load_mesh(p.at("mesh"));
    return z;
}

VerificationReport run(const RunConfig& input) {
    RunConfig config = input;
    validate(config);
    unsigned threads = config.threads;
    if (threads == 0)
        if (const char* env = std::getenv("HLMONO_THREADS")) threads = static_cast<unsigned>(std::max(0, std::atoi(env)));
    set_thread_count(threads);

    const ZooSurface zoo = build_surface(config);
    const bool euclidean = !zoo.mesh.is_heisenberg();
    const std::vector<std::string> allowed = applicable_suites(euclidean);
    if (config.suites.empty()) config.suites = allowed;
    for (const auto& s : config.suites)
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end())
            throw ConfigError("suite '" + s + "' does not apply to a " +
                              std::string(euclidean ? "euclidean" : "heisenberg2") + " surface");

    VerificationReport rep;
    rep.surface = surface_parameters(config);
    rep.nodes = zoo.mesh.node_count();
    rep.triangles = zoo.mesh.triangle_count();
    Context ctx{config, zoo, 0.0, 0.0, std::nullopt, std::nullopt};
    ctx.h = rep.mesh_size = mesh_size(zoo.mesh);
    ctx.covered = meshed_radius(zoo.mesh);
    if (!euclidean) ctx.form = lagrangian_angle_form(zoo.mesh);

    // Dependency order: the angle form feeds identities and the balance laws.
    for (const auto& name : known_suites()) {
        if (std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end()) continue;
        SuiteResult s;
        s.name = name;
        const auto start = Clock::now();
        try {
            if (name == "angle") angle_suite(ctx, s, rep);
            if (name == "identities") identities_suite(ctx, s);
            if (name == "monotonicity") monotonicity_suite(ctx, s, rep);
            if (name == "bernstein") bernstein_suite(ctx, s, rep);
            if (name == "classical") classical_suite(ctx, s, rep);
        } catch (const ConfigError& e) {
            throw ConfigError(name + ": " + e.what());
        } catch (const std::exception& e) {
            throw MeshError(name + ": " + e.what());
        }
        s.seconds = seconds_since(start);
        rep.suites.push_back(std::move(s));
    }
    rep.apply_tolerances(config.tolerances);
    return rep;
}

}  // namespace hlmono
