#include "hlmono/identities.hpp"

#include "hlmono/parallel.hpp"
#include "hlmono/quadrature.hpp"
#include "hlmono/surface_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hlmono {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// phi = O(r^3) keeps the inner-to-outer ratio of |phi| / r^3 of order one;
// a quadratic phi makes it grow like the inverse mesh size.
constexpr double kCubicOrderTolerance = 8.0;

void require_heisenberg(const SurfaceMesh& mesh, const char* what) {
    if (!mesh.is_heisenberg()) throw MeshError(std::string(what) + ": needs a heisenberg2 mesh");
}

double mean_over(const ScalarField& f, const Triangle& tri) { return (f[tri[0]] + f[tri[1]] + f[tri[2]]) / 3.0; }

double at(const ScalarField& f, const Triangle& tri, const Eigen::Vector3d& b) {
    return b[0] * f[tri[0]] + b[1] * f[tri[1]] + b[2] * f[tri[2]];
}

double relative(double residual, double reference) { return reference > 0.0 ? std::abs(residual) / reference : 0.0; }

// Boundary components by edge connectivity; the one reaching the largest gauge is the outer one.
std::pair<double, double> boundary_radii(const SurfaceMesh& mesh, const ScalarField& g) {
    const std::size_t n = mesh.node_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : mesh.edges())
        if (e.is_boundary()) {
            adj[e.a].push_back(e.b);
            adj[e.b].push_back(e.a);
        }
    std::vector<double> cmin, cmax;
    for (std::size_t s = 0; s < n; ++s) {
        if (!mesh.is_boundary_node(static_cast<int>(s)) || comp[s] >= 0) continue;
        const int c = static_cast<int>(cmin.size());
        cmin.push_back(INFINITY);
        cmax.push_back(0.0);
        std::vector<int> stack{static_cast<int>(s)};
        comp[s] = c;
        while (!stack.empty()) {
            const int i = stack.back();
            stack.pop_back();
            cmin[c] = std::min(cmin[c], g[i]);
            cmax[c] = std::max(cmax[c], g[i]);
            for (int j : adj[i])
                if (comp[j] < 0) {
                    comp[j] = c;
                    stack.push_back(j);
                }
        }
    }
    if (cmin.empty()) throw MeshError("mesh has no boundary to place test functions against");
    const std::size_t outer = std::max_element(cmax.begin(), cmax.end()) - cmax.begin();
    double inner = 0.0;
    for (std::size_t c = 0; c < cmin.size(); ++c)
        if (c != outer) inner = std::max(inner, cmax[c]);
    return {inner, cmin[outer]};
}

bool clear_of(const SurfaceMesh& mesh, const TestFunction& test, const std::vector<int>& origin_dist) {
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        if (test.values[i] == 0.0) continue;
        if (mesh.is_boundary_node(static_cast<int>(i))) return false;
        if (origin_dist[i] >= 0 && origin_dist[i] < 2) return false;
    }
    return true;
}

}  // namespace

std::string norm_kind_name(NormKind k) {
    switch (k) {
        case NormKind::max_interior: return "max_interior";
        case NormKind::weighted_l2: return "weighted_l2";
        case NormKind::weak_pairing: return "weak_pairing";
    }
    return "?";
}

void IdentityReport::add(const std::string& name, double value, NormKind kind, double tolerance) {
    entries[name] = {value, kind, tolerance, value <= tolerance};
}

bool IdentityReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.pass; });
}

void IdentityReport::merge(const IdentityReport& other) {
    for (const auto& [name, entry] : other.entries) entries[name] = entry;
    excision_radius = std::max(excision_radius, other.excision_radius);
}

double IdentityTolerances::resolve(const std::string& name, NormKind kind, double h) const {
    if (auto it = overrides.find(name); it != overrides.end()) return it->second;
    const double factor = kind == NormKind::weak_pairing ? weak_factor : max_interior_factor;
    return std::max(factor * h, floor);
}

TestFunction ambient_bump(const SurfaceMesh& mesh, const AVec& center, double radius, std::string name) {
    TestFunction f{std::move(name), {}};
    f.values.values.resize(mesh.node_count());
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const double d2 = (mesh.position(static_cast<int>(i)) - center).squaredNorm() / (radius * radius);
        const double w = std::max(0.0, 1.0 - d2);
        f.values[i] = w * w * w;
    }
    return f;
}

TestFunction gauge_annulus(const SurfaceMesh& mesh, double lo, double hi, std::string name) {
    if (!(hi > lo)) throw std::invalid_argument("gauge_annulus: empty band");
    TestFunction f{std::move(name), {}};
    const ScalarField g = gauge_field(mesh);
    f.values.values.resize(mesh.node_count());
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const double x = (g[i] - lo) / (hi - lo);
        const double w = x > 0.0 && x < 1.0 ? 4.0 * x * (1.0 - x) : 0.0;
        f.values[i] = w * w * w;
    }
    return f;
}

std::vector<TestFunction> default_tests(const SurfaceMesh& mesh) {
    const ScalarField g = gauge_field(mesh);
    const auto [inner, outer] = boundary_radii(mesh, g);
    const std::vector<int> dist = origin_ring_distance(mesh);
    std::vector<TestFunction> tests;

    double lo = std::max(outer / 8.0, 2.0 * inner), hi = outer / 2.0;
    for (int attempt = 0; attempt < 8 && lo < hi; ++attempt, hi *= 0.8) {
        TestFunction t = gauge_annulus(mesh, lo, hi, "annulus");
        if (clear_of(mesh, t, dist)) {
            tests.push_back(std::move(t));
            break;
        }
    }

    // Centered off every coordinate axis and diagonal, so the pairing cannot
    // vanish by a reflection symmetry of the surface.
    AVec direction(mesh.dim());
    for (int k = 0; k < mesh.dim(); ++k) direction[k] = std::sqrt(static_cast<double>(k + 2)) - 0.9 * k;
    direction.normalize();
    int center = -1;
    double best = INFINITY;
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const AVec& x = mesh.position(static_cast<int>(i));
        const double off_axis = x.norm() > 0.0 ? 1.0 - x.dot(direction) / x.norm() : 2.0;
        const double d = std::abs(g[i] - outer / 3.0) + 0.5 * outer * off_axis;
        if (d < best) {
            best = d;
            center = static_cast<int>(i);
        }
    }
    double radius = outer / 6.0;
    for (int attempt = 0; attempt < 8 && center >= 0; ++attempt, radius *= 0.5) {
        TestFunction t = ambient_bump(mesh, mesh.position(center), radius, "bump");
        if (clear_of(mesh, t, dist)) {
            tests.push_back(std::move(t));
            break;
        }
    }
    if (tests.empty()) throw MeshError("default_tests: no test function fits between boundary and origin");
    return tests;
}

void require_interior_support(const SurfaceMesh& mesh, const TestFunction& test) {
    if (test.values.size() != mesh.node_count()) throw MeshError("test '" + test.name + "' has the wrong size");
    for (std::size_t i = 0; i < mesh.node_count(); ++i)
        if (test.values[i] != 0.0 && mesh.is_boundary_node(static_cast<int>(i)))
            throw MeshError("test '" + test.name + "' overlaps the boundary ring");
}

IdentityReport check_pointwise_identities(const SurfaceMesh& mesh, const AngleForm* form,
                                          const PointwiseOptions& options) {
    require_heisenberg(mesh, "check_pointwise_identities");
    const WeakOperatorContext ctx(mesh);
    const double h = mesh_size(mesh);
    const std::size_t nt = mesh.triangle_count();
    std::vector<char> skip = excised_elements(mesh, options.excision_rings);
    const std::vector<char> rim = boundary_elements(mesh);
    for (std::size_t t = 0; t < nt; ++t) skip[t] = skip[t] || rim[t];

    std::vector<double> split(nt, 0.0), bound(nt, 0.0), normal(nt, 0.0);
    parallel_for(nt, [&](std::size_t t) {
        if (skip[t]) return;
        for (const BaryPoint& q : triangle_rule6()) {
            const FieldSample s = sample_fields(ctx, t, q.bary);
            if (!s.regular) continue;
            const double a = 1.0 - s.grad_rho.squaredNorm() - s.grad_phi.squaredNorm() / (s.rho * s.rho);
            split[t] = std::max(split[t], std::abs(a));
            const double w = 1.0 + s.sigma * s.sigma;
            const AVec v = s.grad_sigma / w;
            bound[t] = std::max(bound[t], std::max(0.0, v.squaredNorm() * s.gauge * s.gauge / 16.0 - 1.0));
            const Vec4 v4(v[0], v[1], v[2], v[3]);
            const Vec4 n4(s.normal_gauge[0], s.normal_gauge[1], s.normal_gauge[2], s.normal_gauge[3]);
            normal[t] = std::max(normal[t], (n4 - 0.5 * s.gauge * apply_J(v4)).norm());
        }
    });

    IdentityReport report;
    report.excision_radius = excision_radius(mesh, excised_elements(mesh, options.excision_rings));
    auto add = [&](const std::string& name, double value, NormKind kind) {
        report.add(name, value, kind, options.tolerances.resolve(name, kind, h));
    };
    add("unit_gradient_split", *std::max_element(split.begin(), split.end()), NormKind::max_interior);
    add("phase_gradient_bound", *std::max_element(bound.begin(), bound.end()), NormKind::max_interior);
    add("normal_gauge_gradient", *std::max_element(normal.begin(), normal.end()), NormKind::max_interior);
    if (!form) return report;

    const std::vector<TestFunction> tests = options.tests.empty() ? default_tests(mesh) : options.tests;
    const ScalarField gauge = gauge_field(mesh);

    // Fields at quadrature points keep the integration by parts exact on planes.
    double line1 = 0.0, line2 = 0.0, harmonic = 0.0;
    for (const TestFunction& test : tests) {
        require_interior_support(mesh, test);
        std::vector<double> r1(nt, 0.0), r2(nt, 0.0), ref(nt, 0.0), rh(nt, 0.0), refh(nt, 0.0);
        parallel_for(nt, [&](std::size_t t) {
            const auto& tri = mesh.triangle(t);
            if (test.values[tri[0]] == 0.0 && test.values[tri[1]] == 0.0 && test.values[tri[2]] == 0.0) return;
            const AVec grad_test = ctx.gradient(t, test.values);
            const AVec gb = beta_h_gradient(ctx, *form, t);
            const double A = ctx.area(t);
            for (const BaryPoint& q : triangle_rule6()) {
                const FieldSample s = sample_fields(ctx, t, q.bary);
                if (!s.regular) continue;
                const double f = at(test.values, tri, q.bary);
                const AVec grad_rho2 = 2.0 * s.rho * s.grad_rho;
                const double wa = q.weight * A;
                r1[t] += wa * (f * gb.dot(grad_rho2) + grad_test.dot(s.grad_phi));
                r2[t] += wa * (f * (gb.dot(s.grad_phi) - 1.0) - 0.25 * grad_test.dot(grad_rho2));
                ref[t] += wa * (std::abs(f) + grad_test.norm() * s.gauge);
            }
            rh[t] = A * grad_test.dot(gb);
            refh[t] = A * grad_test.norm() / mean_over(gauge, tri);
        });
        const double reference = pairwise_sum(ref);
        line1 = std::max(line1, relative(pairwise_sum(r1), reference));
        line2 = std::max(line2, relative(pairwise_sum(r2), reference));
        harmonic = std::max(harmonic, relative(pairwise_sum(rh), pairwise_sum(refh)));
    }
    add("angle_rho2_coupling", line1, NormKind::weak_pairing);
    add("angle_phi_coupling", line2, NormKind::weak_pairing);
    add("angle_harmonic", harmonic, NormKind::weak_pairing);
    return report;
}

double check_k2(const SurfaceMesh& mesh, const AngleForm& form, const TestFunction& test) {
    require_heisenberg(mesh, "check_k2");
    require_interior_support(mesh, test);
    const WeakOperatorContext ctx(mesh);
    const std::size_t nt = mesh.triangle_count();
    std::vector<double> res(nt, 0.0), ref(nt, 0.0);
    parallel_for(nt, [&](std::size_t t) {
        const auto& tri = mesh.triangle(t);
        const AVec grad_test = ctx.gradient(t, test.values);
        if (test.values[tri[0]] == 0.0 && test.values[tri[1]] == 0.0 && test.values[tri[2]] == 0.0) return;
        const AVec gb = beta_h_gradient(ctx, form, t);
        for (const BaryPoint& q : triangle_rule6()) {
            const FieldSample s = sample_fields(ctx, t, q.bary);
            if (!s.regular) continue;
            const double f = at(test.values, tri, q.bary);
            const double w = 1.0 + s.sigma * s.sigma;
            const double r2 = s.gauge * s.gauge, r3 = r2 * s.gauge, r4 = r2 * r2;
            const double wa = q.weight * ctx.area(t);
            res[t] += wa * (f * (r3 * gb.dot(s.grad_gauge) - r2 * s.sigma / std::sqrt(w)) +
                            0.25 * r4 * grad_test.dot(s.grad_sigma) / w);
            ref[t] += wa * (std::abs(f) + grad_test.norm() * s.gauge) * r2;
        }
    });
    return relative(pairwise_sum(res), pairwise_sum(ref));
}

IdentityReport check_div_identity(const SurfaceMesh& mesh, const AngleForm& form,
                                  const std::vector<TestFunction>& tests, const DivIdentityOptions& options) {
    require_heisenberg(mesh, "check_div_identity");
    const WeakOperatorContext ctx(mesh);
    const double h = mesh_size(mesh);
    const std::size_t nt = mesh.triangle_count();
    IdentityReport report;

    for (const TestFunction& test : tests) {
        require_interior_support(mesh, test);
        std::vector<double> res(nt, 0.0), ref(nt, 0.0);
        parallel_for(nt, [&](std::size_t t) {
            const auto& tri = mesh.triangle(t);
            if (test.values[tri[0]] == 0.0 && test.values[tri[1]] == 0.0 && test.values[tri[2]] == 0.0) return;
            const AVec grad_test = ctx.gradient(t, test.values);
            const AVec gb = beta_h_gradient(ctx, form, t);
            for (const BaryPoint& q : triangle_rule6()) {
                const FieldSample s = sample_fields(ctx, t, q.bary);
                if (!s.regular) continue;
                const double f = at(test.values, tri, q.bary);
                const AVec V = std::atan(s.sigma) * gb + s.grad_gauge / s.gauge;
                const double source = 4.0 * s.normal_gauge.squaredNorm() / (s.gauge * s.gauge);
                const double wa = q.weight * ctx.area(t);
                res[t] += wa * (-grad_test.dot(V) - f * source);
                ref[t] += wa * (grad_test.norm() * V.norm() + std::abs(f) * source);
            }
        });
        double dirac = 0.0, dirac_ref = 0.0;
        for (int p : mesh.origin_preimages()) {
            const auto it = options.origin_weights.find(p);
            const double w = it == options.origin_weights.end() ? kTwoPi : it->second;
            dirac += w * test.values[p];
            dirac_ref += std::abs(w * test.values[p]);
        }
        const double value = relative(pairwise_sum(res) - dirac, pairwise_sum(ref) + dirac_ref);
        const std::string name = "log_gauge_divergence[" + test.name + "]";
        report.add(name, value, NormKind::weak_pairing, options.tolerances.resolve(name, NormKind::weak_pairing, h));
    }

    // phi = O(r^3) near each origin preimage, on the chart disk clear of the boundary
    double worst = 0.0;
    for (int p : mesh.origin_preimages()) {
        double r_bd = INFINITY;
        for (std::size_t i = 0; i < mesh.node_count(); ++i)
            if (mesh.is_boundary_node(static_cast<int>(i)))
                r_bd = std::min(r_bd, mesh.param_edge(p, static_cast<int>(i)).norm());
        const double r_max = 0.25 * r_bd;
        double inner = 0.0, outer = 0.0;
        for (std::size_t i = 0; i < mesh.node_count(); ++i) {
            const double r = mesh.param_edge(p, static_cast<int>(i)).norm();
            if (r == 0.0 || r > r_max) continue;
            const double v = std::abs(mesh.phi(static_cast<int>(i)) - mesh.phi(p)) / (r * r * r);
            double& slot = r <= 0.25 * r_max ? inner : outer;
            slot = std::max(slot, v);
        }
        if (inner > 1e-12 * std::max(1.0, outer)) worst = std::max(worst, outer > 0.0 ? inner / outer : INFINITY);
    }
    const auto it = options.tolerances.overrides.find("phi_cubic_order");
    report.add("phi_cubic_order", worst, NormKind::max_interior,
               it == options.tolerances.overrides.end() ? kCubicOrderTolerance : it->second);
    return report;
}

}  // namespace hlmono
