#include "hlmono/monotonicity.hpp"

#include "hlmono/parallel.hpp"
#include "hlmono/quadrature.hpp"
#include "hlmono/surface_fields.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace hlmono {

namespace {

constexpr double kPi = std::numbers::pi;
// Relative decrease of the classical density tolerated between radii.
constexpr double kMonotoneSlack = 1e-3;

void require_heisenberg(const SurfaceMesh& mesh, const char* what) {
    if (!mesh.is_heisenberg()) throw MeshError(std::string(what) + ": needs a heisenberg2 mesh");
}

void require_meshed(const SurfaceMesh& mesh, double R, const char* what) {
    const double have = meshed_radius(mesh);
    if (!(have >= R))
        throw MeshError(std::string(what) + ": mesh covers gauge < " + std::to_string(have) + ", needs " +
                        std::to_string(R));
}

std::array<double, 3> corner_values(const ScalarField& f, const Triangle& tri) {
    return {f[tri[0]], f[tri[1]], f[tri[2]]};
}

// Integral of f(sample) over {lo < piecewise linear g < hi}.
template <class F>
double band_integral(const WeakOperatorContext& ctx, const ScalarField& g, double lo, double hi,
                     const std::vector<char>* skip, F&& f) {
    const SurfaceMesh& mesh = ctx.mesh();
    return parallel_sum(mesh.triangle_count(), [&](std::size_t t) {
        if (skip && (*skip)[t]) return 0.0;
        const auto pts = band_quadrature(corner_values(g, mesh.triangle(t)), lo, hi);
        double sum = 0.0;
        for (const auto& q : pts) sum += q.weight * f(sample_fields(ctx, t, q.bary), t, q.bary);
        return ctx.area(t) * sum;
    });
}

// Integral of f over {g < breaks.back()}, with the 6-point rule applied
// separately between consecutive breaks so kinks of f there are resolved.
template <class F>
double piecewise_integral(const WeakOperatorContext& ctx, const ScalarField& g, const std::vector<double>& breaks,
                          F&& f) {
    const SurfaceMesh& mesh = ctx.mesh();
    return parallel_sum(mesh.triangle_count(), [&](std::size_t t) {
        const auto v = corner_values(g, mesh.triangle(t));
        if (std::min({v[0], v[1], v[2]}) >= breaks.back()) return 0.0;
        double sum = 0.0, lo = -1.0;
        for (double hi : breaks) {
            for (const auto& q : band_quadrature(v, lo, hi)) sum += q.weight * f(sample_fields(ctx, t, q.bary), t);
            lo = hi;
        }
        return ctx.area(t) * sum;
    });
}

std::vector<double> scaled_knots(const CutoffSpec& cutoff, double r) {
    std::vector<double> out;
    for (double k : cutoff.knots())
        if (k > 0.0) out.push_back(k * r);
    return out;
}

ScalarField nodal_sigma(const SurfaceMesh& mesh) {
    ScalarField s;
    s.values.resize(mesh.node_count(), 0.0);
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const double rho2 = mesh.position(static_cast<int>(i)).squaredNorm();
        if (rho2 > 0.0) s[i] = 2.0 * mesh.phi(static_cast<int>(i)) / rho2;
    }
    return s;
}

// int |grad sigma_PL|^2 / (1 + sigma^2)^2 over {lo < g < hi}, sigma linear on each element.
double sigma_energy(const WeakOperatorContext& ctx, const ScalarField& g, const ScalarField& sigma, double lo,
                    double hi, const std::vector<char>& excised) {
    const SurfaceMesh& mesh = ctx.mesh();
    return parallel_sum(mesh.triangle_count(), [&](std::size_t t) {
        if (excised[t]) return 0.0;
        const auto& tri = mesh.triangle(t);
        const auto pts = band_quadrature(corner_values(g, tri), lo, hi);
        if (pts.empty()) return 0.0;
        const double grad2 = ctx.gradient(t, sigma).squaredNorm();
        double sum = 0.0;
        for (const auto& q : pts) {
            const double s = q.bary[0] * sigma[tri[0]] + q.bary[1] * sigma[tri[1]] + q.bary[2] * sigma[tri[2]];
            sum += q.weight * grad2 / ((1.0 + s * s) * (1.0 + s * s));
        }
        return ctx.area(t) * sum;
    });
}

double total_weight(const std::map<int, double>& weights) {
    double s = 0.0;
    for (const auto& [p, w] : weights) s += w;
    return s;
}

double sigma_gradient_ratio2(const FieldSample& s) {
    const double w = 1.0 + s.sigma * s.sigma;
    return s.grad_sigma.squaredNorm() / (w * w);
}

// Flux of grad gauge / gauge through the straight segment between two
// barycentric points of element t, with the conormal pointing up the
// piecewise linear gauge. 3-point Gauss rule along the segment.
double segment_flux(const WeakOperatorContext& ctx, std::size_t t, const std::array<double, 3>& corners,
                    const Eigen::Vector3d& b0, const Eigen::Vector3d& b1) {
    const SurfaceMesh& mesh = ctx.mesh();
    const auto& tri = mesh.triangle(t);
    auto point = [&](const Eigen::Vector3d& b) {
        return AVec(b[0] * mesh.position(tri[0]) + b[1] * mesh.position(tri[1]) + b[2] * mesh.position(tri[2]));
    };
    const AVec d = point(b1) - point(b0);
    const double len = d.norm();
    if (len == 0.0) return 0.0;
    AVec up = ctx.gradient(t, corners[0], corners[1], corners[2]);
    up -= up.dot(d) / (len * len) * d;
    const double n = up.norm();
    if (n == 0.0) return 0.0;
    up /= n;
    static constexpr double kNodes[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
    static constexpr double kWeights[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    double sum = 0.0;
    for (int q = 0; q < 3; ++q) {
        const FieldSample s = sample_fields(ctx, t, (1.0 - kNodes[q]) * b0 + kNodes[q] * b1);
        if (s.regular) sum += kWeights[q] * s.grad_gauge.dot(up) / s.gauge;
    }
    return len * sum;
}

}  // namespace

double meshed_radius(const SurfaceMesh& mesh) {
    const ScalarField g = gauge_field(mesh);
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mesh.node_count(); ++i)
        if (mesh.is_boundary_node(static_cast<int>(i))) r = std::min(r, g[i]);
    return r;
}

DensityReport density_curve(const SurfaceMesh& mesh, const std::vector<double>& radii) {
    for (std::size_t k = 0; k < radii.size(); ++k)
        if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1])))
            throw std::invalid_argument("density radii must be positive and strictly increasing");
    const ScalarField g = gauge_field(mesh);
    const double covered = meshed_radius(mesh);
    DensityReport rep;
    rep.radii = radii;
    for (double r : radii) {
        const double a = band_area(mesh, g, -1.0, r);
        rep.area.push_back(a);
        rep.density.push_back(a / (r * r));
        rep.reliable.push_back(r <= covered ? 1 : 0);
    }
    return rep;
}

Theta0Result theta0(const SurfaceMesh& mesh, int p, const Theta0Options& options) {
    if (!mesh.is_origin_preimage(p)) throw MeshError("theta0: node " + std::to_string(p) + " is not an origin preimage");
    if (options.levels < 2) throw std::invalid_argument("theta0: needs at least two levels");
    const ScalarField g = gauge_field(mesh);
    const WeakOperatorContext ctx(mesh);

    // Automatic levels stay at least two first-ring gauges out: inside the
    // first ring the contour only sees the discrete cone angle of the fan.
    double nearest = std::numeric_limits<double>::infinity();
    for (int j : mesh.node_neighbors(p)) nearest = std::min(nearest, g[j]);
    const bool automatic = options.t0 <= 0.0;
    const double t0 = automatic ? std::min(32.0 * nearest, 0.5 * meshed_radius(mesh)) : options.t0;

    Theta0Result res;
    for (int k = 0; k < options.levels; ++k) {
        const double t = std::ldexp(t0, -k);
        if (automatic && k >= 2 && t < 2.0 * nearest) break;
        // Walk the triangles of the sublevel component containing p.
        std::vector<char> seen(mesh.triangle_count(), 0);
        std::queue<int> queue;
        for (int tri : mesh.node_triangles(p)) {
            seen[tri] = 1;
            queue.push(tri);
        }
        double sum = 0.0;
        while (!queue.empty()) {
            const int tri_index = queue.front();
            queue.pop();
            const auto& tri = mesh.triangle(tri_index);
            const auto v = corner_values(g, tri);
            if (std::min({v[0], v[1], v[2]}) >= t) continue;
            for (int n : tri)
                if (mesh.is_boundary_node(n))
                    throw MeshError("theta0: level curve gauge = " + std::to_string(t) + " reaches the boundary");
            Eigen::Vector3d ends[2];
            int found = 0;
            for (int e = 0; e < 3 && found < 2; ++e) {
                const int a = e, b = (e + 1) % 3;
                if ((v[a] < t) == (v[b] < t)) continue;
                const double s = (t - v[a]) / (v[b] - v[a]);
                ends[found] = Eigen::Vector3d::Zero();
                ends[found][a] = 1.0 - s;
                ends[found][b] = s;
                ++found;
            }
            if (found == 2) sum += segment_flux(ctx, tri_index, v, ends[0], ends[1]);
            for (int e = 0; e < 3; ++e) {
                const MeshEdge& edge = mesh.edges()[mesh.triangle_edge(tri_index, e)];
                for (int other : edge.tri)
                    if (other >= 0 && !seen[other]) {
                        seen[other] = 1;
                        queue.push(other);
                    }
            }
        }
        res.levels.push_back(t);
        res.contour.push_back(sum);
    }

    // Least-squares polynomial in t through the contour values, evaluated at
    // t = 0; quadratic once there are enough levels to overdetermine it.
    const int n = static_cast<int>(res.levels.size());
    const int degree = n >= 4 ? 2 : 1;
    Eigen::MatrixXd A(n, degree + 1);
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) {
        const double x = res.levels[k] / t0;
        for (int d = 0; d <= degree; ++d) A(k, d) = std::pow(x, d);
        b[k] = res.contour[k];
    }
    res.value = A.colPivHouseholderQr().solve(b)[0];
    return res;
}

std::map<int, double> theta0_weights(const SurfaceMesh& mesh) {
    std::map<int, double> out;
    for (int p : mesh.origin_preimages()) out[p] = theta0(mesh, p).value;
    return out;
}

DirichletSigma dirichlet_sigma(const SurfaceMesh& mesh, double R, int excision_rings) {
    require_heisenberg(mesh, "dirichlet_sigma");
    if (excision_rings < 1) throw std::invalid_argument("dirichlet_sigma: excision_rings must be at least 1");
    const WeakOperatorContext ctx(mesh);
    const ScalarField g = gauge_field(mesh);
    const ScalarField sigma = nodal_sigma(mesh);
    const std::vector<char> excised = excised_elements(mesh, excision_rings);

    DirichletSigma out;
    out.excision_rings = excision_rings;
    out.sigma_term = sigma_energy(ctx, g, sigma, -1.0, R, excised);
    out.normal_term = band_integral(ctx, g, -1.0, R, &excised, [](const FieldSample& s, std::size_t, const auto&) {
        return s.regular ? 4.0 * s.normal_gauge.squaredNorm() / (s.gauge * s.gauge) : 0.0;
    });
    out.discrepancy = std::abs(out.sigma_term - out.normal_term);
    const double wider = sigma_energy(ctx, g, sigma, -1.0, R, excised_elements(mesh, excision_rings + 1));
    out.excision_change = std::abs(out.sigma_term - wider);
    return out;
}

LemmaBound lemma_density_bound(const SurfaceMesh& mesh) {
    require_heisenberg(mesh, "lemma_density_bound");
    require_meshed(mesh, 2.0, "lemma_density_bound");
    LemmaBound out;
    out.theta0_total = total_weight(theta0_weights(mesh));
    out.dirichlet = dirichlet_sigma(mesh, 1.0).sigma_term;
    out.lhs = out.theta0_total + out.dirichlet;
    out.rhs_area = band_area(mesh, gauge_field(mesh), 1.0, 2.0);
    out.ratio = out.lhs / out.rhs_area;
    return out;
}

BalanceTerms k10_balance(const SurfaceMesh& mesh, const AngleForm* form, double r, const CutoffSpec& cutoff,
                         std::optional<double> theta0_total) {
    require_heisenberg(mesh, "k10_balance");
    if (!(r > 0.0)) throw std::invalid_argument("k10_balance: r must be positive");
    const WeakOperatorContext ctx(mesh);
    const ScalarField g = gauge_field(mesh);
    const std::vector<double> breaks = scaled_knots(cutoff, r);
    const double r2 = r * r;

    auto term = [&](auto&& f) {
        return piecewise_integral(ctx, g, breaks, [&](const FieldSample& s, std::size_t t) {
            return s.regular ? f(s, t) : 0.0;
        });
    };

    BalanceTerms out;
    out.gradient_energy_term = term([&](const FieldSample& s, std::size_t) {
        return sigma_gradient_ratio2(s) * s.gauge * cutoff.d1(s.gauge / r) / r / 4.0;
    });
    out.second_derivative_term = term([&](const FieldSample& s, std::size_t) {
        return 0.25 * std::atan(s.sigma) * cutoff.d2(s.gauge / r) / r2 * s.gauge *
               s.grad_gauge.dot(s.grad_sigma) / (1.0 + s.sigma * s.sigma);
    });
    out.first_derivative_term = term([&](const FieldSample& s, std::size_t) {
        return -0.75 * std::atan(s.sigma) * cutoff.d1(s.gauge / r) / r * s.grad_gauge.dot(s.grad_sigma) /
               (1.0 + s.sigma * s.sigma);
    });
    out.phase_term = term([&](const FieldSample& s, std::size_t) {
        return -std::atan(s.sigma) * cutoff.d1(s.gauge / r) / r / s.gauge * s.sigma /
               std::sqrt(1.0 + s.sigma * s.sigma);
    });
    out.radial_term = term([&](const FieldSample& s, std::size_t) {
        return -cutoff.d1(s.gauge / r) / r * s.grad_gauge.squaredNorm() / s.gauge;
    });
    out.normal_energy = term([&](const FieldSample& s, std::size_t) {
        return 4.0 * cutoff.chi(s.gauge / r) * s.normal_gauge.squaredNorm() / (s.gauge * s.gauge);
    });
    out.theta0 = theta0_total ? *theta0_total : total_weight(theta0_weights(mesh));
    out.lhs = out.gradient_energy_term + out.second_derivative_term + out.first_derivative_term + out.phase_term +
              out.radial_term;
    out.rhs = out.normal_energy + out.theta0;
    out.residual = std::abs(out.lhs - out.rhs) / (std::abs(out.lhs) + std::abs(out.rhs) + 1.0);

    if (form) {
        const double angle = term([&](const FieldSample& s, std::size_t t) {
            return -std::atan(s.sigma) * cutoff.d1(s.gauge / r) / r * beta_h_gradient(ctx, *form, t).dot(s.grad_gauge);
        });
        const double rewritten =
            out.gradient_energy_term + out.second_derivative_term + out.first_derivative_term + out.phase_term;
        out.angle_term = angle;
        out.angle_gap = std::abs(angle - rewritten) / (std::abs(angle) + std::abs(rewritten) + 1.0);
    }
    return out;
}

MainTheoremCheck main_theorem_check(const SurfaceMesh& mesh, const std::vector<double>& radii) {
    require_heisenberg(mesh, "main_theorem_check");
    require_meshed(mesh, 2.0, "main_theorem_check");
    for (double r : radii)
        if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("main_theorem_check: radii must lie in (0, 1)");
    const ScalarField g = gauge_field(mesh);
    MainTheoremCheck out;
    out.theta0_total = total_weight(theta0_weights(mesh));
    out.outer_area = band_area(mesh, g, 0.5, 2.0);
    out.bounded = !radii.empty();
    double umin = INFINITY, umax = 0.0, lmin = INFINITY, lmax = 0.0;
    for (double r : radii) {
        MainTheoremRow row;
        row.r = r;
        row.density = band_area(mesh, g, -1.0, r) / (r * r);
        row.inner_energy = dirichlet_sigma(mesh, r / 2.0).sigma_term;
        row.c_upper = row.density / out.outer_area;
        row.c_lower = (out.theta0_total + row.inner_energy) / row.density;
        for (double c : {row.c_upper, row.c_lower})
            if (!std::isfinite(c) || !(c > 0.0)) out.bounded = false;
        out.sweep_bound = std::max(out.sweep_bound, row.c_upper * std::max(1.0, row.c_lower));
        umin = std::min(umin, row.c_upper);
        umax = std::max(umax, row.c_upper);
        lmin = std::min(lmin, row.c_lower);
        lmax = std::max(lmax, row.c_lower);
        out.rows.push_back(row);
    }
    out.upper_spread = umax / umin;
    out.lower_spread = lmax / lmin;
    return out;
}

ClassicalCheck classical_monotonicity(const SurfaceMesh& mesh, const std::vector<double>& radii,
                                      double minimality_tolerance) {
    if (mesh.is_heisenberg()) throw MeshError("classical_monotonicity: needs a euclidean mesh");
    ClassicalCheck out;
    out.minimality_residual = minimality_residual(mesh);
    if (!(out.minimality_residual <= minimality_tolerance))
        throw MeshError("classical_monotonicity: mesh is not minimal (coordinate Laplacian residual " +
                        std::to_string(out.minimality_residual) + ")");
    const WeakOperatorContext ctx(mesh);
    const ScalarField g = gauge_field(mesh);
    out.origin_count = static_cast<int>(mesh.origin_preimages().size());
    out.monotone = true;
    const double covered = meshed_radius(mesh);
    std::optional<double> previous;
    for (double r : radii) {
        ClassicalRow row;
        row.r = r;
        row.reliable = r <= covered;
        row.lhs = band_area(mesh, g, -1.0, r) / (r * r);
        row.rhs = band_integral(ctx, g, -1.0, r, nullptr, [](const FieldSample& s, std::size_t, const auto&) {
                      return s.regular ? s.normal_gauge.squaredNorm() / (s.rho * s.rho) : 0.0;
                  }) + kPi * out.origin_count;
        if (row.reliable) {
            if (row.lhs > 0.0) out.max_residual = std::max(out.max_residual, std::abs(row.lhs - row.rhs) / row.lhs);
            if (previous && row.lhs < *previous * (1.0 - kMonotoneSlack)) out.monotone = false;
            previous = row.lhs;
        }
        out.rows.push_back(row);
    }
    return out;
}

BernsteinCheck bernstein_check(const SurfaceMesh& mesh, const std::vector<double>& radii,
                               const BernsteinOptions& options) {
    require_heisenberg(mesh, "bernstein_check");
    if (radii.empty()) throw std::invalid_argument("bernstein_check: no radii");
    require_meshed(mesh, 2.0 * *std::max_element(radii.begin(), radii.end()), "bernstein_check");
    const CutoffSpec chi = make_cutoff(CutoffKind::epsilon, options.epsilon);
    const WeakOperatorContext ctx(mesh);
    const ScalarField g = gauge_field(mesh);
    const ScalarField sigma = nodal_sigma(mesh);
    const std::vector<char> excised = excised_elements(mesh, 1);

    BernsteinCheck out;
    out.theta0_total = total_weight(theta0_weights(mesh));
    for (double r : radii) {
        BernsteinRow row;
        row.r = r;
        row.annulus_mean = band_integral(ctx, g, r, 2.0 * r, nullptr, [](const FieldSample& s, std::size_t, const auto&) {
                               return s.regular ? 1.0 / s.gauge : 0.0;
                           }) / r;
        for (std::size_t i = 0; i < mesh.node_count(); ++i)
            if (g[i] > r && g[i] < 2.0 * r)
                row.rho_gap = std::max(row.rho_gap, std::abs(mesh.position(static_cast<int>(i)).norm() / g[i] - 1.0));
        row.annulus_energy = sigma_energy(ctx, g, sigma, r, 2.0 * r, excised);

        const std::vector<double> breaks = scaled_knots(chi, r);
        auto term = [&](auto&& f) {
            return piecewise_integral(ctx, g, breaks, [&](const FieldSample& s, std::size_t) {
                return s.regular ? f(s) : 0.0;
            });
        };
        row.second_derivative_term = term([&](const FieldSample& s) {
            return 0.25 * std::atan(s.sigma) * chi.d2(s.gauge / r) / (r * r) * s.gauge *
                   s.grad_gauge.dot(s.grad_sigma) / (1.0 + s.sigma * s.sigma);
        });
        row.first_derivative_term = term([&](const FieldSample& s) {
            return -0.75 * std::atan(s.sigma) * chi.d1(s.gauge / r) / r * s.grad_gauge.dot(s.grad_sigma) /
                   (1.0 + s.sigma * s.sigma);
        });
        row.angle_bound_term = term([&](const FieldSample& s) {
            return -chi.d1(s.gauge / r) / (r * s.gauge) * angle_bound_profile(s.sigma);
        });
        row.energy_term = term([&](const FieldSample& s) { return chi.chi(s.gauge / r) * sigma_gradient_ratio2(s); });
        row.cutoff_energy_term = term([&](const FieldSample& s) {
            return -2.0 * chi.d1(s.gauge / r) * s.gauge / (4.0 * r) * sigma_gradient_ratio2(s);
        });
        const double lhs = row.second_derivative_term + row.first_derivative_term + row.angle_bound_term;
        const double rhs = row.energy_term + row.cutoff_energy_term + out.theta0_total;
        row.residual = std::abs(lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1.0);
        out.rows.push_back(row);
    }

    const BernsteinRow& last = out.rows.back();
    out.plane_like = std::abs(last.annulus_mean - 2.0 * kPi) <= options.mean_tolerance * 2.0 * kPi &&
                     last.rho_gap <= options.gap_tolerance;
    if (out.plane_like && out.theta0_total >= 2.0 * kPi * (1.0 - options.mean_tolerance)) {
        out.conclusion_energy = dirichlet_sigma(mesh, meshed_radius(mesh)).sigma_term;
        out.conclusion_pass = *out.conclusion_energy <= options.conclusion_tolerance;
    }
    return out;
}

double angle_bound_profile(double sigma) {
    return (sigma * std::atan(sigma) + 1.0) / std::sqrt(1.0 + sigma * sigma);
}

double angle_bound_derivative(double sigma) {
    const double w = 1.0 + sigma * sigma;
    return std::atan(sigma) / (w * std::sqrt(w));
}

namespace {

double grid_sigma(std::size_t k, std::size_t points, double umax) {
    return std::sinh(-umax + 2.0 * umax * static_cast<double>(k) / static_cast<double>(points - 1));
}

}  // namespace

ScalarCheck check_angle_bound_range(std::size_t points, double bound) {
    if (points < 2) throw std::invalid_argument("scalar check needs at least two points");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double tol = 8.0 * eps;
    const double umax = std::asinh(bound);
    ScalarCheck out;
    out.points = points;
    std::vector<double> worst(points);
    parallel_for(points, [&](std::size_t k) {
        const double f = angle_bound_profile(grid_sigma(k, points, umax));
        worst[k] = std::max({1.0 - f, f - kPi / 2.0, 0.0}) / tol;
    });
    out.worst = *std::max_element(worst.begin(), worst.end());
    // Endpoints: the profile is exactly 1 at 0 and approaches pi/2 like pi / (4 sigma^2).
    out.worst = std::max(out.worst, std::abs(angle_bound_profile(0.0) - 1.0) / tol);
    for (double s : {1e8, -1e8}) out.worst = std::max(out.worst, std::abs(angle_bound_profile(s) - kPi / 2.0) / (1e-15 + tol));
    out.pass = out.worst <= 1.0;
    return out;
}

ScalarCheck check_angle_bound_derivative(std::size_t points, double bound) {
    if (points < 2) throw std::invalid_argument("scalar check needs at least two points");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double umax = std::asinh(bound);
    ScalarCheck out;
    out.points = points;
    std::vector<double> worst(points);
    parallel_for(points, [&](std::size_t k) {
        const double s = grid_sigma(k, points, umax);
        const double h = std::cbrt(eps) * std::max(1.0, std::abs(s));
        const double fd = (angle_bound_profile(s + h) - angle_bound_profile(s - h)) / (2.0 * h);
        const double exact = angle_bound_derivative(s);
        const double tol = 1e-6 * std::abs(exact) + 64.0 * eps * angle_bound_profile(s) / h;
        worst[k] = std::abs(fd - exact) / tol;
    });
    out.worst = *std::max_element(worst.begin(), worst.end());
    out.pass = out.worst <= 1.0;
    return out;
}

}  // namespace hlmono
