#include "hlmono/zoo.hpp"

#include "hlmono/calculus.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace hlmono {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Generation gates; they catch construction errors, not discretization error.
constexpr double kLagrangianGate = 0.25;
constexpr double kContactGate = 0.25;
constexpr double kMinimalityGate = 0.05;

std::complex<double> det_c(const Vec4& u, const Vec4& v) {
    const std::complex<double> u1(u[0], u[1]), u2(u[2], u[3]), v1(v[0], v[1]), v2(v[2], v[3]);
    return u1 * v2 - u2 * v1;
}

struct PolarLayout {
    std::vector<Eigen::Vector2d> polar;  // (s, t)
    std::vector<Triangle> tris;
    std::vector<std::vector<int>> rings;
    int tip = -1;
};

PolarLayout polar_layout(const PolarResolution& res, double speed) {
    if (res.angular < 3) throw std::invalid_argument("polar mesh needs at least 3 angular samples");
    if (res.outer_octave <= res.inner_octave) throw std::invalid_argument("outer_octave must exceed inner_octave");
    const int m = res.rings_per_octave_for(speed);
    const int n = res.angular;
    PolarLayout L;
    if (res.tip_fan) {
        L.tip = 0;
        L.polar.emplace_back(0.0, 0.0);
    }
    for (int k = res.inner_octave * m; k <= res.outer_octave * m; ++k) {
        const double s = std::exp2(static_cast<double>(k) / m);
        std::vector<int> ring;
        for (int j = 0; j < n; ++j) {
            ring.push_back(static_cast<int>(L.polar.size()));
            L.polar.emplace_back(s, kTwoPi * j / n);
        }
        L.rings.push_back(std::move(ring));
    }
    if (res.tip_fan)
        for (int j = 0; j < n; ++j) L.tris.push_back({L.tip, L.rings[0][j], L.rings[0][(j + 1) % n]});
    for (std::size_t k = 0; k + 1 < L.rings.size(); ++k) {
        for (int j = 0; j < n; ++j) {
            const int a = L.rings[k][j], b = L.rings[k + 1][j];
            const int c = L.rings[k + 1][(j + 1) % n], d = L.rings[k][(j + 1) % n];
            L.tris.push_back({a, b, c});
            L.tris.push_back({a, c, d});
        }
    }
    return L;
}

GroundTruth truth_from_positions(const SurfaceMesh& mesh) {
    GroundTruth g;
    const std::size_t n = mesh.node_count();
    g.rho.resize(n);
    g.gauge.resize(n);
    if (mesh.is_heisenberg()) {
        g.phi.resize(n);
        g.sigma.resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = mesh.position(i).norm();
        g.rho[i] = rho;
        if (mesh.is_heisenberg()) {
            g.phi[i] = mesh.phi(i);
            g.gauge[i] = koranyi_gauge(rho, mesh.phi(i));
            g.sigma[i] = rho > 0.0 ? 2.0 * mesh.phi(i) / (rho * rho) : 0.0;
        } else {
            g.gauge[i] = rho;
        }
    }
    return g;
}

void gate_legendrian(const SurfaceMesh& mesh, const std::string& what) {
    const LegendrianDefect d = legendrian_defect(mesh);
    if (!(d.max_lagrangian_residual <= kLagrangianGate) || !(d.max_contact_residual <= kContactGate))
        throw std::logic_error(what + ": generated mesh fails its Legendrian gate (contact " +
                               std::to_string(d.max_contact_residual) + ", lagrangian " +
                               std::to_string(d.max_lagrangian_residual) + ")");
}

void gate_minimal(const SurfaceMesh& mesh, const std::string& what) {
    const double r = minimality_residual(mesh);
    if (!(r <= kMinimalityGate))
        throw std::logic_error(what + ": generated mesh fails its minimality gate (" + std::to_string(r) + ")");
}

}  // namespace

int PolarResolution::rings_per_octave_for(double speed) const {
    if (rings_per_octave > 0) return rings_per_octave;
    const double step = speed * kTwoPi / angular;
    return std::max(1, static_cast<int>(std::lround(std::log(2.0) / std::log1p(step))));
}

Eigen::Matrix4d unitary_rotation(double a, double b, double c) {
    // exp of a skew-Hermitian 2x2 matrix, written as a real 4x4 matrix.
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    Eigen::Matrix2cd H;
    H << i * a, C(b, c), C(-b, c), -i * a;
    Eigen::Matrix2cd U = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd term = Eigen::Matrix2cd::Identity();
    for (int k = 1; k < 40; ++k) {
        term = term * H / static_cast<double>(k);
        U += term;
    }
    Eigen::Matrix4d R;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) {
            const C u = U(r, s);
            R(2 * r, 2 * s) = u.real();
            R(2 * r, 2 * s + 1) = -u.imag();
            R(2 * r + 1, 2 * s) = u.imag();
            R(2 * r + 1, 2 * s + 1) = u.real();
        }
    return R;
}

ZooSurface make_plane(const Vec4& u, const Vec4& v, const PolarResolution& res) {
    if (std::abs(u.norm() - 1.0) > 1e-12 || std::abs(v.norm() - 1.0) > 1e-12 || std::abs(u.dot(v)) > 1e-12)
        throw std::invalid_argument("make_plane: basis must be orthonormal");
    if (std::abs(symplectic_form(u, v)) > 1e-12)
        throw std::invalid_argument("make_plane: basis spans a non-Lagrangian plane (omega = " +
                                    std::to_string(symplectic_form(u, v)) + ")");
    PolarResolution r = res;
    r.tip_fan = true;
    const PolarLayout L = polar_layout(r, 1.0);
    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    for (const auto& st : L.polar) {
        const Eigen::Vector2d x(st[0] * std::cos(st[1]), st[0] * std::sin(st[1]));
        params.push_back(x);
        pos.push_back(AVec(x[0] * u + x[1] * v));
    }
    ZooSurface z;
    z.mesh = SurfaceMesh(AmbientKind::heisenberg2, 4, std::move(params), std::move(pos), {}, L.tris, {L.tip},
                         ParamChart{true, 0.0});
    z.mesh.name = "plane";
    z.mesh.legendrian_tolerance = 1e-12;
    z.rings = L.rings;
    z.truth = truth_from_positions(z.mesh);
    z.truth.element_beta.assign(z.mesh.triangle_count(), std::arg(det_c(u, v)));
    z.truth.origin_weight = kTwoPi;
    z.truth.density = std::numbers::pi;
    gate_legendrian(z.mesh, "make_plane");
    return z;
}

ZooSurface make_plane(const PolarResolution& res) {
    return make_plane(Vec4(1, 0, 0, 0), Vec4(0, 0, 1, 0), res);
}

Vec4 sw_circle(int p, int q, double t) {
    const double r1 = std::sqrt(static_cast<double>(q) / (p + q));
    const double r2 = std::sqrt(static_cast<double>(p) / (p + q));
    return {r1 * std::cos(p * t), r1 * std::sin(p * t), r2 * std::cos(q * t), -r2 * std::sin(q * t)};
}

Vec4 sw_circle_derivative(int p, int q, double t) {
    const double r1 = std::sqrt(static_cast<double>(q) / (p + q));
    const double r2 = std::sqrt(static_cast<double>(p) / (p + q));
    return {-p * r1 * std::sin(p * t), p * r1 * std::cos(p * t), -q * r2 * std::sin(q * t),
            -q * r2 * std::cos(q * t)};
}

ZooSurface make_sw_cone(int p, int q, const PolarResolution& res) {
    if (p < 1 || q < 1) throw std::invalid_argument("make_sw_cone: p, q must be >= 1");
    if (std::gcd(p, q) != 1 && !(p == 1 && q == 1)) throw std::invalid_argument("make_sw_cone: p, q must be coprime");
    const double speed = std::sqrt(static_cast<double>(p * q));
    const PolarLayout L = polar_layout(res, speed);
    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    for (const auto& st : L.polar) {
        const double s = st[0], t = st[1];
        if (res.tip_fan)
            params.emplace_back(s * std::cos(t), s * std::sin(t));
        else
            params.emplace_back(std::log(s) / speed, t);
        pos.push_back(AVec(s * sw_circle(p, q, t)));
    }
    const ParamChart chart = res.tip_fan ? ParamChart{false, 0.0} : ParamChart{true, kTwoPi};
    std::vector<int> origins;
    if (res.tip_fan) origins.push_back(L.tip);
    ZooSurface z;
    z.mesh = SurfaceMesh(AmbientKind::heisenberg2, 4, std::move(params), std::move(pos), {}, L.tris, origins, chart);
    z.mesh.name = "sw_cone(" + std::to_string(p) + "," + std::to_string(q) + ")";
    z.mesh.legendrian_tolerance = 1e-2;
    z.rings = L.rings;
    z.truth = truth_from_positions(z.mesh);
    // beta = arg det_C(gamma, gamma'/sqrt(pq)) = (p - q) t - pi/2 on the exact cone
    z.truth.element_beta.resize(z.mesh.triangle_count());
    for (std::size_t t = 0; t < z.mesh.triangle_count(); ++t) {
        // circular mean of the two rays the triangle spans
        const auto& tri = z.mesh.triangle(t);
        std::vector<double> angles;
        for (int v : tri) {
            if (v == L.tip) continue;
            const double tv = L.polar[v][1];
            bool seen = false;
            for (double a : angles) seen = seen || std::abs(a - tv) < 1e-12;
            if (!seen) angles.push_back(tv);
        }
        double cx = 0.0, cy = 0.0;
        for (double a : angles) {
            cx += std::cos(a);
            cy += std::sin(a);
        }
        const double tmid = std::atan2(cy, cx);
        z.truth.element_beta[t] = std::remainder((p - q) * tmid - 0.5 * std::numbers::pi, kTwoPi);
    }
    z.truth.origin_weight = kTwoPi * speed;
    z.truth.density = std::numbers::pi * speed;
    gate_legendrian(z.mesh, "make_sw_cone");
    return z;
}

Potential parse_potential(const std::string& name) {
    if (name == "zero") return Potential::zero;
    if (name == "cubic_x1" || name == "x1^3") return Potential::cubic_x1;
    if (name == "cubic_sum") return Potential::cubic_sum;
    if (name == "quadratic") return Potential::quadratic;
    throw std::invalid_argument("unknown potential '" + name + "'");
}

std::string potential_name(Potential p) {
    switch (p) {
        case Potential::zero: return "zero";
        case Potential::cubic_x1: return "cubic_x1";
        case Potential::cubic_sum: return "cubic_sum";
        case Potential::quadratic: return "quadratic";
    }
    return "?";
}

ZooSurface make_lagrangian_graph(Potential potential, double amplitude, double half_width, int cells) {
    if (cells < 2 || cells % 2 != 0) throw std::invalid_argument("make_lagrangian_graph: cells must be even and >= 2");
    auto value = [&](double x1, double x2) {
        switch (potential) {
            case Potential::zero: return 0.0;
            case Potential::cubic_x1: return amplitude * x1 * x1 * x1;
            case Potential::cubic_sum: return amplitude * (x1 * x1 * x1 + x2 * x2 * x2);
            case Potential::quadratic: return amplitude * 0.5 * (x1 * x1 + x2 * x2);
        }
        return 0.0;
    };
    auto grad = [&](double x1, double x2) -> Eigen::Vector2d {
        switch (potential) {
            case Potential::zero: return {0.0, 0.0};
            case Potential::cubic_x1: return {3.0 * amplitude * x1 * x1, 0.0};
            case Potential::cubic_sum: return {3.0 * amplitude * x1 * x1, 3.0 * amplitude * x2 * x2};
            case Potential::quadratic: return {amplitude * x1, amplitude * x2};
        }
        return {0.0, 0.0};
    };
    const int n = cells + 1;
    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    std::vector<double> exact_phi;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x1 = -half_width + 2.0 * half_width * i / cells;
            const double x2 = -half_width + 2.0 * half_width * j / cells;
            const Eigen::Vector2d g = grad(x1, x2);
            params.emplace_back(x1, x2);
            pos.push_back(AVec(Vec4(x1, g[0], x2, g[1])));
            // dphi = G . J dG integrates to 2u - x . grad u on gradient graphs
            exact_phi.push_back(2.0 * value(x1, x2) - x1 * g[0] - x2 * g[1]);
        }
    std::vector<Triangle> tris;
    for (int j = 0; j < cells; ++j)
        for (int i = 0; i < cells; ++i) {
            const int a = j * n + i, b = a + 1, c = a + n + 1, d = a + n;
            tris.push_back({a, b, c});
            tris.push_back({a, c, d});
        }
    const int origin = (cells / 2) * n + cells / 2;
    const bool conformal = potential == Potential::zero || potential == Potential::quadratic;
    SurfaceMesh raw(AmbientKind::heisenberg2, 4, std::move(params), std::move(pos), {}, std::move(tris), {origin},
                    ParamChart{conformal, 0.0});
    LiftResult lift = legendrian_lift(raw, 1e-6, origin);
    ZooSurface z;
    z.mesh = std::move(lift.mesh);
    z.mesh.name = "lagrangian_graph(" + potential_name(potential) + ")";
    z.mesh.legendrian_tolerance = 1e-2;
    z.truth = truth_from_positions(z.mesh);
    z.truth.phi = exact_phi;
    for (std::size_t i = 0; i < z.mesh.node_count(); ++i) {
        const double rho = z.truth.rho[i];
        z.truth.gauge[i] = koranyi_gauge(rho, exact_phi[i]);
        z.truth.sigma[i] = rho > 0.0 ? 2.0 * exact_phi[i] / (rho * rho) : 0.0;
    }
    z.truth.origin_weight = kTwoPi;
    gate_legendrian(z.mesh, "make_lagrangian_graph");
    return z;
}

ClassicalKind parse_classical(const std::string& name) {
    if (name == "plane") return ClassicalKind::plane;
    if (name == "two_planes") return ClassicalKind::two_planes;
    if (name == "catenoid") return ClassicalKind::catenoid;
    throw std::invalid_argument("unknown classical minimal surface '" + name + "'");
}

ZooSurface make_classical_minimal(ClassicalKind kind, const PolarResolution& res, const CatenoidResolution& cat) {
    ZooSurface z;
    if (kind == ClassicalKind::catenoid) {
        const int nv = cat.axial, nt = cat.angular;
        std::vector<Eigen::Vector2d> params;
        std::vector<AVec> pos;
        for (int i = 0; i <= nv; ++i) {
            const double v = -cat.half_height + 2.0 * cat.half_height * i / nv;
            for (int j = 0; j < nt; ++j) {
                const double t = kTwoPi * j / nt;
                params.emplace_back(v, t);
                const double w = cat.neck * std::cosh(v / cat.neck);
                pos.push_back(AVec(Eigen::Vector3d(w * std::cos(t), w * std::sin(t), v)));
            }
        }
        std::vector<Triangle> tris;
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nt; ++j) {
                const int a = i * nt + j, b = (i + 1) * nt + j;
                const int c = (i + 1) * nt + (j + 1) % nt, d = i * nt + (j + 1) % nt;
                tris.push_back({a, b, c});
                tris.push_back({a, c, d});
            }
        z.mesh = SurfaceMesh(AmbientKind::euclidean, 3, std::move(params), std::move(pos), {}, std::move(tris), {},
                             ParamChart{true, kTwoPi});
        z.mesh.name = "catenoid";
        z.truth = truth_from_positions(z.mesh);
        gate_minimal(z.mesh, "catenoid");
        return z;
    }

    PolarResolution r = res;
    r.tip_fan = true;
    const PolarLayout L = polar_layout(r, 1.0);
    const int components = kind == ClassicalKind::two_planes ? 2 : 1;
    const int dim = kind == ClassicalKind::two_planes ? 4 : 3;
    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    std::vector<Triangle> tris;
    std::vector<int> origins;
    for (int c = 0; c < components; ++c) {
        const int offset = static_cast<int>(params.size());
        for (const auto& st : L.polar) {
            const Eigen::Vector2d x(st[0] * std::cos(st[1]), st[0] * std::sin(st[1]));
            params.push_back(x);
            AVec p = AVec::Zero(dim);
            if (dim == 3) {
                p[0] = x[0];
                p[1] = x[1];
            } else {
                // span(e1, e3) and span(e2, e4): Lagrangian, meeting only at 0
                p[c] = x[0];
                p[2 + c] = x[1];
            }
            pos.push_back(p);
        }
        for (const auto& tri : L.tris) tris.push_back({tri[0] + offset, tri[1] + offset, tri[2] + offset});
        origins.push_back(L.tip + offset);
        if (c == 0) z.rings = L.rings;
    }
    z.mesh = SurfaceMesh(AmbientKind::euclidean, dim, std::move(params), std::move(pos), {}, std::move(tris), origins,
                         ParamChart{true, 0.0});
    z.mesh.name = components == 2 ? "two_planes" : "euclidean_plane";
    z.truth = truth_from_positions(z.mesh);
    z.truth.origin_weight = std::numbers::pi;
    z.truth.density = std::numbers::pi * components;
    gate_minimal(z.mesh, z.mesh.name);
    return z;
}

}  // namespace hlmono
