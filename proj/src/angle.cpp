#include "hlmono/angle.hpp"

#include "hlmono/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace hlmono {

namespace {

constexpr double kPi = std::numbers::pi;

int edge_between(const SurfaceMesh& mesh, int i, int j) {
    for (int t : mesh.node_triangles(i))
        for (int k = 0; k < 3; ++k) {
            const int e = mesh.triangle_edge(t, k);
            const MeshEdge& edge = mesh.edges()[e];
            if ((edge.a == i && edge.b == j) || (edge.a == j && edge.b == i)) return e;
        }
    return -1;
}

int local_index(const Triangle& tri, int i) {
    for (int k = 0; k < 3; ++k)
        if (tri[k] == i) return k;
    return -1;
}

double element_angle(const SurfaceMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangle(t);
    const Vec4 z0 = mesh.z(tri[0]);
    const Vec4 e1 = mesh.z(tri[1]) - z0;
    const Vec4 e2 = mesh.z(tri[2]) - z0;
    const Vec4 u1 = e1.normalized();
    const Vec4 u2 = (e2 - u1.dot(e2) * u1).normalized();
    const std::complex<double> a1(u1[0], u1[1]), a2(u1[2], u1[3]);
    const std::complex<double> b1(u2[0], u2[1]), b2(u2[2], u2[3]);
    return std::arg(a1 * b2 - a2 * b1);
}

}  // namespace

double wrap_angle(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

double AngleForm::dbeta(const SurfaceMesh& mesh, int i, int j) const {
    const int e = edge_between(mesh, i, j);
    if (e < 0) throw MeshError("dbeta: nodes " + std::to_string(i) + " and " + std::to_string(j) + " are not adjacent");
    return mesh.edges()[e].a == i ? edge_dbeta[e] : -edge_dbeta[e];
}

std::array<double, 3> AngleForm::local_values(const SurfaceMesh& mesh, std::size_t t) const {
    const auto& tri = mesh.triangle(t);
    auto value = [&](int k) { return singular[tri[k]] ? element_beta[t] : node_beta[tri[k]]; };
    const double b0 = value(0);
    return {b0, b0 + wrap_angle(value(1) - b0), b0 + wrap_angle(value(2) - b0)};
}

std::vector<int> ordered_fan(const SurfaceMesh& mesh, int i) {
    const auto tris = mesh.node_triangles(i);
    std::vector<int> fan;
    if (tris.empty()) return fan;
    auto across = [&](int t, int local_side) {
        const MeshEdge& e = mesh.edges()[mesh.triangle_edge(t, local_side)];
        return e.tri[0] == t ? e.tri[1] : e.tri[0];
    };
    int start = tris[0];
    if (mesh.is_boundary_node(i)) {
        for (int t : tris) {
            const int k = local_index(mesh.triangle(t), i);
            if (mesh.edges()[mesh.triangle_edge(t, (k + 2) % 3)].is_boundary()) {
                start = t;
                break;
            }
        }
    }
    int t = start;
    while (t >= 0 && fan.size() < tris.size()) {
        fan.push_back(t);
        const int k = local_index(mesh.triangle(t), i);
        t = across(t, k);  // side (i, next) leads to the following triangle
        if (t == start) break;
    }
    return fan;
}

AngleForm lagrangian_angle_form(const SurfaceMesh& mesh, double lagrangian_tolerance) {
    if (mesh.dim() != 4) throw MeshError("lagrangian angle needs a surface in R^4");
    const LegendrianDefect defect = legendrian_defect(mesh);
    if (!(defect.max_lagrangian_residual <= lagrangian_tolerance))
        throw MeshError("lagrangian angle: mesh is not Lagrangian (symplectic residual " +
                        std::to_string(defect.max_lagrangian_residual) + ")");

    AngleForm f;
    const std::size_t nt = mesh.triangle_count(), nn = mesh.node_count();
    f.element_beta.resize(nt);
    parallel_for(nt, [&](std::size_t t) { f.element_beta[t] = element_angle(mesh, t); });

    f.node_beta.assign(nn, 0.0);
    f.fan_winding.assign(nn, 0.0);
    f.singular.assign(nn, 0);
    parallel_for(nn, [&](std::size_t n) {
        const int i = static_cast<int>(n);
        const std::vector<int> fan = ordered_fan(mesh, i);
        if (fan.empty()) return;
        double b = f.element_beta[fan[0]], sum = b;
        for (std::size_t k = 1; k < fan.size(); ++k) {
            b += wrap_angle(f.element_beta[fan[k]] - f.element_beta[fan[k - 1]]);
            sum += b;
        }
        f.node_beta[n] = wrap_angle(sum / static_cast<double>(fan.size()));
        if (!mesh.is_boundary_node(i)) {
            f.fan_winding[n] = b + wrap_angle(f.element_beta[fan[0]] - f.element_beta[fan.back()]) -
                               f.element_beta[fan[0]];
            if (std::abs(f.fan_winding[n]) > kPi) f.singular[n] = 1;
        }
        if (mesh.is_origin_preimage(i)) f.singular[n] = 1;
    });

    f.edge_dbeta.resize(mesh.edge_count());
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
        const MeshEdge& edge = mesh.edges()[e];
        f.edge_dbeta[e] = wrap_angle(f.node_beta[edge.b] - f.node_beta[edge.a]);
    }
    return f;
}

MaslovResult maslov_index(const SurfaceMesh& mesh, const AngleForm& form, const std::vector<int>& loop) {
    if (loop.size() < 3) throw std::invalid_argument("maslov_index: loop needs at least 3 nodes");
    std::vector<double> steps;
    for (std::size_t k = 0; k < loop.size(); ++k) {
        const int i = loop[k], j = loop[(k + 1) % loop.size()];
        if (form.singular[i]) throw MeshError("maslov_index: loop crosses singular node " + std::to_string(i));
        steps.push_back(form.dbeta(mesh, i, j));
    }
    const double turns = pairwise_sum(steps) / (2.0 * kPi);
    MaslovResult r;
    r.index = static_cast<int>(std::lround(turns));
    r.rounding_residual = std::abs(turns - r.index);
    if (!(r.rounding_residual < 0.1))
        throw MeshError("maslov_index: rounding residual " + std::to_string(r.rounding_residual) + " too large");
    return r;
}

ElResidual el_residual(const SurfaceMesh& mesh, const AngleForm& form) {
    ElResidual out;
    out.used_chart = mesh.chart().conformal;
    const WeakOperatorContext ctx(mesh, out.used_chart ? Coordinates::chart : Coordinates::ambient);
    const WeakOperatorContext amb(mesh);
    const ScalarField gauge = gauge_field(mesh);
    const std::size_t nt = mesh.triangle_count(), nn = mesh.node_count();

    std::array<ScalarField, 4> G, lapG;
    for (int c = 0; c < 4; ++c) {
        G[c].values.resize(nn);
        for (std::size_t i = 0; i < nn; ++i) G[c][i] = mesh.position(static_cast<int>(i))[c];
        lapG[c] = laplace_beltrami(ctx, G[c]);
    }

    // grad(beta_H) . grad G per element, and the weak divergence of e^{-i beta} grad G
    std::vector<Vec4> coupling(nt);
    std::vector<std::array<Vec4, 3>> flux(nt);
    parallel_for(nt, [&](std::size_t t) {
        const auto lv = form.local_values(mesh, t);
        const AVec grad_beta_h = -0.5 * ctx.gradient(t, lv[0], lv[1], lv[2]);
        std::array<AVec, 4> gradG;
        for (int c = 0; c < 4; ++c) gradG[c] = ctx.gradient(t, G[c]);
        for (int c = 0; c < 4; ++c) coupling[t][c] = grad_beta_h.dot(gradG[c]);
        const double ct = std::cos(form.element_beta[t]), st = -std::sin(form.element_beta[t]);
        for (int k = 0; k < 3; ++k) {
            Vec4 m;
            for (int c = 0; c < 4; ++c) m[c] = ctx.hat_gradient(t, k).dot(gradG[c]);
            flux[t][k] = ctx.area(t) * (ct * m + st * apply_J(m));
        }
    });

    std::vector<Vec4> coupling_node(nn, Vec4::Zero()), div_node(nn, Vec4::Zero());
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangle(t);
        for (int k = 0; k < 3; ++k) {
            coupling_node[tri[k]] += ctx.area(t) / 3.0 * coupling[t];
            div_node[tri[k]] += flux[t][k];
        }
    }

    std::vector<double> lap_beta(nn, 0.0);
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
        const MeshEdge& edge = mesh.edges()[e];
        const double w = ctx.edge_weights()[e] * form.edge_dbeta[e];
        lap_beta[edge.a] += w;
        lap_beta[edge.b] -= w;
    }

    // Flat-chart residuals are rescaled to intrinsic ones by the conformal factor
    // m_chart / m_ambient, then made dimensionless with the gauge.
    // Nodal beta is one-sided on boundary nodes and next to singular ones.
    std::vector<char> biased(nn, 0);
    for (std::size_t n = 0; n < nn; ++n) {
        if (!form.singular[n]) continue;
        biased[n] = 1;
        for (int j : mesh.node_neighbors(static_cast<int>(n))) biased[j] = 1;
    }
    for (std::size_t n = 0; n < nn; ++n)
        if (mesh.is_boundary_node(static_cast<int>(n))) biased[n] = 1;

    std::vector<double> el2(nn, 0.0), harm2(nn, 0.0), div2(nn, 0.0), mass(nn, 0.0);
    parallel_for(nn, [&](std::size_t n) {
        const int i = static_cast<int>(n);
        if (biased[n]) return;
        for (int j : mesh.node_neighbors(i))
            if (biased[j]) return;
        const double m = amb.mass(i);
        const double conformal = ctx.mass(i) / m;
        const double r = gauge[n];
        const Vec4 lap(lapG[0][n], lapG[1][n], lapG[2][n], lapG[3][n]);
        const Vec4 res = (apply_J(lap) - 2.0 * coupling_node[n] / ctx.mass(i)) * conformal;
        el2[n] = m * r * r * res.squaredNorm();
        const double lb = lap_beta[n] / m;
        harm2[n] = m * r * r * r * r * lb * lb;
        div2[n] = r * r * div_node[n].squaredNorm() / m;
        mass[n] = m;
    });

    const double total = pairwise_sum(mass);
    for (double m : mass) out.evaluated_nodes += m > 0.0 ? 1 : 0;
    if (total > 0.0) {
        out.gauss_norm = std::sqrt(pairwise_sum(el2) / total);
        out.harmonic_norm = std::sqrt(pairwise_sum(harm2) / total);
        out.divergence_norm = std::sqrt(pairwise_sum(div2) / total);
    }
    out.el_norm = std::hypot(out.gauss_norm, out.harmonic_norm);
    return out;
}

AVec beta_h_gradient(const WeakOperatorContext& ctx, const AngleForm& form, std::size_t t) {
    const auto lv = form.local_values(ctx.mesh(), t);
    return -0.5 * ctx.gradient(t, lv[0], lv[1], lv[2]);
}

}  // namespace hlmono
