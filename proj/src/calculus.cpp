#include "hlmono/calculus.hpp"

#include "hlmono/parallel.hpp"

#include <cmath>

namespace hlmono {

WeakOperatorContext::WeakOperatorContext(const SurfaceMesh& mesh, Coordinates coords)
    : mesh_(&mesh), coords_(coords), dim_(coords == Coordinates::chart ? 2 : mesh.dim()) {
    const std::size_t nt = mesh.triangle_count();
    areas_.assign(nt, 0.0);
    hat_.assign(3 * nt, AVec::Zero(dim_));
    basis_.assign(2 * nt, AVec::Zero(dim_));
    std::vector<std::array<double, 3>> cot(nt);

    parallel_for(nt, [&](std::size_t t) {
        const auto& tri = mesh.triangle(t);
        AVec e1(dim_), e2(dim_);
        if (coords_ == Coordinates::chart) {
            e1 = mesh.param_edge(tri[0], tri[1]);
            e2 = mesh.param_edge(tri[0], tri[2]);
        } else {
            e1 = mesh.position(tri[1]) - mesh.position(tri[0]);
            e2 = mesh.position(tri[2]) - mesh.position(tri[0]);
        }
        const double a = e1.dot(e1), b = e1.dot(e2), c = e2.dot(e2);
        const double det = a * c - b * b;
        areas_[t] = 0.5 * std::sqrt(det);
        // grad lambda_1 = (c e1 - b e2) / det, grad lambda_2 = (a e2 - b e1) / det
        const AVec g1 = (c * e1 - b * e2) / det;
        const AVec g2 = (a * e2 - b * e1) / det;
        hat_[3 * t + 0] = -g1 - g2;
        hat_[3 * t + 1] = g1;
        hat_[3 * t + 2] = g2;
        const AVec u0 = e1 / std::sqrt(a);
        AVec u1 = e2 - u0.dot(e2) * u0;
        u1 /= u1.norm();
        basis_[2 * t] = u0;
        basis_[2 * t + 1] = u1;
        // cot of the angle at vertex k equals -A * grad l_i . grad l_j * 2 for the other two
        for (int k = 0; k < 3; ++k) {
            const AVec& gi = hat_[3 * t + (k + 1) % 3];
            const AVec& gj = hat_[3 * t + (k + 2) % 3];
            cot[t][k] = -2.0 * areas_[t] * gi.dot(gj);
        }
    });

    masses_.assign(mesh.node_count(), 0.0);
    weights_.assign(mesh.edge_count(), 0.0);
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = mesh.triangle(t);
        for (int k = 0; k < 3; ++k) {
            masses_[tri[k]] += areas_[t] / 3.0;
            // side (v_{k+1}, v_{k+2}) is opposite vertex k
            weights_[mesh.triangle_edge(t, (k + 1) % 3)] += 0.5 * cot[t][k];
        }
    }
}

AVec WeakOperatorContext::gradient(std::size_t t, double f0, double f1, double f2) const {
    return f0 * hat_[3 * t] + f1 * hat_[3 * t + 1] + f2 * hat_[3 * t + 2];
}

AVec WeakOperatorContext::gradient(std::size_t t, const ScalarField& f) const {
    const auto& tri = mesh_->triangle(t);
    return gradient(t, f[tri[0]], f[tri[1]], f[tri[2]]);
}

AVec WeakOperatorContext::project_tangent(std::size_t t, const AVec& w) const {
    const AVec& u0 = basis_[2 * t];
    const AVec& u1 = basis_[2 * t + 1];
    return w.dot(u0) * u0 + w.dot(u1) * u1;
}

TangentField surface_gradient(const WeakOperatorContext& ctx, const ScalarField& f) {
    TangentField out;
    out.vectors.resize(ctx.mesh().triangle_count());
    parallel_for(out.vectors.size(), [&](std::size_t t) { out.vectors[t] = ctx.gradient(t, f); });
    return out;
}

ScalarField laplace_beltrami(const WeakOperatorContext& ctx, const ScalarField& f) {
    const SurfaceMesh& mesh = ctx.mesh();
    ScalarField out;
    out.values.assign(mesh.node_count(), 0.0);
    const auto& w = ctx.edge_weights();
    std::vector<double> acc(mesh.node_count(), 0.0);
    for (std::size_t k = 0; k < mesh.edge_count(); ++k) {
        const auto& e = mesh.edges()[k];
        const double d = w[k] * (f[e.b] - f[e.a]);
        acc[e.a] += d;
        acc[e.b] -= d;
    }
    for (std::size_t i = 0; i < mesh.node_count(); ++i) out.values[i] = acc[i] / ctx.mass(static_cast<int>(i));
    return out;
}

TangentNormalSplit tangent_normal_split(const WeakOperatorContext& ctx, std::size_t element, const AVec& w) {
    TangentNormalSplit s;
    s.tangential = ctx.project_tangent(element, w);
    s.normal = w - s.tangential;
    return s;
}

double weak_divergence_residual(const WeakOperatorContext& ctx, const TangentField& V, const ScalarField& s,
                                const std::map<int, double>& point_weights, const ScalarField& test) {
    const SurfaceMesh& mesh = ctx.mesh();
    const double flux = parallel_sum(mesh.triangle_count(),
                                     [&](std::size_t t) { return ctx.area(t) * ctx.gradient(t, test).dot(V.vectors[t]); });
    const double source =
        parallel_sum(mesh.node_count(), [&](std::size_t i) { return ctx.mass(static_cast<int>(i)) * test[i] * s[i]; });
    double points = 0.0;
    for (const auto& [node, weight] : point_weights) points += test[node] * weight;
    return -flux - source - points;
}

double dirichlet_pairing(const WeakOperatorContext& ctx, const ScalarField& f, const ScalarField& g) {
    return parallel_sum(ctx.mesh().triangle_count(),
                        [&](std::size_t t) { return ctx.area(t) * ctx.gradient(t, f).dot(ctx.gradient(t, g)); });
}

double minimality_residual(const SurfaceMesh& mesh) {
    const WeakOperatorContext ctx(mesh);
    std::vector<ScalarField> lap;
    for (int k = 0; k < mesh.dim(); ++k) {
        ScalarField f;
        f.values.resize(mesh.node_count());
        for (std::size_t i = 0; i < mesh.node_count(); ++i) f.values[i] = mesh.position(i)[k];
        lap.push_back(laplace_beltrami(ctx, f));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        if (!ctx.is_interior(static_cast<int>(i))) continue;
        double l2 = 0.0;
        for (const auto& f : lap) l2 += f[i] * f[i];
        const double rho2 = mesh.position(i).squaredNorm();
        num += ctx.mass(static_cast<int>(i)) * l2 * rho2;
        den += ctx.mass(static_cast<int>(i));
    }
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace hlmono
