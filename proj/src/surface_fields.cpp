#include "hlmono/surface_fields.hpp"

#include <cmath>
#include <queue>

namespace hlmono {

FieldSample sample_fields(const WeakOperatorContext& ctx, std::size_t t, const Eigen::Vector3d& bary) {
    const SurfaceMesh& mesh = ctx.mesh();
    const auto& tri = mesh.triangle(t);
    const int n = mesh.dim();
    FieldSample s;
    s.z = bary[0] * mesh.position(tri[0]) + bary[1] * mesh.position(tri[1]) + bary[2] * mesh.position(tri[2]);
    s.phi = bary[0] * mesh.phi(tri[0]) + bary[1] * mesh.phi(tri[1]) + bary[2] * mesh.phi(tri[2]);
    s.rho = s.z.norm();
    s.grad_rho = s.grad_phi = s.grad_gauge = s.grad_sigma = s.normal_gauge = AVec::Zero(n);
    if (s.rho == 0.0) {
        s.regular = false;
        return s;
    }
    AVec grad_gauge(n);
    if (mesh.is_heisenberg()) {
        const Vec4 z4(s.z[0], s.z[1], s.z[2], s.z[3]);
        const GaugeJet jet = gauge_jet(z4, s.phi);
        s.gauge = jet.gauge;
        s.sigma = jet.phase;
        s.grad_rho = ctx.project_tangent(t, AVec(jet.grad_rho));
        s.grad_phi = ctx.project_tangent(t, AVec(jet.grad_phi));
        s.grad_sigma = ctx.project_tangent(t, AVec(jet.grad_phase));
        grad_gauge = jet.grad_gauge;
    } else {
        s.gauge = s.rho;
        grad_gauge = s.z / s.rho;
        s.grad_rho = ctx.project_tangent(t, grad_gauge);
    }
    s.grad_gauge = ctx.project_tangent(t, grad_gauge);
    s.normal_gauge = grad_gauge - s.grad_gauge;
    return s;
}

std::vector<int> origin_ring_distance(const SurfaceMesh& mesh) {
    std::vector<int> dist(mesh.node_count(), -1);
    std::queue<int> queue;
    for (int p : mesh.origin_preimages()) {
        dist[p] = 0;
        queue.push(p);
    }
    while (!queue.empty()) {
        const int i = queue.front();
        queue.pop();
        for (int j : mesh.node_neighbors(i)) {
            if (dist[j] >= 0) continue;
            dist[j] = dist[i] + 1;
            queue.push(j);
        }
    }
    return dist;
}

std::vector<char> excised_elements(const SurfaceMesh& mesh, int rings) {
    const std::vector<int> dist = origin_ring_distance(mesh);
    std::vector<char> out(mesh.triangle_count(), 0);
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        for (int v : mesh.triangle(t))
            if (dist[v] >= 0 && dist[v] < rings) out[t] = 1;
    return out;
}

double excision_radius(const SurfaceMesh& mesh, const std::vector<char>& excised) {
    double r = 0.0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
        if (!excised[t]) continue;
        for (int v : mesh.triangle(t)) {
            double nearest = INFINITY;
            for (int p : mesh.origin_preimages()) nearest = std::min(nearest, mesh.param_edge(p, v).norm());
            if (std::isfinite(nearest)) r = std::max(r, nearest);
        }
    }
    return r;
}

std::vector<char> boundary_elements(const SurfaceMesh& mesh) {
    std::vector<char> out(mesh.triangle_count(), 0);
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
        for (int v : mesh.triangle(t))
            if (mesh.is_boundary_node(v)) out[t] = 1;
    return out;
}

}  // namespace hlmono
