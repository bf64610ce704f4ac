#include "hlmono/mesh.hpp"

#include "hlmono/parallel.hpp"
#include "hlmono/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <tuple>

namespace hlmono {

namespace {

std::string tri_name(std::size_t t) { return "triangle " + std::to_string(t); }

double wedge_norm(const AVec& e1, const AVec& e2) {
    const double a = e1.squaredNorm(), b = e2.squaredNorm(), c = e1.dot(e2);
    return std::sqrt(std::max(0.0, a * b - c * c));
}

}  // namespace

SurfaceMesh::SurfaceMesh(AmbientKind kind, int dim, std::vector<Eigen::Vector2d> params, std::vector<AVec> positions,
                         std::vector<double> phi, std::vector<Triangle> triangles, std::vector<int> origin_preimages,
                         ParamChart chart)
    : kind_(kind),
      dim_(dim),
      params_(std::move(params)),
      positions_(std::move(positions)),
      phi_(std::move(phi)),
      triangles_(std::move(triangles)),
      origins_(std::move(origin_preimages)),
      chart_(chart) {
    if (kind_ == AmbientKind::heisenberg2 && dim_ != 4) throw MeshError("heisenberg2 meshes have dimension 4");
    if (kind_ == AmbientKind::euclidean && (dim_ < 2 || dim_ > 6))
        throw MeshError("euclidean dimension must be in 2..6");
    if (positions_.size() != params_.size()) throw MeshError("positions and parameter nodes differ in count");
    if (kind_ == AmbientKind::heisenberg2 && phi_.empty()) phi_.assign(params_.size(), 0.0);
    if (kind_ == AmbientKind::heisenberg2 && phi_.size() != params_.size())
        throw MeshError("phi must have one value per node");
    if (kind_ == AmbientKind::euclidean) phi_.clear();
    std::sort(origins_.begin(), origins_.end());
    origins_.erase(std::unique(origins_.begin(), origins_.end()), origins_.end());
    validate();
    build_topology();
}

Vec4 SurfaceMesh::z(int i) const {
    const AVec& p = positions_[i];
    return Vec4(p[0], p[1], p[2], p[3]);
}

bool SurfaceMesh::is_origin_preimage(int i) const {
    return std::binary_search(origins_.begin(), origins_.end(), i);
}

Eigen::Vector2d SurfaceMesh::param_edge(int a, int b) const {
    Eigen::Vector2d d = params_[b] - params_[a];
    if (chart_.period > 0.0) d[1] -= chart_.period * std::round(d[1] / chart_.period);
    return d;
}

std::span<const int> SurfaceMesh::node_triangles(int i) const {
    return {node_tri_list_.data() + node_tri_offsets_[i],
            static_cast<std::size_t>(node_tri_offsets_[i + 1] - node_tri_offsets_[i])};
}

std::span<const int> SurfaceMesh::node_neighbors(int i) const {
    return {node_nbr_list_.data() + node_nbr_offsets_[i],
            static_cast<std::size_t>(node_nbr_offsets_[i + 1] - node_nbr_offsets_[i])};
}

SurfaceMesh SurfaceMesh::with_phi(std::vector<double> phi) const {
    if (!is_heisenberg()) throw MeshError("with_phi: euclidean mesh has no Legendrian coordinate");
    if (phi.size() != node_count()) throw MeshError("with_phi: size mismatch");
    SurfaceMesh m = *this;
    m.phi_ = std::move(phi);
    return m;
}

SurfaceMesh SurfaceMesh::with_origins(std::vector<int> origins) const {
    SurfaceMesh m = *this;
    std::sort(origins.begin(), origins.end());
    origins.erase(std::unique(origins.begin(), origins.end()), origins.end());
    for (int o : origins)
        if (o < 0 || o >= static_cast<int>(node_count())) throw MeshError("origin index out of range");
    m.origins_ = std::move(origins);
    return m;
}

void SurfaceMesh::validate() const {
    const int n = static_cast<int>(params_.size());
    for (const AVec& p : positions_)
        if (p.size() != dim_) throw MeshError("position with wrong dimension");
    for (int o : origins_)
        if (o < 0 || o >= n) throw MeshError("origin index " + std::to_string(o) + " out of range");
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int k = 0; k < 3; ++k)
            if (tri[k] < 0 || tri[k] >= n) throw MeshError(tri_name(t) + ": node index out of range");
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw MeshError(tri_name(t) + ": repeated node index");
        const Eigen::Vector2d p1 = param_edge(tri[0], tri[1]);
        const Eigen::Vector2d p2 = param_edge(tri[0], tri[2]);
        const double pdet = p1[0] * p2[1] - p1[1] * p2[0];
        const double pscale = std::max(p1.squaredNorm(), p2.squaredNorm());
        if (!(std::abs(pdet) > 1e-14 * pscale)) throw MeshError(tri_name(t) + ": degenerate in parameter space");
        const AVec e1 = positions_[tri[1]] - positions_[tri[0]];
        const AVec e2 = positions_[tri[2]] - positions_[tri[0]];
        const double scale = std::max(e1.squaredNorm(), e2.squaredNorm());
        if (!(wedge_norm(e1, e2) > 1e-12 * scale)) throw MeshError(tri_name(t) + ": degenerate image triangle");
    }
}

void SurfaceMesh::build_topology() {
    const int n = static_cast<int>(params_.size());
    struct HalfEdge {
        int lo, hi, tri, local;
        bool forward;  // traversed lo -> hi
    };
    std::vector<HalfEdge> half;
    half.reserve(3 * triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        for (int k = 0; k < 3; ++k) {
            const int a = triangles_[t][k], b = triangles_[t][(k + 1) % 3];
            half.push_back({std::min(a, b), std::max(a, b), static_cast<int>(t), k, a < b});
        }
    }
    std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
        return std::tie(x.lo, x.hi, x.tri) < std::tie(y.lo, y.hi, y.tri);
    });
    tri_edges_.assign(triangles_.size(), {-1, -1, -1});
    edges_.clear();
    for (std::size_t i = 0; i < half.size();) {
        std::size_t j = i;
        while (j < half.size() && half[j].lo == half[i].lo && half[j].hi == half[i].hi) ++j;
        if (j - i > 2)
            throw MeshError("edge (" + std::to_string(half[i].lo) + "," + std::to_string(half[i].hi) +
                            ") shared by more than two triangles; " + tri_name(half[i + 2].tri));
        if (j - i == 2 && half[i].forward == half[i + 1].forward)
            throw MeshError("inconsistent orientation at " + tri_name(half[i + 1].tri));
        MeshEdge e;
        e.a = half[i].lo;
        e.b = half[i].hi;
        const int id = static_cast<int>(edges_.size());
        for (std::size_t k = i; k < j; ++k) {
            e.tri[k - i] = half[k].tri;
            tri_edges_[half[k].tri][half[k].local] = id;
        }
        edges_.push_back(e);
        i = j;
    }

    boundary_node_.assign(n, 0);
    std::vector<int> nbr_count(n, 0);
    for (const auto& e : edges_) {
        if (e.is_boundary()) boundary_node_[e.a] = boundary_node_[e.b] = 1;
        ++nbr_count[e.a];
        ++nbr_count[e.b];
    }
    node_nbr_offsets_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) node_nbr_offsets_[i + 1] = node_nbr_offsets_[i] + nbr_count[i];
    node_nbr_list_.assign(node_nbr_offsets_[n], 0);
    std::vector<int> fill(node_nbr_offsets_.begin(), node_nbr_offsets_.end() - 1);
    for (const auto& e : edges_) {
        node_nbr_list_[fill[e.a]++] = e.b;
        node_nbr_list_[fill[e.b]++] = e.a;
    }

    std::vector<int> tri_count(n, 0);
    for (const auto& tri : triangles_)
        for (int v : tri) ++tri_count[v];
    node_tri_offsets_.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) node_tri_offsets_[i + 1] = node_tri_offsets_[i] + tri_count[i];
    node_tri_list_.assign(node_tri_offsets_[n], 0);
    fill.assign(node_tri_offsets_.begin(), node_tri_offsets_.end() - 1);
    for (std::size_t t = 0; t < triangles_.size(); ++t)
        for (int v : triangles_[t]) node_tri_list_[fill[v]++] = static_cast<int>(t);
}

std::vector<ElementMetric> induced_metric(const SurfaceMesh& mesh) {
    std::vector<ElementMetric> out(mesh.triangle_count());
    parallel_for(mesh.triangle_count(), [&](std::size_t t) {
        const auto& tri = mesh.triangle(t);
        Eigen::Matrix2d P;
        P.col(0) = mesh.param_edge(tri[0], tri[1]);
        P.col(1) = mesh.param_edge(tri[0], tri[2]);
        const AVec e1 = mesh.position(tri[1]) - mesh.position(tri[0]);
        const AVec e2 = mesh.position(tri[2]) - mesh.position(tri[0]);
        Eigen::Matrix2d E;  // Gram matrix of the image edges
        E << e1.dot(e1), e1.dot(e2), e1.dot(e2), e2.dot(e2);
        const Eigen::Matrix2d Pinv = P.inverse();
        const Eigen::Matrix2d g = Pinv.transpose() * E * Pinv;
        if (!(g.determinant() > 0.0)) throw MeshError("induced_metric: degenerate " + tri_name(t));
        out[t] = {g(0, 0), g(0, 1), g(1, 1), std::sqrt(g.determinant())};
    });
    return out;
}

double triangle_area(const SurfaceMesh& mesh, std::size_t t) {
    const auto& tri = mesh.triangle(t);
    const AVec e1 = mesh.position(tri[1]) - mesh.position(tri[0]);
    const AVec e2 = mesh.position(tri[2]) - mesh.position(tri[0]);
    return 0.5 * wedge_norm(e1, e2);
}

double total_area(const SurfaceMesh& mesh) {
    return parallel_sum(mesh.triangle_count(), [&](std::size_t t) { return triangle_area(mesh, t); });
}

ScalarField rho_field(const SurfaceMesh& mesh) {
    ScalarField f;
    f.values.resize(mesh.node_count());
    for (std::size_t i = 0; i < mesh.node_count(); ++i) f.values[i] = mesh.position(i).norm();
    return f;
}

ScalarField gauge_field(const SurfaceMesh& mesh) {
    if (!mesh.is_heisenberg()) return rho_field(mesh);
    ScalarField f;
    f.values.resize(mesh.node_count());
    for (std::size_t i = 0; i < mesh.node_count(); ++i)
        f.values[i] = koranyi_gauge(mesh.position(i).norm(), mesh.phi(i));
    return f;
}

double band_area(const SurfaceMesh& mesh, const ScalarField& f, double lo, double hi) {
    return parallel_sum(mesh.triangle_count(), [&](std::size_t t) {
        const auto& tri = mesh.triangle(t);
        const double frac = band_fraction({f[tri[0]], f[tri[1]], f[tri[2]]}, lo, hi);
        return frac == 0.0 ? 0.0 : frac * triangle_area(mesh, t);
    });
}

double area_below(const SurfaceMesh& mesh, double r) {
    return band_area(mesh, gauge_field(mesh), -std::numeric_limits<double>::infinity(), r);
}

double mesh_size(const SurfaceMesh& mesh) {
    const ScalarField g = gauge_field(mesh);
    double h = 0.0;
    for (const auto& e : mesh.edges()) {
        const double len = (mesh.position(e.b) - mesh.position(e.a)).norm();
        const double mid = 0.5 * (g[e.a] + g[e.b]);
        h = std::max(h, len / std::max(1.0, mid));
    }
    return h;
}

double max_param_edge_length(const SurfaceMesh& mesh) {
    double h = 0.0;
    for (const auto& e : mesh.edges()) h = std::max(h, mesh.param_edge(e.a, e.b).norm());
    return h;
}

LiftResult legendrian_lift(const SurfaceMesh& mesh, double defect_tolerance, int root) {
    if (!mesh.is_heisenberg()) throw MeshError("legendrian_lift: mesh is not heisenberg2");
    const int n = static_cast<int>(mesh.node_count());
    if (n == 0) throw MeshError("legendrian_lift: empty mesh");
    if (root < 0) root = mesh.origin_preimages().empty() ? 0 : mesh.origin_preimages().front();

    const auto& edges = mesh.edges();
    std::vector<double> inc(edges.size());  // increment a -> b
    for (std::size_t k = 0; k < edges.size(); ++k) inc[k] = lift_increment(mesh.z(edges[k].a), mesh.z(edges[k].b));

    // Edge ids incident to each node.
    std::vector<std::vector<int>> incident(n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        incident[edges[k].a].push_back(static_cast<int>(k));
        incident[edges[k].b].push_back(static_cast<int>(k));
    }

    std::vector<double> phi(n, 0.0);
    std::vector<char> done(n, 0), tree_edge(edges.size(), 0);
    using Item = std::tuple<double, int, int>;  // |inc|, edge, target node
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    auto push_from = [&](int v) {
        for (int k : incident[v]) {
            const int w = edges[k].a == v ? edges[k].b : edges[k].a;
            if (!done[w]) heap.emplace(std::abs(inc[k]), k, w);
        }
    };
    done[root] = 1;
    int reached = 1;
    push_from(root);
    while (!heap.empty()) {
        const auto [weight, k, w] = heap.top();
        heap.pop();
        if (done[w]) continue;
        const int v = edges[k].a == w ? edges[k].b : edges[k].a;
        phi[w] = phi[v] + (edges[k].a == v ? inc[k] : -inc[k]);
        done[w] = 1;
        tree_edge[k] = 1;
        ++reached;
        push_from(w);
    }
    if (reached != n) throw MeshError("legendrian_lift: mesh is disconnected");

    double defect = 0.0;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (tree_edge[k]) continue;
        defect = std::max(defect, std::abs(phi[edges[k].a] + inc[k] - phi[edges[k].b]));
    }
    LiftResult r;
    r.phi.values = phi;
    r.loop_defect = defect;
    r.defect_warning = defect > defect_tolerance;
    r.mesh = mesh.with_phi(std::move(phi));
    return r;
}

LegendrianDefect legendrian_defect(const SurfaceMesh& mesh) {
    if (!mesh.is_heisenberg()) throw MeshError("legendrian_defect: mesh is not heisenberg2");
    const std::size_t nt = mesh.triangle_count();
    std::vector<double> contact(nt), lagrangian(nt);
    parallel_for(nt, [&](std::size_t t) {
        const auto& tri = mesh.triangle(t);
        double c = 0.0;
        for (int k = 1; k <= 2; ++k) {
            const int i = tri[0], j = tri[k];
            const Vec4 zi = mesh.z(i), zj = mesh.z(j);
            const double len = (zj - zi).norm();
            const double rho_mid = (0.5 * (zi + zj)).norm();
            const double r = mesh.phi(j) - mesh.phi(i) - lift_increment(zi, zj);
            c += std::abs(r) / (len * std::max(rho_mid, len));
        }
        contact[t] = c;
        const Vec4 e1 = mesh.z(tri[1]) - mesh.z(tri[0]);
        const Vec4 e2 = mesh.z(tri[2]) - mesh.z(tri[0]);
        const double a = e1.squaredNorm(), b = e2.squaredNorm(), d = e1.dot(e2);
        lagrangian[t] = std::abs(symplectic_form(e1, e2)) / std::sqrt(std::max(0.0, a * b - d * d));
    });
    LegendrianDefect out;
    for (std::size_t t = 0; t < nt; ++t) {
        out.max_contact_residual = std::max(out.max_contact_residual, contact[t]);
        out.max_lagrangian_residual = std::max(out.max_lagrangian_residual, lagrangian[t]);
    }
    return out;
}

}  // namespace hlmono
