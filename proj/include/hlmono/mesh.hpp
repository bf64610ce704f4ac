#pragma once

#include "hlmono/heisenberg.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlmono {

enum class AmbientKind { heisenberg2, euclidean };

/// Ambient position: z in R^4 for heisenberg2 meshes, a point of R^n (n <= 6) otherwise.
using AVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 6, 1>;
using Triangle = std::array<int, 3>;

class MeshError : public std::runtime_error {
public:
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter-plane coordinates. When `conformal` is set they form a conformal
/// chart of the immersion; `period` > 0 makes x2 periodic (cones use (u, t)).
struct ParamChart {
    bool conformal = false;
    double period = 0.0;
};

/// Undirected mesh edge a < b with its (one or two) incident triangles.
struct MeshEdge {
    int a = 0;
    int b = 0;
    std::array<int, 2> tri{-1, -1};

    bool is_boundary() const { return tri[1] < 0; }
};

/// Triangulated immersed surface. Immutable after construction; the constructor
/// validates indices, non-degeneracy and orientation consistency.
class SurfaceMesh {
public:
    SurfaceMesh() = default;
    SurfaceMesh(AmbientKind kind, int dim, std::vector<Eigen::Vector2d> params, std::vector<AVec> positions,
                std::vector<double> phi, std::vector<Triangle> triangles, std::vector<int> origin_preimages = {},
                ParamChart chart = {});

    AmbientKind kind() const { return kind_; }
    bool is_heisenberg() const { return kind_ == AmbientKind::heisenberg2; }
    int dim() const { return dim_; }

    std::size_t node_count() const { return params_.size(); }
    std::size_t triangle_count() const { return triangles_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Triangle>& triangles() const { return triangles_; }
    const Triangle& triangle(std::size_t t) const { return triangles_[t]; }
    const Eigen::Vector2d& param(int i) const { return params_[i]; }
    const AVec& position(int i) const { return positions_[i]; }
    const std::vector<AVec>& positions() const { return positions_; }
    Vec4 z(int i) const;
    double phi(int i) const { return phi_.empty() ? 0.0 : phi_[i]; }
    const std::vector<double>& phi_values() const { return phi_; }
    HeisenbergPoint point(int i) const { return {z(i), phi(i)}; }

    const std::vector<int>& origin_preimages() const { return origins_; }
    bool is_origin_preimage(int i) const;
    const ParamChart& chart() const { return chart_; }

    /// Parameter difference param(b) - param(a), wrapped by the chart period.
    Eigen::Vector2d param_edge(int a, int b) const;

    const std::vector<MeshEdge>& edges() const { return edges_; }
    /// Edge index of the side (v_k, v_{k+1}) of triangle t.
    int triangle_edge(std::size_t t, int k) const { return tri_edges_[t][k]; }
    bool is_boundary_node(int i) const { return boundary_node_[i] != 0; }
    std::span<const int> node_triangles(int i) const;
    std::span<const int> node_neighbors(int i) const;

    /// Replaces the Legendrian coordinate (heisenberg2 only).
    SurfaceMesh with_phi(std::vector<double> phi) const;
    SurfaceMesh with_origins(std::vector<int> origins) const;

    /// Stored contact tolerance for meshes flagged Legendrian.
    std::optional<double> legendrian_tolerance;
    std::string name;

private:
    void build_topology();
    void validate() const;

    AmbientKind kind_ = AmbientKind::heisenberg2;
    int dim_ = 4;
    std::vector<Eigen::Vector2d> params_;
    std::vector<AVec> positions_;
    std::vector<double> phi_;
    std::vector<Triangle> triangles_;
    std::vector<int> origins_;
    ParamChart chart_;

    std::vector<MeshEdge> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<char> boundary_node_;
    std::vector<int> node_tri_offsets_, node_tri_list_;
    std::vector<int> node_nbr_offsets_, node_nbr_list_;
};

/// Scalar per node.
struct ScalarField {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
};

/// Ambient vector per triangle.
struct TangentField {
    std::vector<AVec> vectors;
};

/// Per-element first fundamental form with respect to the parameter chart.
struct ElementMetric {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;
    double area_element = 0.0;
};

/// Induced metric of the affine interpolant (z-coordinates only for heisenberg2).
std::vector<ElementMetric> induced_metric(const SurfaceMesh& mesh);

/// Area of the image triangle in the ambient Euclidean space.
double triangle_area(const SurfaceMesh& mesh, std::size_t t);
double total_area(const SurfaceMesh& mesh);

/// Per-node gauge: Koranyi gauge for heisenberg2 meshes, |x| for euclidean ones.
ScalarField gauge_field(const SurfaceMesh& mesh);
ScalarField rho_field(const SurfaceMesh& mesh);

/// Area of { lo < f < hi } for the linear interpolant of the nodal field f.
double band_area(const SurfaceMesh& mesh, const ScalarField& f, double lo, double hi);
/// Area of { gauge < r }.
double area_below(const SurfaceMesh& mesh, double r);

/// Scale-aware mesh size: max over edges of |e| / max(1, gauge at the midpoint).
/// For geometrically graded meshes this is the relative edge length.
double mesh_size(const SurfaceMesh& mesh);
double max_param_edge_length(const SurfaceMesh& mesh);

struct LiftResult {
    ScalarField phi;
    double loop_defect = 0.0;
    bool defect_warning = false;
    SurfaceMesh mesh;  ///< input mesh with phi written in
};

/// Integrates dphi = G . J dG over a spanning tree rooted at `root` (default:
/// the first origin preimage, else node 0). The tree minimizes |increment| so
/// exactly Legendrian edges are preferred; loop_defect is the largest circulation
/// over the fundamental cycles.
LiftResult legendrian_lift(const SurfaceMesh& mesh, double defect_tolerance = 1e-8, int root = -1);

struct LegendrianDefect {
    double max_contact_residual = 0.0;
    double max_lagrangian_residual = 0.0;
};

/// Per-element contact residual |dphi - G . J dG| on the two edges leaving v0,
/// each normalized by |e| * max(rho_mid, |e|), and symplectic residual
/// |omega(e1, e2)| / (2 * area). Returns the maxima.
LegendrianDefect legendrian_defect(const SurfaceMesh& mesh);

}  // namespace hlmono
