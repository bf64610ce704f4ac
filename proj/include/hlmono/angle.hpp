#pragma once

#include "hlmono/calculus.hpp"
#include "hlmono/mesh.hpp"

#include <vector>

namespace hlmono {

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// Lagrangian angle of a triangulated Lagrangian surface in C^2 = (z1 + i z2, z3 + i z4).
/// beta is defined modulo 2 pi; only increments and branch-consistent local values are used.
struct AngleForm {
    std::vector<double> element_beta;  ///< arg det_C of the oriented orthonormal frame
    std::vector<double> node_beta;     ///< local branch value (fan average), meaningless on singular nodes
    std::vector<double> edge_dbeta;    ///< increment along mesh edge a -> b (a < b), in (-pi, pi]
    std::vector<double> fan_winding;   ///< unwrapped beta increment once around each interior node
    std::vector<char> singular;        ///< origin preimages and nodes with nonzero fan winding

    /// Increment along the oriented edge i -> j (must be a mesh edge).
    double dbeta(const SurfaceMesh& mesh, int i, int j) const;
    /// Branch-consistent element values of beta relative to vertex v0 of triangle t.
    std::array<double, 3> local_values(const SurfaceMesh& mesh, std::size_t t) const;
};

/// Element triangles around node i, ordered so consecutive ones share an edge.
/// For boundary nodes the walk starts at a boundary triangle.
std::vector<int> ordered_fan(const SurfaceMesh& mesh, int i);

/// Gradient of beta_H = -beta / 2 on element t, from the local branch values.
AVec beta_h_gradient(const WeakOperatorContext& ctx, const AngleForm& form, std::size_t t);

/// Throws MeshError when the mesh is not four dimensional, or when its
/// symplectic residual exceeds `lagrangian_tolerance`.
AngleForm lagrangian_angle_form(const SurfaceMesh& mesh, double lagrangian_tolerance = 0.05);

struct MaslovResult {
    int index = 0;
    double rounding_residual = 0.0;
};

/// (1 / 2 pi) times the sum of dbeta along a closed node cycle (last node
/// connects back to the first). Throws on singular nodes, non-adjacent
/// consecutive nodes, or a rounding residual >= 0.1.
MaslovResult maslov_index(const SurfaceMesh& mesh, const AngleForm& form, const std::vector<int>& loop);

struct ElResidual {
    double el_norm = 0.0;        ///< both equations together: hypot(gauss_norm, harmonic_norm)
    double gauss_norm = 0.0;     ///< i Laplacian G = 2 grad(beta_H) . grad G; holds on any Lagrangian
    double harmonic_norm = 0.0;  ///< Laplacian beta = 0; carries stationarity
    double divergence_norm = 0.0;  ///< weak residual of div(e^{-i beta} grad G)
    bool used_chart = false;
    std::size_t evaluated_nodes = 0;
};

/// Stationarity residuals of i Laplacian G = 2 grad(beta_H) . grad G with
/// beta_H = -beta / 2, and of Laplacian beta = 0. In a conformal chart the flat
/// operators are used; otherwise the intrinsic form on the induced metric.
/// The first equation is the mean curvature identity of Lagrangian surfaces, so
/// only the harmonic part separates stationary surfaces from the rest.
/// Nodal residuals are taken intrinsically and scaled by the gauge (gauge^2 for
/// the harmonic one) so dilation-invariant surfaces weigh every scale alike.
/// Norms are area-weighted RMS values over interior nodes whose neighbors are
/// neither boundary nor singular.
ElResidual el_residual(const SurfaceMesh& mesh, const AngleForm& form);

}  // namespace hlmono
