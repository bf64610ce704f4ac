#pragma once

#include "hlmono/mesh.hpp"

#include <string>
#include <vector>

namespace hlmono {

/// Closed-form fields stored next to a generated mesh for oracle comparisons.
struct GroundTruth {
    std::vector<double> rho, phi, sigma, gauge;  ///< per node (phi/sigma empty for euclidean)
    std::vector<double> element_beta;            ///< arg det_C of the exact tangent plane, if known
    double origin_weight = 0.0;                  ///< exact theta_0 per origin preimage (|weight| for cones)
    double density = 0.0;                        ///< exact r^-2 Area{gauge < r} for dilation-invariant surfaces
};

struct ZooSurface {
    SurfaceMesh mesh;
    GroundTruth truth;
    /// Node ids of each polar ring (inner to outer), when the mesh is polar.
    std::vector<std::vector<int>> rings;
};

/// Geometrically graded polar resolution. Rings sit at radii 2^(k / rings_per_octave)
/// for inner_octave * rings_per_octave <= k <= outer_octave * rings_per_octave,
/// so the mesh is invariant under the dilation s -> 2 s up to reindexing.
struct PolarResolution {
    int angular = 128;
    int rings_per_octave = 0;  ///< 0 picks the value giving near-isotropic triangles
    int inner_octave = -8;
    int outer_octave = 2;
    bool tip_fan = true;

    int rings_per_octave_for(double speed) const;
};

/// Lagrangian plane spanned by orthonormal u, v (omega(u, v) must vanish).
/// Disk of radius 2^outer_octave, phi = 0, identity conformal chart, origin marked.
ZooSurface make_plane(const Vec4& u, const Vec4& v, const PolarResolution& res);
ZooSurface make_plane(const PolarResolution& res);  ///< basis (e1, e3)

/// Unitary matrix of C^2 written on R^4 (commutes with J), for rotated planes.
Eigen::Matrix4d unitary_rotation(double a, double b, double c);

/// Schoen-Wolfson cone over gamma(t) = (r1 e^{ipt}, r2 e^{-iqt}) with
/// r1^2 = q/(p+q), r2^2 = p/(p+q). With a tip fan the cone point is an origin
/// preimage; without it the mesh carries the conformal chart (u, t), s = e^{sqrt(pq) u}.
ZooSurface make_sw_cone(int p, int q, const PolarResolution& res);

/// Point gamma(t) of the Legendrian circle and its derivative.
Vec4 sw_circle(int p, int q, double t);
Vec4 sw_circle_derivative(int p, int q, double t);

enum class Potential { zero, cubic_x1, cubic_sum, quadratic };

Potential parse_potential(const std::string& name);
std::string potential_name(Potential p);

/// Gradient graph (x1, a d1u, x2, a d2u) over [-half_width, half_width]^2 with
/// `cells` (even) cells per side, lifted by legendrian_lift from the origin.
ZooSurface make_lagrangian_graph(Potential potential, double amplitude, double half_width, int cells);

enum class ClassicalKind { plane, two_planes, catenoid };

ClassicalKind parse_classical(const std::string& name);

struct CatenoidResolution {
    double neck = 1.0;
    double half_height = 2.8;  ///< v in [-half_height, half_height]
    int axial = 160;
    int angular = 160;
};

/// Euclidean minimal surfaces: flat disk in R^3, two transverse Lagrangian
/// planes through 0 in R^4 (two components), or a catenoid centered at 0.
ZooSurface make_classical_minimal(ClassicalKind kind, const PolarResolution& res, const CatenoidResolution& cat = {});

}  // namespace hlmono
