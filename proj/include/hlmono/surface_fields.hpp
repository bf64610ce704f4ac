#pragma once

#include "hlmono/calculus.hpp"

#include <vector>

namespace hlmono {

/// Gauge, phase and their surface gradients at a point of an element. Values
/// come from the affine interpolant of (z, phi); gradients are the tangential
/// projections of the horizontal gradients, which are exact on the element plane.
struct FieldSample {
    AVec z;
    double phi = 0.0;
    double rho = 0.0;
    double gauge = 0.0;
    double sigma = 0.0;  ///< 0 off heisenberg2 meshes
    AVec grad_rho;       ///< tangential parts
    AVec grad_phi;
    AVec grad_gauge;
    AVec grad_sigma;
    AVec normal_gauge;   ///< normal part of grad gauge
    bool regular = true; ///< false at rho = 0
};

/// `ctx` must use ambient coordinates.
FieldSample sample_fields(const WeakOperatorContext& ctx, std::size_t t, const Eigen::Vector3d& bary);

/// Graph distance (in edges) from the nearest origin preimage; -1 if unreachable.
std::vector<int> origin_ring_distance(const SurfaceMesh& mesh);

/// Elements having a vertex fewer than `rings` edges away from an origin preimage.
std::vector<char> excised_elements(const SurfaceMesh& mesh, int rings);

/// Largest parameter distance from an origin preimage to a vertex of an excised element.
double excision_radius(const SurfaceMesh& mesh, const std::vector<char>& excised);

/// Elements with a boundary vertex.
std::vector<char> boundary_elements(const SurfaceMesh& mesh);

}  // namespace hlmono
