#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

namespace hlmono {

/// Quadrature node in barycentric coordinates; weight is a fraction of the
/// triangle's area.
struct BaryPoint {
    Eigen::Vector3d bary;
    double weight = 0.0;
};

/// Symmetric 6-point rule, exact for polynomials of degree 4.
const std::array<BaryPoint, 6>& triangle_rule6();

/// Polygon (barycentric vertices) where lo < f < hi for the linear interpolant
/// of the vertex values f. Empty if the band misses the triangle.
std::vector<Eigen::Vector3d> clip_band(const std::array<double, 3>& f, double lo, double hi);

/// Fraction of the triangle's area inside the band; exact for linear f.
double band_fraction(const std::array<double, 3>& f, double lo, double hi);

/// 6-point rule mapped onto the fan triangulation of the clipped band polygon.
std::vector<BaryPoint> band_quadrature(const std::array<double, 3>& f, double lo, double hi);

}  // namespace hlmono
