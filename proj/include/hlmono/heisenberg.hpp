#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace hlmono {

using Vec4 = Eigen::Vector4d;

/// Raised when a quantity is evaluated where it is undefined (e.g. the phase on
/// the center axis rho = 0).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Point (z1..z4, phi) of the Heisenberg group H^2.
struct HeisenbergPoint {
    Vec4 z = Vec4::Zero();
    double phi = 0.0;
};

/// Tangent vector of H^2 in coordinates (dz, dphi).
struct AmbientVector {
    Vec4 dz = Vec4::Zero();
    double dphi = 0.0;
};

/// Horizontal vector, written in the orthonormal frame (X1, Y1, X2, Y2) and
/// therefore identified with R^4 = C^2 through the projection pi.
struct HorizontalVector {
    Vec4 w = Vec4::Zero();

    double norm() const { return w.norm(); }
};

double euclidean_radius(const HeisenbergPoint& p);

/// Folland-Koranyi gauge (|z|^4 + 4 phi^2)^(1/4).
double koranyi_gauge(const HeisenbergPoint& p);
double koranyi_gauge(double rho, double phi);

/// Phase 2 phi / rho^2. Throws DomainError when rho = 0.
double phase(const HeisenbergPoint& p);

HeisenbergPoint inverse(const HeisenbergPoint& a);

/// Group law; the contact form is invariant under left translations.
HeisenbergPoint left_translate(const HeisenbergPoint& a, const HeisenbergPoint& p);

/// Differential of left translation by a, applied to v (independent of the base point).
AmbientVector translate_differential(const HeisenbergPoint& a, const AmbientVector& v);

/// Anisotropic dilation (z, phi) -> (lambda z, lambda^2 phi).
HeisenbergPoint dilate(const HeisenbergPoint& p, double lambda);

/// Complex structure of C^2: (w1, w2, w3, w4) -> (-w2, w1, -w4, w3).
Vec4 apply_J(const Vec4& w);
HorizontalVector apply_J(const HorizontalVector& w);

/// alpha_p(u) with alpha = -dphi + sum z_{2i-1} dz_{2i} - z_{2i} dz_{2i-1}.
double contact_form(const HeisenbergPoint& p, const AmbientVector& u);

/// omega(u, v) = 2 sum du_{2i-1} dv_{2i} - du_{2i} dv_{2i-1} on R^4.
double symplectic_form(const Vec4& u, const Vec4& v);

struct FormPairings {
    double alpha_u = 0.0;
    double omega_uv = 0.0;
};

FormPairings form_pairings(const HeisenbergPoint& p, const AmbientVector& u, const AmbientVector& v);

/// Frame vector X1, Y1, X2, Y2 (index 0..3) at p.
AmbientVector frame_vector(const HeisenbergPoint& p, int index);

/// sum_k w_k (frame vector k) at p.
AmbientVector horizontal_lift(const HeisenbergPoint& p, const HorizontalVector& w);

// Surface-level convention. The Legendrian coordinate of an immersed surface
// obeys dphi = G . J dG = z2 dz1 - z1 dz2 + z4 dz3 - z3 dz4, so the horizontal
// gradient of phi is -J z. All gradients below use this convention.

/// Integral of G . J dG along the straight segment a -> b (equals a . J b).
double lift_increment(const Vec4& a, const Vec4& b);

struct GaugeGradients {
    HorizontalVector grad_rho;
    HorizontalVector grad_phi;
    HorizontalVector grad_gauge;
};

/// Horizontal gradients of rho, phi and the gauge. Throws DomainError at rho = 0.
GaugeGradients horizontal_gauge_gradients(const HeisenbergPoint& p);

/// Every scalar the identity checks need at one ambient point, with horizontal
/// gradients as plain R^4 vectors.
struct GaugeJet {
    double rho = 0.0;
    double phi = 0.0;
    double gauge = 0.0;
    double phase = 0.0;
    Vec4 grad_rho = Vec4::Zero();
    Vec4 grad_phi = Vec4::Zero();
    Vec4 grad_gauge = Vec4::Zero();
    Vec4 grad_phase = Vec4::Zero();
};

/// Requires rho > 0.
GaugeJet gauge_jet(const Vec4& z, double phi);

}  // namespace hlmono
