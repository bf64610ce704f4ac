#include "hlmono/heisenberg.hpp"

#include <cmath>

namespace hlmono {

double euclidean_radius(const HeisenbergPoint& p) { return p.z.norm(); }

double koranyi_gauge(double rho, double phi) {
    const double rho2 = rho * rho;
    return std::pow(rho2 * rho2 + 4.0 * phi * phi, 0.25);
}

double koranyi_gauge(const HeisenbergPoint& p) { return koranyi_gauge(p.z.norm(), p.phi); }

double phase(const HeisenbergPoint& p) {
    const double rho2 = p.z.squaredNorm();
    if (rho2 == 0.0) throw DomainError("phase: undefined on the center axis (rho = 0)");
    return 2.0 * p.phi / rho2;
}

HeisenbergPoint inverse(const HeisenbergPoint& a) { return {-a.z, -a.phi}; }

HeisenbergPoint left_translate(const HeisenbergPoint& a, const HeisenbergPoint& p) {
    const double twist = a.z[0] * p.z[1] - a.z[1] * p.z[0] + a.z[2] * p.z[3] - a.z[3] * p.z[2];
    return {a.z + p.z, a.phi + p.phi + twist};
}

AmbientVector translate_differential(const HeisenbergPoint& a, const AmbientVector& v) {
    const double twist = a.z[0] * v.dz[1] - a.z[1] * v.dz[0] + a.z[2] * v.dz[3] - a.z[3] * v.dz[2];
    return {v.dz, v.dphi + twist};
}

HeisenbergPoint dilate(const HeisenbergPoint& p, double lambda) {
    return {lambda * p.z, lambda * lambda * p.phi};
}

Vec4 apply_J(const Vec4& w) { return {-w[1], w[0], -w[3], w[2]}; }

HorizontalVector apply_J(const HorizontalVector& w) { return {apply_J(w.w)}; }

double contact_form(const HeisenbergPoint& p, const AmbientVector& u) {
    const Vec4& z = p.z;
    return -u.dphi + z[0] * u.dz[1] - z[1] * u.dz[0] + z[2] * u.dz[3] - z[3] * u.dz[2];
}

double symplectic_form(const Vec4& u, const Vec4& v) {
    return 2.0 * (u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]);
}

FormPairings form_pairings(const HeisenbergPoint& p, const AmbientVector& u, const AmbientVector& v) {
    return {contact_form(p, u), symplectic_form(u.dz, v.dz)};
}

AmbientVector frame_vector(const HeisenbergPoint& p, int index) {
    AmbientVector v;
    const int pair = index / 2;
    const int odd = 2 * pair;  // z_{2i-1} in 0-based indexing
    const int even = odd + 1;  // z_{2i}
    if (index % 2 == 0) {
        v.dz[odd] = 1.0;
        v.dphi = -p.z[even];
    } else {
        v.dz[even] = 1.0;
        v.dphi = p.z[odd];
    }
    return v;
}

AmbientVector horizontal_lift(const HeisenbergPoint& p, const HorizontalVector& w) {
    AmbientVector v;
    for (int k = 0; k < 4; ++k) {
        const AmbientVector f = frame_vector(p, k);
        v.dz += w.w[k] * f.dz;
        v.dphi += w.w[k] * f.dphi;
    }
    return v;
}

double lift_increment(const Vec4& a, const Vec4& b) { return a.dot(apply_J(b)); }

GaugeGradients horizontal_gauge_gradients(const HeisenbergPoint& p) {
    const GaugeJet jet = gauge_jet(p.z, p.phi);
    return {{jet.grad_rho}, {jet.grad_phi}, {jet.grad_gauge}};
}

GaugeJet gauge_jet(const Vec4& z, double phi) {
    GaugeJet j;
    const double rho2 = z.squaredNorm();
    if (rho2 == 0.0) throw DomainError("gauge_jet: rho = 0");
    j.rho = std::sqrt(rho2);
    j.phi = phi;
    j.gauge = koranyi_gauge(j.rho, phi);
    j.phase = 2.0 * phi / rho2;
    j.grad_rho = z / j.rho;
    j.grad_phi = -apply_J(z);
    // 4 r^3 grad r = grad rho^4 + 4 grad phi^2
    const double g3 = j.gauge * j.gauge * j.gauge;
    j.grad_gauge = (rho2 * z + 2.0 * phi * j.grad_phi) / g3;
    j.grad_phase = 2.0 * j.grad_phi / rho2 - 4.0 * phi * z / (rho2 * rho2);
    return j;
}

}  // namespace hlmono
