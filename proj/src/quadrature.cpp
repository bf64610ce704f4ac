#include "hlmono/quadrature.hpp"

#include <cmath>
#include <limits>

namespace hlmono {

const std::array<BaryPoint, 6>& triangle_rule6() {
    static const std::array<BaryPoint, 6> rule = [] {
        const double a1 = 0.445948490915965, b1 = 1.0 - 2.0 * a1, w1 = 0.223381589678011;
        const double a2 = 0.091576213509771, b2 = 1.0 - 2.0 * a2, w2 = 0.109951743655322;
        return std::array<BaryPoint, 6>{{
            {{b1, a1, a1}, w1},
            {{a1, b1, a1}, w1},
            {{a1, a1, b1}, w1},
            {{b2, a2, a2}, w2},
            {{a2, b2, a2}, w2},
            {{a2, a2, b2}, w2},
        }};
    }();
    return rule;
}

namespace {

using Poly = std::vector<Eigen::Vector3d>;

// Keeps the part of `in` where sign * (f . b - level) >= 0.
Poly clip_half(const Poly& in, const Eigen::Vector3d& f, double level, double sign) {
    Poly out;
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d& p = in[i];
        const Eigen::Vector3d& q = in[(i + 1) % n];
        const double gp = sign * (f.dot(p) - level);
        const double gq = sign * (f.dot(q) - level);
        if (gp >= 0.0) out.push_back(p);
        if ((gp >= 0.0) != (gq >= 0.0)) {
            const double s = gp / (gp - gq);
            out.push_back(p + s * (q - p));
        }
    }
    return out;
}

double poly_fraction(const Poly& poly) {
    // Shoelace in the (b1, b2) chart, where the reference triangle has area 1/2.
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = poly[i];
        const auto& q = poly[(i + 1) % n];
        twice += p[1] * q[2] - q[1] * p[2];
    }
    return std::abs(twice);
}

}  // namespace

std::vector<Eigen::Vector3d> clip_band(const std::array<double, 3>& f, double lo, double hi) {
    const Eigen::Vector3d fv(f[0], f[1], f[2]);
    const double fmin = fv.minCoeff(), fmax = fv.maxCoeff();
    if (fmax <= lo || fmin >= hi) return {};
    Poly poly{Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
    if (fmin < lo) poly = clip_half(poly, fv, lo, 1.0);
    if (fmax > hi && poly.size() >= 3) poly = clip_half(poly, fv, hi, -1.0);
    if (poly.size() < 3) return {};
    return poly;
}

double band_fraction(const std::array<double, 3>& f, double lo, double hi) {
    const double fmin = std::min({f[0], f[1], f[2]}), fmax = std::max({f[0], f[1], f[2]});
    if (fmin >= lo && fmax <= hi) return 1.0;
    const Poly poly = clip_band(f, lo, hi);
    return poly.empty() ? 0.0 : poly_fraction(poly);
}

std::vector<BaryPoint> band_quadrature(const std::array<double, 3>& f, double lo, double hi) {
    std::vector<BaryPoint> out;
    const auto& rule = triangle_rule6();
    const double fmin = std::min({f[0], f[1], f[2]}), fmax = std::max({f[0], f[1], f[2]});
    if (fmin >= lo && fmax <= hi) {
        out.assign(rule.begin(), rule.end());
        return out;
    }
    const Poly poly = clip_band(f, lo, hi);
    for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const Poly tri{poly[0], poly[k], poly[k + 1]};
        const double frac = poly_fraction(tri);
        if (frac <= 0.0) continue;
        for (const auto& q : rule) {
            const Eigen::Vector3d b = q.bary[0] * tri[0] + q.bary[1] * tri[1] + q.bary[2] * tri[2];
            out.push_back({b, q.weight * frac});
        }
    }
    return out;
}

}  // namespace hlmono
