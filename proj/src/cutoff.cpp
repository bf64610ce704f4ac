#include "hlmono/cutoff.hpp"

#include <cstdio>
#include <stdexcept>

namespace hlmono {

namespace {

// Ramp profiles P on [0, 1] with P(0) = P'(0) = P'(1) = 0, P(1) = 1, together
// with their antiderivatives I (I(0) = 0) and derivatives.
struct Profile {
    double (*value)(double);
    double (*integral)(double);
    double (*derivative)(double);
};

double smooth_value(double x) { return x * x * (3.0 - 2.0 * x); }
double smooth_integral(double x) { return x * x * x * (1.0 - 0.5 * x); }
double smooth_derivative(double x) { return 6.0 * x * (1.0 - x); }

// 18x^2 - 32x^3 + 15x^4 has unit integral, so the plateau keeps slope -1.
double quartic_value(double x) { return x * x * (18.0 - 32.0 * x + 15.0 * x * x); }
double quartic_integral(double x) { return x * x * x * (6.0 - 8.0 * x + 3.0 * x * x); }
double quartic_derivative(double x) { return x * (36.0 - 96.0 * x + 60.0 * x * x); }

Profile profile(CutoffKind kind) {
    if (kind == CutoffKind::main) return {smooth_value, smooth_integral, smooth_derivative};
    return {quartic_value, quartic_integral, quartic_derivative};
}

}  // namespace

double CutoffSpec::chi(double t) const {
    const Profile p = profile(kind);
    if (t <= start) return 1.0;
    if (t >= end) return 0.0;
    if (t < start + ramp) return 1.0 - slope * ramp * p.integral((t - start) / ramp);
    if (t > end - ramp) return slope * ramp * p.integral((end - t) / ramp);
    return 1.0 - slope * ramp * p.integral(1.0) - slope * (t - start - ramp);
}

double CutoffSpec::d1(double t) const {
    const Profile p = profile(kind);
    if (t <= start || t >= end) return 0.0;
    if (t < start + ramp) return -slope * p.value((t - start) / ramp);
    if (t > end - ramp) return -slope * p.value((end - t) / ramp);
    return -slope;
}

double CutoffSpec::d2(double t) const {
    const Profile p = profile(kind);
    if (t <= start || t >= end) return 0.0;
    if (t < start + ramp) return -slope * p.derivative((t - start) / ramp) / ramp;
    if (t > end - ramp) return slope * p.derivative((end - t) / ramp) / ramp;
    return 0.0;
}

std::vector<double> CutoffSpec::knots() const { return {0.0, start, start + ramp, end - ramp, end}; }

std::string CutoffSpec::describe() const {
    if (kind == CutoffKind::main) return "main";
    char buf[64];
    std::snprintf(buf, sizeof buf, "epsilon(%.17g)", epsilon);
    return buf;
}

CutoffSpec make_cutoff(CutoffKind kind, double epsilon) {
    CutoffSpec c;
    c.kind = kind;
    if (kind == CutoffKind::main) return c;
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw std::invalid_argument("epsilon cutoff needs 0 < epsilon < 1/4");
    c.epsilon = epsilon;
    c.start = 1.0;
    c.end = 2.0;
    c.ramp = epsilon;
    c.slope = 1.0;
    return c;
}

}  // namespace hlmono
