#include "hlmono/heisenberg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hlmono;

namespace {

HeisenbergPoint sample_point() { return {Vec4(0.3, -1.2, 0.7, 0.4), 0.55}; }

double max_diff(const HeisenbergPoint& a, const HeisenbergPoint& b) {
    return std::max((a.z - b.z).cwiseAbs().maxCoeff(), std::abs(a.phi - b.phi));
}

// Horizontal direction e_k for surfaces, whose Legendrian coordinate obeys dphi = G . J dG.
AmbientVector surface_direction(const HeisenbergPoint& p, int k) {
    return {Vec4::Unit(k), -apply_J(p.z)[k]};
}

HeisenbergPoint step(const HeisenbergPoint& p, const AmbientVector& u, double t) {
    return {p.z + t * u.dz, p.phi + t * u.dphi};
}

}  // namespace

TEST_CASE("gauge is homogeneous of degree one under dilations") {
    const HeisenbergPoint p = sample_point();
    for (double lambda : {0.01, 0.5, 3.0, 250.0})
        CHECK(koranyi_gauge(dilate(p, lambda)) == doctest::Approx(lambda * koranyi_gauge(p)).epsilon(1e-14));
    CHECK(koranyi_gauge(2.0, 0.0) == doctest::Approx(2.0));
    CHECK(koranyi_gauge(0.0, 2.0) == doctest::Approx(std::sqrt(2.0 * 2.0)));
}

TEST_CASE("phase is dilation invariant and undefined on the center axis") {
    const HeisenbergPoint p = sample_point();
    CHECK(phase(dilate(p, 7.0)) == doctest::Approx(phase(p)).epsilon(1e-13));
    CHECK(phase(p) == doctest::Approx(2.0 * p.phi / p.z.squaredNorm()));
    CHECK_THROWS_AS(phase(HeisenbergPoint{Vec4::Zero(), 1.0}), DomainError);
}

TEST_CASE("group law has identity, inverses and is associative") {
    const HeisenbergPoint a = sample_point();
    const HeisenbergPoint b{Vec4(-0.2, 0.9, 1.1, -0.6), -0.3};
    const HeisenbergPoint c{Vec4(0.5, 0.5, -0.1, 0.2), 1.7};
    const HeisenbergPoint e{};
    CHECK(max_diff(left_translate(e, a), a) < 1e-15);
    CHECK(max_diff(left_translate(a, inverse(a)), e) < 1e-14);
    CHECK(max_diff(left_translate(left_translate(a, b), c), left_translate(a, left_translate(b, c))) < 1e-13);
}

TEST_CASE("contact form is left invariant") {
    const HeisenbergPoint a{Vec4(1.0, -0.5, 0.25, 2.0), 0.8};
    const HeisenbergPoint p = sample_point();
    const AmbientVector u{Vec4(0.1, 0.7, -0.4, 0.9), -0.35};
    const double before = contact_form(p, u);
    const double after = contact_form(left_translate(a, p), translate_differential(a, u));
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("frame vectors are horizontal and lifts project to their coordinates") {
    const HeisenbergPoint p = sample_point();
    for (int k = 0; k < 4; ++k) {
        CHECK(std::abs(contact_form(p, frame_vector(p, k))) < 1e-15);
        CHECK(frame_vector(p, k).dz == Vec4::Unit(k));
    }
    const HorizontalVector w{Vec4(0.3, -0.1, 2.0, 0.5)};
    const AmbientVector lifted = horizontal_lift(p, w);
    CHECK((lifted.dz - w.w).norm() < 1e-15);
    CHECK(std::abs(contact_form(p, lifted)) < 1e-14);
}

TEST_CASE("J is a complex structure compatible with omega") {
    const Vec4 u(0.4, -1.3, 0.2, 0.9);
    const Vec4 v(1.0, 0.5, -0.7, 0.3);
    CHECK((apply_J(apply_J(u)) + u).norm() < 1e-15);
    CHECK(symplectic_form(u, apply_J(u)) == doctest::Approx(2.0 * u.squaredNorm()));
    CHECK(symplectic_form(u, v) == doctest::Approx(-symplectic_form(v, u)));
    CHECK(symplectic_form(apply_J(u), apply_J(v)) == doctest::Approx(symplectic_form(u, v)));
}

TEST_CASE("form pairings agree with the separate forms") {
    const HeisenbergPoint p = sample_point();
    const AmbientVector u{Vec4(0.1, 0.2, 0.3, 0.4), 0.5};
    const AmbientVector v{Vec4(-0.4, 0.3, 0.2, -0.1), 0.0};
    const FormPairings f = form_pairings(p, u, v);
    CHECK(f.alpha_u == doctest::Approx(contact_form(p, u)));
    CHECK(f.omega_uv == doctest::Approx(symplectic_form(u.dz, v.dz)));
}

TEST_CASE("lift increment is the segment integral of G . J dG") {
    const Vec4 a(0.3, -0.2, 1.0, 0.1);
    const Vec4 b(-0.5, 0.8, 0.4, 0.6);
    CHECK(lift_increment(a, b) == doctest::Approx(a.dot(apply_J(b))));
    // Midpoint rule is exact for this quadratic-in-t integrand's linear part.
    const Vec4 d = b - a;
    const Vec4 mid = 0.5 * (a + b);
    CHECK(lift_increment(a, b) == doctest::Approx(mid.dot(apply_J(d))).epsilon(1e-14));
    CHECK(lift_increment(a, a) == doctest::Approx(0.0));
}

TEST_CASE("horizontal gradients match directional derivatives along surface directions") {
    const HeisenbergPoint p = sample_point();
    const GaugeGradients g = horizontal_gauge_gradients(p);
    const double h = 1e-6;
    for (int k = 0; k < 4; ++k) {
        const AmbientVector X = surface_direction(p, k);
        const HeisenbergPoint fwd = step(p, X, h), bwd = step(p, X, -h);
        const double d_gauge = (koranyi_gauge(fwd) - koranyi_gauge(bwd)) / (2 * h);
        const double d_rho = (euclidean_radius(fwd) - euclidean_radius(bwd)) / (2 * h);
        CHECK(g.grad_gauge.w[k] == doctest::Approx(d_gauge).epsilon(1e-7));
        CHECK(g.grad_rho.w[k] == doctest::Approx(d_rho).epsilon(1e-7));
        const double d_phi = (fwd.phi - bwd.phi) / (2 * h);
        CHECK(g.grad_phi.w[k] == doctest::Approx(d_phi).epsilon(1e-9));
    }
}

TEST_CASE("gauge jet satisfies the horizontal gradient identities") {
    const HeisenbergPoint p = sample_point();
    const GaugeJet j = gauge_jet(p.z, p.phi);
    CHECK(j.gauge == doctest::Approx(koranyi_gauge(p)));
    CHECK(j.phase == doctest::Approx(phase(p)));
    // |grad gauge|^2 = rho^2 / gauge^2 = 1 / sqrt(1 + sigma^2)
    CHECK(j.grad_gauge.squaredNorm() == doctest::Approx(j.rho * j.rho / (j.gauge * j.gauge)).epsilon(1e-13));
    CHECK(j.grad_gauge.squaredNorm() == doctest::Approx(1.0 / std::sqrt(1.0 + j.phase * j.phase)).epsilon(1e-13));
    CHECK(j.grad_rho.norm() == doctest::Approx(1.0));
    CHECK((j.grad_phi + apply_J(p.z)).norm() < 1e-14);
    CHECK_THROWS_AS(gauge_jet(Vec4::Zero(), 0.3), DomainError);
}

TEST_CASE("random samples: scaling, left invariance and the gauge-phase relation") {
    std::mt19937_64 rng(20261019);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    auto point = [&] { return HeisenbergPoint{Vec4(U(rng), U(rng), U(rng), U(rng)), U(rng)}; };
    for (int trial = 0; trial < 100; ++trial) {
        const HeisenbergPoint a = point(), p = point();
        const AmbientVector v{Vec4(U(rng), U(rng), U(rng), U(rng)), U(rng)};
        const double lambda = std::exp(U(rng));
        CHECK(koranyi_gauge(dilate(p, lambda)) == doctest::Approx(lambda * koranyi_gauge(p)).epsilon(1e-13));
        CHECK(phase(dilate(p, lambda)) == doctest::Approx(phase(p)).epsilon(1e-12));
        CHECK(contact_form(left_translate(a, p), translate_differential(a, v)) ==
              doctest::Approx(contact_form(p, v)).epsilon(1e-12).scale(1.0));
        const double rho = euclidean_radius(p), s = phase(p);
        CHECK(std::pow(koranyi_gauge(p), 4) == doctest::Approx(std::pow(rho, 4) * (1 + s * s)).epsilon(1e-12));
        for (int k = 0; k < 4; ++k) CHECK(std::abs(contact_form(p, frame_vector(p, k))) < 1e-14);
    }
}
