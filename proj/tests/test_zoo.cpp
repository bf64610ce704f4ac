#include "hlmono/zoo.hpp"

#include "hlmono/calculus.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hlmono;
using namespace hlmono::testing;

TEST_CASE("Schoen-Wolfson circles are Legendrian and lie on the unit sphere") {
    for (auto [p, q] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{5, 3}})
        for (double t = 0.0; t < 6.3; t += 0.37) {
            const Vec4 g = sw_circle(p, q, t);
            const Vec4 dg = sw_circle_derivative(p, q, t);
            CHECK(g.norm() == doctest::Approx(1.0));
            CHECK(std::abs(g.dot(apply_J(dg))) < 1e-13);
            CHECK(std::abs(g.dot(dg)) < 1e-13);
            const double h = 1e-6;
            CHECK((dg - (sw_circle(p, q, t + h) - sw_circle(p, q, t - h)) / (2 * h)).norm() < 1e-8);
        }
}

TEST_CASE("unitary rotations are orthogonal and commute with J") {
    const Eigen::Matrix4d U = unitary_rotation(0.4, 1.3, -0.2);
    CHECK((U.transpose() * U - Eigen::Matrix4d::Identity()).norm() < 1e-14);
    const Vec4 w(0.2, -0.5, 1.0, 0.3);
    CHECK((U * apply_J(w) - apply_J(U * w)).norm() < 1e-14);
}

TEST_CASE("generated planes and cones carry their ground truth") {
    const ZooSurface plane = make_plane(coarse_polar());
    CHECK(plane.mesh.origin_preimages().size() == 1);
    CHECK(plane.truth.origin_weight == doctest::Approx(2 * std::numbers::pi));
    CHECK(plane.truth.density == doctest::Approx(std::numbers::pi));
    CHECK(plane.mesh.legendrian_tolerance.has_value());

    const ZooSurface cone = make_sw_cone(3, 2, coarse_polar());
    CHECK(cone.truth.origin_weight == doctest::Approx(2 * std::numbers::pi * std::sqrt(6.0)));
    for (double s : cone.truth.sigma) CHECK(std::abs(s) < 1e-12);
    for (std::size_t i = 0; i < cone.mesh.node_count(); ++i)
        CHECK(std::abs(cone.mesh.phi(static_cast<int>(i))) < 1e-12);

    PolarResolution chart = coarse_polar();
    chart.tip_fan = false;
    const ZooSurface open_cone = make_sw_cone(2, 1, chart);
    CHECK(open_cone.mesh.origin_preimages().empty());
    CHECK(open_cone.mesh.chart().conformal);
    CHECK(open_cone.mesh.chart().period > 0.0);
}

TEST_CASE("invalid generator parameters are rejected") {
    CHECK_THROWS_AS(make_plane(Vec4::Unit(0), Vec4::Unit(1), coarse_polar()), std::invalid_argument);
    CHECK_THROWS_AS(make_plane(Vec4::Unit(0), 2 * Vec4::Unit(2), coarse_polar()), std::invalid_argument);
    CHECK_THROWS_AS(make_sw_cone(2, 4, coarse_polar()), std::invalid_argument);
    CHECK_THROWS_AS(make_sw_cone(0, 1, coarse_polar()), std::invalid_argument);
    CHECK_THROWS_AS(make_lagrangian_graph(Potential::zero, 1.0, 1.0, 7), std::invalid_argument);
    CHECK_THROWS_AS(parse_potential("quintic"), std::invalid_argument);
    CHECK_THROWS_AS(parse_classical("helicoid"), std::invalid_argument);
    PolarResolution bad = coarse_polar();
    bad.outer_octave = bad.inner_octave;
    CHECK_THROWS_AS(make_plane(bad), std::invalid_argument);
}

TEST_CASE("potential names round trip") {
    for (Potential p : {Potential::zero, Potential::cubic_x1, Potential::cubic_sum, Potential::quadratic})
        CHECK(parse_potential(potential_name(p)) == p);
}

TEST_CASE("gradient graphs are exactly Lagrangian and Legendrian") {
    const ZooSurface g = make_lagrangian_graph(Potential::cubic_sum, 0.5, 1.0, 16);
    const LegendrianDefect d = legendrian_defect(g.mesh);
    CHECK(d.max_contact_residual < 1e-10);
    CHECK(d.max_lagrangian_residual < 1e-10);
    CHECK(g.mesh.triangle_count() == 2 * 16 * 16);
}

TEST_CASE("classical minimal surfaces") {
    const ZooSurface disk = make_classical_minimal(ClassicalKind::plane, coarse_polar());
    CHECK_FALSE(disk.mesh.is_heisenberg());
    CHECK(minimality_residual(disk.mesh) < 1e-10);
    const ZooSurface pair = make_classical_minimal(ClassicalKind::two_planes, coarse_polar());
    CHECK(pair.mesh.origin_preimages().size() == 2);
    CatenoidResolution cat;
    cat.axial = 60;
    cat.angular = 60;
    const ZooSurface catenoid = make_classical_minimal(ClassicalKind::catenoid, coarse_polar(), cat);
    CHECK(catenoid.mesh.origin_preimages().empty());
    CHECK(minimality_residual(catenoid.mesh) < 0.05);
}
