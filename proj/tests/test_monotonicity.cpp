#include "hlmono/monotonicity.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace hlmono;
using namespace hlmono::testing;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("plane density is pi at every reliable radius") {
    const ZooSurface plane = make_plane(coarse_polar(128));
    const DensityReport d = density_curve(plane.mesh, {0.05, 0.3, 1.0, 3.0, 10.0});
    for (std::size_t k = 0; k < d.radii.size(); ++k) {
        if (!d.reliable[k]) continue;
        CHECK(d.density[k] == doctest::Approx(kPi).epsilon(1e-3));
        CHECK(d.area[k] == doctest::Approx(d.density[k] * d.radii[k] * d.radii[k]));
    }
    CHECK_FALSE(d.reliable.back());  // r = 10 leaves the mesh
    CHECK(meshed_radius(plane.mesh) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("density radii must be positive and increasing") {
    const ZooSurface plane = make_plane(coarse_polar());
    CHECK_THROWS_AS(density_curve(plane.mesh, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(density_curve(plane.mesh, {0.0, 0.1}), std::invalid_argument);
}

TEST_CASE("origin weight of a plane and of cones") {
    const ZooSurface plane = make_plane(coarse_polar(64));
    const Theta0Result t = theta0(plane.mesh, plane.mesh.origin_preimages()[0]);
    CHECK(t.value == doctest::Approx(2 * kPi).epsilon(1e-6));
    CHECK(t.levels.size() == t.contour.size());
    CHECK(t.levels.size() >= 2);

    const ZooSurface cone = make_sw_cone(2, 1, coarse_polar(64));
    const auto w = theta0_weights(cone.mesh);
    REQUIRE(w.size() == 1);
    CHECK(w.begin()->second == doctest::Approx(2 * kPi * std::sqrt(2.0)).epsilon(5e-3));
    CHECK_THROWS_AS(theta0(plane.mesh, plane.rings[2][0]), MeshError);
}

TEST_CASE("gauge-normal dirichlet energy vanishes on cones and matches on graphs") {
    const ZooSurface cone = make_sw_cone(2, 1, coarse_polar(64));
    const DirichletSigma c = dirichlet_sigma(cone.mesh, 1.0);
    CHECK(c.sigma_term < 1e-20);
    CHECK(c.normal_term < 1e-3);

    const ZooSurface graph = make_lagrangian_graph(Potential::cubic_sum, 0.1, 1.0, 64);
    const DirichletSigma g = dirichlet_sigma(graph.mesh, 0.5 * meshed_radius(graph.mesh));
    CHECK(g.sigma_term > 0.0);
    CHECK(g.discrepancy < 0.1 * (1.0 + g.sigma_term));
}

TEST_CASE("lemma ratio is 2/3 on plane and cone") {
    for (int kind = 0; kind < 2; ++kind) {
        const ZooSurface z = kind == 0 ? make_plane(coarse_polar(96)) : make_sw_cone(2, 1, coarse_polar(96));
        const LemmaBound b = lemma_density_bound(z.mesh);
        CHECK(b.ratio == doctest::Approx(2.0 / 3.0).epsilon(1e-2));
    }
    PolarResolution small = coarse_polar();
    small.outer_octave = 0;
    CHECK_THROWS_AS(lemma_density_bound(make_plane(small).mesh), MeshError);
}

TEST_CASE("balance law closes on a plane and a cone") {
    const CutoffSpec chi = make_cutoff(CutoffKind::main);
    for (int kind = 0; kind < 2; ++kind) {
        const ZooSurface z = kind == 0 ? make_plane(coarse_polar(96)) : make_sw_cone(2, 1, coarse_polar(96));
        const AngleForm form = lagrangian_angle_form(z.mesh);
        const BalanceTerms b = k10_balance(z.mesh, &form, 0.5, chi, z.truth.origin_weight);
        CHECK(b.residual < 1e-3);
        CHECK(b.radial_term == doctest::Approx(z.truth.origin_weight).epsilon(1e-3));
        REQUIRE(b.angle_gap.has_value());
        CHECK(*b.angle_gap < 1e-4);
    }
}

TEST_CASE("balance law with the angle rewrite on a non-cone graph") {
    const ZooSurface graph = make_lagrangian_graph(Potential::cubic_sum, 0.1, 1.0, 64);
    const AngleForm form = lagrangian_angle_form(graph.mesh);
    const BalanceTerms b = k10_balance(graph.mesh, &form, 0.3, make_cutoff(CutoffKind::main));
    CHECK(b.residual < 1e-2);
    REQUIRE(b.angle_gap.has_value());
    CHECK(*b.angle_gap < 1e-2);
}

TEST_CASE("main theorem constants are bounded across scales") {
    const ZooSurface plane = make_plane(coarse_polar(96));
    const MainTheoremCheck m = main_theorem_check(plane.mesh, {0.05, 0.1, 0.2, 0.4, 0.8});
    CHECK(m.bounded);
    for (const auto& row : m.rows) {
        CHECK(row.c_upper == doctest::Approx(4.0 / 15.0).epsilon(1e-2));
        CHECK(row.c_lower == doctest::Approx(2.0).epsilon(1e-2));
    }
    CHECK(m.upper_spread < 1.01);
    CHECK_THROWS_AS(main_theorem_check(plane.mesh, {0.5, 1.5}), std::invalid_argument);
}

TEST_CASE("classical monotonicity reproduces the card term") {
    const std::vector<double> radii{0.5, 1.0, 2.0};
    const ZooSurface pair = make_classical_minimal(ClassicalKind::two_planes, coarse_polar(96));
    const ClassicalCheck c = classical_monotonicity(pair.mesh, radii);
    CHECK(c.origin_count == 2);
    CHECK(c.max_residual < 1e-2);
    for (const auto& row : c.rows) CHECK(row.lhs == doctest::Approx(2 * kPi).epsilon(1e-2));
    CHECK(c.monotone);

    CHECK_THROWS_AS(classical_monotonicity(make_plane(coarse_polar()).mesh, radii), MeshError);
    const SurfaceMesh bowl = euclidean_grid(12, [](double x, double y) { return 2.0 * (x * x + y * y); });
    CHECK_THROWS_AS(classical_monotonicity(bowl, radii), MeshError);
}

TEST_CASE("bernstein functional separates planes from cones") {
    const std::vector<double> radii{0.1, 0.3, 1.0};
    const BernsteinCheck plane = bernstein_check(make_plane(coarse_polar(96)).mesh, radii);
    CHECK(plane.plane_like);
    for (const auto& row : plane.rows) {
        CHECK(row.annulus_mean == doctest::Approx(2 * kPi).epsilon(1e-2));
        CHECK(row.residual < 1e-3);
    }
    REQUIRE(plane.conclusion_energy.has_value());
    CHECK(*plane.conclusion_energy < 1e-8);

    const BernsteinCheck cone = bernstein_check(make_sw_cone(2, 1, coarse_polar(96)).mesh, radii);
    CHECK_FALSE(cone.plane_like);
    CHECK_FALSE(cone.conclusion_energy.has_value());
    for (const auto& row : cone.rows) CHECK(row.annulus_mean == doctest::Approx(2 * kPi * std::sqrt(2.0)).epsilon(1e-2));

    CHECK_THROWS_AS(bernstein_check(make_plane(coarse_polar()).mesh, {3.0}), MeshError);
}

TEST_CASE("angle bound profile") {
    CHECK(angle_bound_profile(0.0) == doctest::Approx(1.0));
    CHECK(angle_bound_profile(1e9) == doctest::Approx(kPi / 2).epsilon(1e-8));
    CHECK(angle_bound_profile(-3.0) == doctest::Approx(angle_bound_profile(3.0)));
    CHECK(angle_bound_derivative(0.0) == 0.0);
    CHECK(angle_bound_derivative(2.0) > 0.0);
    CHECK(angle_bound_derivative(-2.0) < 0.0);
    const ScalarCheck range = check_angle_bound_range(20001);
    const ScalarCheck deriv = check_angle_bound_derivative(20001);
    CHECK(range.pass);
    CHECK(deriv.pass);
    CHECK(range.points >= 20001);
}

TEST_CASE("cone densities are constant across a decade") {
    const ZooSurface cone = make_sw_cone(3, 2, coarse_polar(96));
    const DensityReport d = density_curve(cone.mesh, {0.1, 0.2, 0.4, 0.8, 1.0});
    for (double x : d.density) CHECK(x == doctest::Approx(d.density[0]).epsilon(2e-2));
    // Dilation by 2 is a reindexing of the graded mesh.
    CHECK(d.density[1] == doctest::Approx(d.density[0]).epsilon(1e-12));
}

TEST_CASE("origin weight of a curved smooth surface is 2 pi") {
    const ZooSurface graph = make_lagrangian_graph(Potential::cubic_sum, 0.3, 1.0, 96);
    REQUIRE(graph.mesh.origin_preimages().size() == 1);
    CHECK(theta0_weights(graph.mesh).begin()->second == doctest::Approx(2 * kPi).epsilon(1e-2));
}

TEST_CASE("balance residual converges under refinement with the exact weight") {
    double previous = 0.0;
    for (int n : {48, 96}) {
        PolarResolution r = coarse_polar(n);
        r.outer_octave = 1;
        const ZooSurface cone = make_sw_cone(2, 1, r);
        const double res =
            k10_balance(cone.mesh, nullptr, 0.5, make_cutoff(CutoffKind::main), cone.truth.origin_weight).residual;
        if (previous > 0.0) CHECK(previous / res > 1.74);  // order >= 0.8
        previous = res;
    }
}
