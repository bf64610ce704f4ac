#include "hlmono/calculus.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hlmono;
using namespace hlmono::testing;

namespace {

template <class F>
ScalarField nodal(const SurfaceMesh& m, F f) {
    ScalarField out;
    for (std::size_t i = 0; i < m.node_count(); ++i) out.values.push_back(f(m.position(static_cast<int>(i))));
    return out;
}

}  // namespace

TEST_CASE("laplacian of |x|^2 is 4 on a flat mesh") {
    const SurfaceMesh m = euclidean_grid(8, [](double, double) { return 0.0; });
    const WeakOperatorContext ctx(m);
    const ScalarField r2 = nodal(m, [](const AVec& p) { return p.squaredNorm(); });
    const ScalarField lap = laplace_beltrami(ctx, r2);
    for (std::size_t i = 0; i < m.node_count(); ++i)
        if (ctx.is_interior(static_cast<int>(i))) CHECK(lap[i] == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("gradient of a linear function is exact and tangential") {
    const SurfaceMesh m = euclidean_grid(4, [](double x, double y) { return 0.5 * x - 0.25 * y; });
    const WeakOperatorContext ctx(m);
    AVec a(3);
    a << 0.3, -1.1, 0.7;
    const ScalarField f = nodal(m, [&](const AVec& p) { return a.dot(p); });
    const TangentField g = surface_gradient(ctx, f);
    for (std::size_t t = 0; t < m.triangle_count(); ++t) {
        const AVec expected = ctx.project_tangent(t, a);
        CHECK((g.vectors[t] - expected).norm() < 1e-12);
        const TangentNormalSplit s = tangent_normal_split(ctx, t, a);
        CHECK((s.tangential + s.normal - a).norm() < 1e-14);
        CHECK(std::abs(s.tangential.dot(s.normal)) < 1e-14);
    }
}

TEST_CASE("cotangent stiffness is the Dirichlet form") {
    const SurfaceMesh m = euclidean_grid(6, [](double x, double y) { return 0.3 * std::sin(3 * x) * y; });
    const WeakOperatorContext ctx(m);
    const ScalarField f = nodal(m, [](const AVec& p) { return std::exp(p[0]) * p[1]; });
    const ScalarField g = nodal(m, [](const AVec& p) { return p[0] * p[0] - p[2]; });
    const ScalarField lap = laplace_beltrami(ctx, f);
    double weak = 0.0;
    for (std::size_t i = 0; i < m.node_count(); ++i) weak += ctx.mass(static_cast<int>(i)) * g[i] * lap[i];
    CHECK(weak == doctest::Approx(-dirichlet_pairing(ctx, f, g)).epsilon(1e-12));
    double area = 0.0, mass = 0.0;
    for (double a : ctx.areas()) area += a;
    for (double x : ctx.masses()) mass += x;
    CHECK(mass == doctest::Approx(area));
}

TEST_CASE("weak divergence residual vanishes for an exact pair") {
    // V = grad(x^2 + y^2) on the flat square, div V = 4, tested against an interior bump.
    const SurfaceMesh m = euclidean_grid(10, [](double, double) { return 0.0; });
    const WeakOperatorContext ctx(m);
    const ScalarField r2 = nodal(m, [](const AVec& p) { return p[0] * p[0] + p[1] * p[1]; });
    const TangentField V = surface_gradient(ctx, r2);
    ScalarField s;
    s.values.assign(m.node_count(), 4.0);
    const ScalarField test = nodal(m, [](const AVec& p) { return p[0] * (1 - p[0]) * p[1] * (1 - p[1]); });
    const double scale = dirichlet_pairing(ctx, r2, test);
    CHECK(std::abs(weak_divergence_residual(ctx, V, s, {}, test)) < 1e-2 * std::abs(scale));
}

TEST_CASE("chart coordinates give the flat operators") {
    const SurfaceMesh m = euclidean_grid(5, [](double x, double y) { return x * x + y; });
    const WeakOperatorContext chart(m, Coordinates::chart);
    CHECK(chart.coordinates() == Coordinates::chart);
    CHECK(chart.dim() == 2);
    double area = 0.0;
    for (double a : chart.areas()) area += a;
    CHECK(area == doctest::Approx(1.0));
}

TEST_CASE("minimality residual separates minimal and curved surfaces") {
    const SurfaceMesh flat = euclidean_grid(12, [](double x, double y) { return 0.2 * x - 0.1 * y; });
    const SurfaceMesh saddle = euclidean_grid(12, [](double x, double y) { return 0.3 * (x * x - y * y); });
    const SurfaceMesh bowl = euclidean_grid(12, [](double x, double y) { return 0.8 * (x * x + y * y); });
    CHECK(minimality_residual(flat) < 1e-12);
    CHECK(minimality_residual(bowl) > 10 * minimality_residual(saddle));
}

TEST_CASE("tangent split is a projection and satisfies Pythagoras") {
    const ZooSurface cone = make_sw_cone(2, 1, coarse_polar(32));
    const WeakOperatorContext ctx(cone.mesh);
    AVec w(4);
    w << 0.3, -0.8, 1.2, 0.5;
    for (std::size_t t = 0; t < cone.mesh.triangle_count(); t += 7) {
        const TangentNormalSplit s = tangent_normal_split(ctx, t, w);
        const TangentNormalSplit again = tangent_normal_split(ctx, t, s.tangential);
        CHECK((again.tangential - s.tangential).norm() < 1e-14);
        CHECK(again.normal.norm() < 1e-14);
        CHECK(s.tangential.squaredNorm() + s.normal.squaredNorm() == doctest::Approx(w.squaredNorm()).epsilon(1e-14));
    }
}
