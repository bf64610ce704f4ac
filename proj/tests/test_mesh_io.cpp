#include "hlmono/mesh_io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace hlmono;
using namespace hlmono::testing;

TEST_CASE("write then read reproduces a mesh bitwise") {
    const ZooSurface cone = make_sw_cone(2, 1, coarse_polar(24));
    std::stringstream io;
    write_mesh(io, cone.mesh);
    const SurfaceMesh back = read_mesh(io);
    REQUIRE(back.node_count() == cone.mesh.node_count());
    REQUIRE(back.triangle_count() == cone.mesh.triangle_count());
    CHECK(back.is_heisenberg());
    CHECK(back.origin_preimages() == cone.mesh.origin_preimages());
    CHECK(back.chart().conformal == cone.mesh.chart().conformal);
    CHECK(back.chart().period == cone.mesh.chart().period);
    for (std::size_t i = 0; i < back.node_count(); ++i) {
        const int k = static_cast<int>(i);
        CHECK(back.position(k) == cone.mesh.position(k));
        CHECK(back.phi(k) == cone.mesh.phi(k));
        CHECK(back.param(k) == cone.mesh.param(k));
    }
    CHECK(back.triangles() == cone.mesh.triangles());
}

TEST_CASE("euclidean meshes round trip") {
    const SurfaceMesh m = euclidean_grid(3, [](double x, double y) { return x * y; });
    std::stringstream io;
    write_mesh(io, m);
    const SurfaceMesh back = read_mesh(io);
    CHECK_FALSE(back.is_heisenberg());
    CHECK(back.dim() == 3);
    CHECK(back.positions() == m.positions());
}

TEST_CASE("format_real round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("parse errors carry the line number") {
    auto line_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_mesh(in);
        } catch (const ParseError& e) {
            return e.line();
        }
        return -1;
    };
    CHECK(line_of("HLMESH 2 heisenberg2 4\n") == 1);
    CHECK(line_of("HLMESH 1 heisenberg2 4\n3 1\nv 0 0 0 0 0 0 0\nv 1 0 1 0 0 0 0\nv 0 1 0 0 1 0\nf 0 1 2\n") == 5);
    CHECK(line_of("HLMESH 1 heisenberg2 4\n3 1\nv 0 0 0 0 0 0 0\nv 1 0 1 0 0 0 0\nv 0 1 0 0 1 0 0\nf 0 1 9\n") > 0);
    CHECK(line_of("HLMESH 1 heisenberg2 4\n3 1\nv 0 0 0 0 0 0 0\nv 1 0 1 0 0 0 0\nv 0 1 0 0 1 0 0\nf 0 1 2\n") == -1);
}
