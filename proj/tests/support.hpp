#pragma once

#include "hlmono/mesh.hpp"
#include "hlmono/zoo.hpp"

#include <vector>

namespace hlmono::testing {

// Unit square [0,1]^2 split into 2 n^2 triangles, mapped into R^3 by (x, y, f(x, y)).
template <class F>
SurfaceMesh euclidean_grid(int n, F height) {
    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            const double x = static_cast<double>(i) / n, y = static_cast<double>(j) / n;
            params.emplace_back(x, y);
            AVec p(3);
            p << x, y, height(x, y);
            pos.push_back(p);
        }
    std::vector<Triangle> tris;
    auto id = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
            tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
        }
    return SurfaceMesh(AmbientKind::euclidean, 3, params, pos, {}, tris);
}

inline PolarResolution coarse_polar(int angular = 48) {
    PolarResolution r;
    r.angular = angular;
    r.inner_octave = -5;
    r.outer_octave = 2;
    return r;
}

}  // namespace hlmono::testing
