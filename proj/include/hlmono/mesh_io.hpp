#pragma once

#include "hlmono/mesh.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace hlmono {

/// HLMESH text format error, carrying the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// HLMESH 1 <heisenberg2|euclidean> <n>
// <node_count> <tri_count>
// v x1 x2 z1 z2 z3 z4 phi      (heisenberg2)   |   v x1 x2 p1 .. pn   (euclidean)
// f i j k
// origin i                      (optional)
// chart <conformal|generic> <period>   (optional)
// legendrian <tol>              (optional)
// Reals are written with 17 significant digits, so load(save(m)) is exact.

SurfaceMesh read_mesh(std::istream& in);
void write_mesh(std::ostream& out, const SurfaceMesh& mesh);

SurfaceMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);

std::string format_real(double v);

}  // namespace hlmono
