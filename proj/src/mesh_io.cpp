#include "hlmono/mesh_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hlmono {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

double parse_real(const std::string& tok, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) throw ParseError(line, "expected a real, got '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line) {
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (tok.empty() || end != tok.c_str() + tok.size()) throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

}  // namespace

SurfaceMesh read_mesh(std::istream& in) {
    std::string raw;
    int line = 0;
    auto next = [&](std::vector<std::string>& toks) {
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            toks = tokens(raw);
            if (!toks.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> t;
    if (!next(t) || t.size() != 4 || t[0] != "HLMESH") throw ParseError(line, "missing HLMESH header");
    if (t[1] != "1") throw ParseError(line, "unsupported HLMESH version " + t[1]);
    AmbientKind kind;
    if (t[2] == "heisenberg2") kind = AmbientKind::heisenberg2;
    else if (t[2] == "euclidean") kind = AmbientKind::euclidean;
    else throw ParseError(line, "unknown ambient kind '" + t[2] + "'");
    const int dim = static_cast<int>(parse_int(t[3], line));
    if (kind == AmbientKind::heisenberg2 && dim != 4) throw ParseError(line, "heisenberg2 requires n = 4");
    if (kind == AmbientKind::euclidean && (dim < 3 || dim > 6)) throw ParseError(line, "euclidean n must be 3..6");

    if (!next(t) || t.size() != 2) throw ParseError(line, "expected '<node_count> <tri_count>'");
    const long nn = parse_int(t[0], line), nt = parse_int(t[1], line);
    if (nn < 0 || nt < 0) throw ParseError(line, "negative counts");

    std::vector<Eigen::Vector2d> params;
    std::vector<AVec> pos;
    std::vector<double> phi;
    std::vector<Triangle> tris;
    std::vector<int> origins;
    ParamChart chart;
    std::optional<double> legendrian;
    const std::size_t node_fields = 3 + dim + (kind == AmbientKind::heisenberg2 ? 1 : 0);

    while (next(t)) {
        const std::string& key = t[0];
        if (key == "v") {
            if (t.size() != node_fields) throw ParseError(line, "node line has wrong field count");
            params.emplace_back(parse_real(t[1], line), parse_real(t[2], line));
            AVec p(dim);
            for (int k = 0; k < dim; ++k) p[k] = parse_real(t[3 + k], line);
            pos.push_back(p);
            if (kind == AmbientKind::heisenberg2) phi.push_back(parse_real(t[3 + dim], line));
        } else if (key == "f") {
            if (t.size() != 4) throw ParseError(line, "triangle line needs three indices");
            Triangle tri;
            for (int k = 0; k < 3; ++k) {
                const long v = parse_int(t[1 + k], line);
                if (v < 0 || v >= nn) throw ParseError(line, "node index out of range");
                tri[k] = static_cast<int>(v);
            }
            if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
                throw ParseError(line, "repeated node index in triangle");
            tris.push_back(tri);
        } else if (key == "origin") {
            if (t.size() != 2) throw ParseError(line, "origin line needs one index");
            const long v = parse_int(t[1], line);
            if (v < 0 || v >= nn) throw ParseError(line, "origin index out of range");
            origins.push_back(static_cast<int>(v));
        } else if (key == "chart") {
            if (t.size() != 3 || (t[1] != "conformal" && t[1] != "generic"))
                throw ParseError(line, "chart line must be 'chart <conformal|generic> <period>'");
            chart.conformal = t[1] == "conformal";
            chart.period = parse_real(t[2], line);
        } else if (key == "legendrian") {
            if (t.size() != 2) throw ParseError(line, "legendrian line needs a tolerance");
            legendrian = parse_real(t[1], line);
        } else {
            throw ParseError(line, "unknown record '" + key + "'");
        }
    }
    if (static_cast<long>(params.size()) != nn) throw ParseError(line, "node count does not match header");
    if (static_cast<long>(tris.size()) != nt) throw ParseError(line, "triangle count does not match header");

    SurfaceMesh mesh(kind, dim, std::move(params), std::move(pos), std::move(phi), std::move(tris), std::move(origins),
                     chart);
    mesh.legendrian_tolerance = legendrian;
    return mesh;
}

void write_mesh(std::ostream& out, const SurfaceMesh& mesh) {
    out << "HLMESH 1 " << (mesh.is_heisenberg() ? "heisenberg2" : "euclidean") << ' ' << mesh.dim() << '\n';
    out << mesh.node_count() << ' ' << mesh.triangle_count() << '\n';
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        out << "v " << format_real(mesh.param(i)[0]) << ' ' << format_real(mesh.param(i)[1]);
        for (int k = 0; k < mesh.dim(); ++k) out << ' ' << format_real(mesh.position(i)[k]);
        if (mesh.is_heisenberg()) out << ' ' << format_real(mesh.phi(i));
        out << '\n';
    }
    for (const auto& tri : mesh.triangles()) out << "f " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    for (int o : mesh.origin_preimages()) out << "origin " << o << '\n';
    if (mesh.chart().conformal || mesh.chart().period > 0.0)
        out << "chart " << (mesh.chart().conformal ? "conformal " : "generic ") << format_real(mesh.chart().period)
            << '\n';
    if (mesh.legendrian_tolerance) out << "legendrian " << format_real(*mesh.legendrian_tolerance) << '\n';
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_mesh(in);
}

void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_mesh(out, mesh);
}

}  // namespace hlmono
