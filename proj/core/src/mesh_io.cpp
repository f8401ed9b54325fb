#include "signorini/mesh_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace signorini {

namespace {

/// Pull the next content line (comments stripped, blanks skipped).
bool next_line(std::istream& in, std::string& line, int& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i < line.size()) return true;
    }
    return false;
}

[[noreturn]] void fail(int lineno, const std::string& what) {
    throw std::runtime_error("mesh file, line " + std::to_string(lineno) + ": " + what);
}

int read_count(std::istream& in, int& lineno, const std::string& keyword) {
    std::string line;
    if (!next_line(in, line, lineno)) fail(lineno, "expected '" + keyword + " <count>'");
    std::istringstream ls(line);
    std::string word;
    long count = -1;
    if (!(ls >> word >> count) || word != keyword || count < 0)
        fail(lineno, "expected '" + keyword + " <count>'");
    return static_cast<int>(count);
}

}  // namespace

Mesh read_mesh(std::istream& in) {
    int lineno = 0;
    const int nv = read_count(in, lineno, "vertices");
    const int nt = read_count(in, lineno, "triangles");
    const int nb = read_count(in, lineno, "boundary");

    std::string line;
    std::vector<Point2> verts;
    verts.reserve(nv);
    for (int i = 0; i < nv; ++i) {
        if (!next_line(in, line, lineno)) fail(lineno, "missing vertex line");
        std::istringstream ls(line);
        Point2 p;
        if (!(ls >> p.x >> p.y)) fail(lineno, "expected 'x y'");
        verts.push_back(p);
    }
    std::vector<Triangle> tris;
    tris.reserve(nt);
    for (int i = 0; i < nt; ++i) {
        if (!next_line(in, line, lineno)) fail(lineno, "missing triangle line");
        std::istringstream ls(line);
        Triangle t;
        if (!(ls >> t.v[0] >> t.v[1] >> t.v[2])) fail(lineno, "expected 'i j k'");
        tris.push_back(t);
    }
    std::vector<BoundaryEdge> bnd;
    bnd.reserve(nb);
    for (int i = 0; i < nb; ++i) {
        if (!next_line(in, line, lineno)) fail(lineno, "missing boundary line");
        std::istringstream ls(line);
        BoundaryEdge be;
        std::string tag;
        if (!(ls >> be.a >> be.b >> tag)) fail(lineno, "expected 'i j tag'");
        try {
            be.tag = boundary_class_from_string(tag);
        } catch (const std::invalid_argument& e) {
            fail(lineno, e.what());
        }
        bnd.push_back(be);
    }

    // Refinement edges are not part of the format.
    assign_refinement_edges(verts, tris);

    try {
        return Mesh(std::move(verts), std::move(tris), std::move(bnd));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(std::string("mesh file: ") + e.what());
    }
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mesh file: " + path);
    return read_mesh(in);
}

void write_mesh(std::ostream& out, const Mesh& m) {
    char buf[64];
    out << "vertices " << m.num_vertices() << "\n";
    out << "triangles " << m.num_triangles() << "\n";
    out << "boundary " << m.boundary_edges().size() << "\n";
    for (const Point2& p : m.vertices()) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
    for (const Triangle& t : m.triangles())
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    for (const BoundaryEdge& be : m.boundary_edges())
        out << be.a << " " << be.b << " " << to_string(be.tag) << "\n";
}

void write_mesh_file(const std::string& path, const Mesh& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write mesh file: " + path);
    write_mesh(out, m);
    if (!out) throw std::runtime_error("error writing mesh file: " + path);
}

}  // namespace signorini
