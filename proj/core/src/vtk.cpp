#include "signorini/vtk.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace signorini {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Unclipped multiplier value of u at parameter t of a contact edge.
double lambda_at(const Mesh& m, const DofMap& d, const DiscreteSolution& u, int be, double t) {
    if (!(u.alpha > 0.0)) return 0.0;
    const double hE = m.boundary_edge_length(be);
    const double g = edge_normal_derivative(m, d, u.coefficients, be, t) -
                     boundary_value(m, d, u.coefficients, be, t) / (u.alpha * hE);
    return std::max(g, 0.0);
}

void write_grid(std::ostream& out, const Mesh& m) {
    out << "# vtk DataFile Version 3.0\n";
    out << "signorini solution\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << m.num_vertices() << " double\n";
    for (const Point2& p : m.vertices()) out << fmt(p.x) << " " << fmt(p.y) << " 0\n";
    out << "CELLS " << m.num_triangles() << " " << 4 * m.num_triangles() << "\n";
    for (const Triangle& t : m.triangles())
        out << "3 " << t.v[0] << " " << t.v[1] << " " << t.v[2] << "\n";
    out << "CELL_TYPES " << m.num_triangles() << "\n";
    for (int k = 0; k < m.num_triangles(); ++k) out << "5\n";
}

void write_scalars(std::ostream& out, const std::string& name,
                   const std::vector<double>& values, bool integer = false) {
    out << "SCALARS " << name << (integer ? " int 1\n" : " double 1\n");
    out << "LOOKUP_TABLE default\n";
    for (double v : values) {
        if (integer)
            out << static_cast<long long>(v) << "\n";
        else
            out << fmt(v) << "\n";
    }
}

}  // namespace

void write_solution_vtk(std::ostream& out, const Mesh& m, const DofMap& d,
                        const DiscreteSolution& u, const ContactState& state) {
    const bool quadratic = d.degree() == 2;
    // Quadratic nodes coincide with the vertices of one uniform refinement,
    // so the coefficient vector doubles as nodal values on the shadow mesh.
    const Mesh shadow = quadratic ? refine_uniform(m) : m;
    const int np = shadow.num_vertices();

    std::vector<double> uvals(u.coefficients.begin(), u.coefficients.begin() + np);

    std::vector<double> lambda_sum(np, 0.0);
    std::vector<int> lambda_count(np, 0);
    for (int be = 0; be < static_cast<int>(m.boundary_edges().size()); ++be) {
        const BoundaryEdge& edge = m.boundary_edges()[be];
        if (edge.tag != BoundaryClass::Contact) continue;
        auto put = [&](int point, double t) {
            lambda_sum[point] += lambda_at(m, d, u, be, t);
            lambda_count[point] += 1;
        };
        put(edge.a, 0.0);
        put(edge.b, 1.0);
        if (quadratic) put(m.num_vertices() + m.edge_index(edge.a, edge.b), 0.5);
    }
    std::vector<double> lambda(np, 0.0);
    for (int i = 0; i < np; ++i)
        if (lambda_count[i] > 0) lambda[i] = lambda_sum[i] / lambda_count[i];

    // Cell flags from the activity of the contact quadrature points: a cell
    // is flagged when it owns a (sub-)edge holding an active point.
    std::vector<double> flags(shadow.num_triangles(), 0.0);
    for (int be = 0; be < static_cast<int>(m.boundary_edges().size()); ++be) {
        const BoundaryEdge& edge = m.boundary_edges()[be];
        if (edge.tag != BoundaryClass::Contact) continue;
        bool half_a = false, half_b = false;
        for (const ContactPoint& p : state.points) {
            if (p.boundary_edge != be || !p.active) continue;
            if (p.param <= 0.5) half_a = true;
            if (p.param >= 0.5) half_b = true;
        }
        const int k = m.boundary_edge_triangle(be);
        if (!quadratic) {
            if (half_a || half_b) flags[k] = 1.0;
            continue;
        }
        // children of k are emitted as corners at v0, v1, v2 then the middle
        const auto& v = m.triangles()[k].v;
        for (int i = 0; i < 3; ++i) {
            if (v[i] == edge.a && half_a) flags[4 * k + i] = 1.0;
            if (v[i] == edge.b && half_b) flags[4 * k + i] = 1.0;
        }
    }

    write_grid(out, shadow);
    out << "POINT_DATA " << np << "\n";
    write_scalars(out, "u", uvals);
    write_scalars(out, "lambda", lambda);
    out << "CELL_DATA " << shadow.num_triangles() << "\n";
    write_scalars(out, "contact", flags, /*integer=*/true);
}

void write_solution_vtk_file(const std::string& path, const Mesh& m, const DofMap& d,
                             const DiscreteSolution& u, const ContactState& state) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_solution_vtk(out, m, d, u, state);
    if (!out) throw std::runtime_error("error writing " + path);
}

VtkData read_vtk(std::istream& in) {
    VtkData data;
    std::string line;
    enum class Section { None, PointData, CellData } section = Section::None;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word == "POINTS") {
            ls >> data.num_points;
            for (int i = 0; i < data.num_points; ++i)
                if (!std::getline(in, line)) throw std::runtime_error("vtk: truncated POINTS");
        } else if (word == "CELLS") {
            int n = 0;
            ls >> n;
            data.num_cells = n;
            for (int i = 0; i < n; ++i)
                if (!std::getline(in, line)) throw std::runtime_error("vtk: truncated CELLS");
        } else if (word == "POINT_DATA") {
            section = Section::PointData;
        } else if (word == "CELL_DATA") {
            section = Section::CellData;
        } else if (word == "SCALARS") {
            std::string name;
            ls >> name;
            if (!std::getline(in, line) || line.rfind("LOOKUP_TABLE", 0) != 0)
                throw std::runtime_error("vtk: expected LOOKUP_TABLE after SCALARS");
            const int count = section == Section::PointData ? data.num_points : data.num_cells;
            std::vector<double> values;
            values.reserve(count);
            while (static_cast<int>(values.size()) < count) {
                double v;
                if (!(in >> v)) throw std::runtime_error("vtk: truncated scalars " + name);
                values.push_back(v);
            }
            std::getline(in, line);  // rest of the last value line
            (section == Section::PointData ? data.point_data : data.cell_data)[name] =
                std::move(values);
        }
    }
    return data;
}

}  // namespace signorini
