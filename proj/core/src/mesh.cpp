#include "signorini/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace signorini {

namespace {

double signed_area(Point2 a, Point2 b, Point2 c) {
    return 0.5 * cross(b - a, c - a);
}

std::pair<int, int> sorted_pair(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

std::string_view to_string(BoundaryClass c) {
    switch (c) {
        case BoundaryClass::Dirichlet: return "dirichlet";
        case BoundaryClass::Neumann: return "neumann";
        case BoundaryClass::Contact: return "contact";
    }
    return "?";
}

BoundaryClass boundary_class_from_string(std::string_view s) {
    if (s == "dirichlet") return BoundaryClass::Dirichlet;
    if (s == "neumann") return BoundaryClass::Neumann;
    if (s == "contact") return BoundaryClass::Contact;
    throw std::invalid_argument("unknown boundary class: " + std::string(s));
}

void assign_refinement_edges(const std::vector<Point2>& vertices,
                             std::vector<Triangle>& triangles) {
    for (Triangle& t : triangles) {
        int best = 0;
        double best_len = -1.0;
        for (int k = 0; k < 3; ++k) {
            const double len =
                distance(vertices[t.v[(k + 1) % 3]], vertices[t.v[(k + 2) % 3]]);
            if (len > best_len || (len == best_len && t.v[k] < t.v[best])) {
                best = k;
                best_len = len;
            }
        }
        t.refinement_edge = best;
    }
}

Mesh::Mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles,
           std::vector<BoundaryEdge> boundary)
    : vertices_(std::move(vertices)),
      triangles_(std::move(triangles)),
      boundary_(std::move(boundary)) {
    build_derived();
}

void Mesh::build_derived() {
    const int nv = num_vertices();
    const int nt = num_triangles();
    if (nt == 0) throw std::invalid_argument("mesh: no triangles");

    for (const Point2& p : vertices_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("mesh: non-finite vertex coordinate");
    }

    h_K_.resize(nt);
    area_.resize(nt);
    for (int k = 0; k < nt; ++k) {
        const Triangle& t = triangles_[k];
        for (int i = 0; i < 3; ++i) {
            if (t.v[i] < 0 || t.v[i] >= nv)
                throw std::invalid_argument("mesh: vertex index out of range");
        }
        if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[2] == t.v[0])
            throw std::invalid_argument("mesh: degenerate triangle (repeated vertex)");
        if (t.refinement_edge < 0 || t.refinement_edge > 2)
            throw std::invalid_argument("mesh: refinement edge index out of range");
        const Point2 a = vertices_[t.v[0]], b = vertices_[t.v[1]], c = vertices_[t.v[2]];
        const double sa = signed_area(a, b, c);
        if (!(sa > 0.0))
            throw std::invalid_argument("mesh: triangle not counter-clockwise or degenerate");
        area_[k] = sa;
        h_K_[k] = std::max({distance(a, b), distance(b, c), distance(c, a)});
    }

    // Gather (vertex pair) -> incident triangles in a deterministic order.
    std::vector<std::tuple<int, int, int>> raw;  // (a, b, triangle)
    raw.reserve(3 * static_cast<size_t>(nt));
    for (int k = 0; k < nt; ++k) {
        for (int l = 0; l < 3; ++l) {
            auto [a, b] = sorted_pair(triangles_[k].v[(l + 1) % 3], triangles_[k].v[(l + 2) % 3]);
            raw.emplace_back(a, b, k);
        }
    }
    std::sort(raw.begin(), raw.end());

    edges_.clear();
    for (size_t i = 0; i < raw.size();) {
        auto [a, b, k] = raw[i];
        EdgeInfo e;
        e.a = a;
        e.b = b;
        e.tri[0] = k;
        size_t j = i + 1;
        int count = 1;
        while (j < raw.size() && std::get<0>(raw[j]) == a && std::get<1>(raw[j]) == b) {
            if (count == 1) e.tri[1] = std::get<2>(raw[j]);
            ++count;
            ++j;
        }
        if (count > 2)
            throw std::invalid_argument("mesh: edge shared by more than two triangles");
        edges_.push_back(e);
        i = j;
    }

    tri_edges_.assign(nt, {-1, -1, -1});
    for (int k = 0; k < nt; ++k) {
        for (int l = 0; l < 3; ++l) {
            auto [a, b] = sorted_pair(triangles_[k].v[(l + 1) % 3], triangles_[k].v[(l + 2) % 3]);
            tri_edges_[k][l] = edge_index(a, b);
        }
    }

    // Match declared boundary edges against topological boundary edges.
    const int nb = static_cast<int>(boundary_.size());
    std::vector<int> seen(edges_.size(), 0);
    h_E_.resize(nb);
    normal_.resize(nb);
    for (int i = 0; i < nb; ++i) {
        const BoundaryEdge& be = boundary_[i];
        const int e = edge_index(be.a, be.b);
        if (e < 0)
            throw std::invalid_argument("mesh: boundary edge is not a mesh edge");
        if (!edges_[e].is_boundary())
            throw std::invalid_argument("mesh: declared boundary edge is interior");
        if (seen[e]++)
            throw std::invalid_argument("mesh: boundary edge listed twice");
        edges_[e].boundary_index = i;

        const Point2 pa = vertices_[be.a], pb = vertices_[be.b];
        h_E_[i] = distance(pa, pb);
        Point2 n = perp(pb - pa);
        n = (1.0 / norm(n)) * n;
        const Point2 inward = centroid(edges_[e].tri[0]) - midpoint(pa, pb);
        if (dot(n, inward) > 0.0) n = -1.0 * n;
        normal_[i] = n;
    }
    for (const EdgeInfo& e : edges_) {
        if (e.is_boundary() && e.boundary_index < 0)
            throw std::invalid_argument("mesh: topological boundary edge without a class tag");
    }

    // Closures of the Dirichlet and contact parts must not meet.
    std::vector<char> on_dirichlet(nv, 0), on_contact(nv, 0);
    for (const BoundaryEdge& be : boundary_) {
        if (be.tag == BoundaryClass::Dirichlet) on_dirichlet[be.a] = on_dirichlet[be.b] = 1;
        if (be.tag == BoundaryClass::Contact) on_contact[be.a] = on_contact[be.b] = 1;
    }
    for (int i = 0; i < nv; ++i) {
        if (on_dirichlet[i] && on_contact[i])
            throw std::invalid_argument(
                "mesh: Dirichlet and contact boundary closures intersect");
    }

    // Euler relation for a simply connected domain.
    if (nv - num_edges() + nt != 1)
        throw std::invalid_argument("mesh: Euler relation V - E + F = 1 violated");
}

int Mesh::edge_index(int a, int b) const {
    auto [lo, hi] = sorted_pair(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(lo, hi),
                               [](const EdgeInfo& e, const std::pair<int, int>& p) {
                                   return std::make_pair(e.a, e.b) < p;
                               });
    if (it == edges_.end() || it->a != lo || it->b != hi) return -1;
    return static_cast<int>(it - edges_.begin());
}

int Mesh::boundary_edge_triangle(int be) const {
    const int e = edge_index(boundary_[be].a, boundary_[be].b);
    return edges_[e].tri[0];
}

Point2 Mesh::centroid(int k) const {
    const Triangle& t = triangles_[k];
    const Point2 a = vertices_[t.v[0]], b = vertices_[t.v[1]], c = vertices_[t.v[2]];
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

BoundaryTagger default_unit_square_tagger() {
    return [](Point2 p) {
        constexpr double tol = 1e-12;
        if (std::abs(p.x) < tol) return BoundaryClass::Dirichlet;
        if (std::abs(p.x - 1.0) < tol) return BoundaryClass::Contact;
        return BoundaryClass::Neumann;
    };
}

Mesh build_unit_square(int n) { return build_unit_square(n, default_unit_square_tagger()); }

Mesh build_unit_square(int n, const BoundaryTagger& tagger) {
    if (n < 1) throw std::invalid_argument("build_unit_square: n must be >= 1");
    const double h = 1.0 / n;
    std::vector<Point2> verts;
    verts.reserve(static_cast<size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) verts.push_back({i * h, j * h});
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };

    std::vector<Triangle> tris;
    tris.reserve(2 * static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            tris.push_back({{a, b, c}, 1});  // hypotenuse a-c opposite b
            tris.push_back({{a, c, d}, 2});  // hypotenuse a-c opposite d
        }
    }
    assign_refinement_edges(verts, tris);

    std::vector<BoundaryEdge> bnd;
    auto add = [&](int a, int b) {
        bnd.push_back({a, b, tagger(midpoint(verts[a], verts[b]))});
    };
    for (int i = 0; i < n; ++i) add(vid(i, 0), vid(i + 1, 0));
    for (int j = 0; j < n; ++j) add(vid(n, j), vid(n, j + 1));
    for (int i = 0; i < n; ++i) add(vid(i + 1, n), vid(i, n));
    for (int j = 0; j < n; ++j) add(vid(0, j + 1), vid(0, j));
    return Mesh(std::move(verts), std::move(tris), std::move(bnd));
}

Mesh refine_uniform(const Mesh& m) {
    const int nv = m.num_vertices();
    std::vector<Point2> verts = m.vertices();
    verts.reserve(nv + m.num_edges());
    for (const EdgeInfo& e : m.edges())
        verts.push_back(midpoint(m.vertex(e.a), m.vertex(e.b)));

    std::vector<Triangle> tris;
    tris.reserve(4 * static_cast<size_t>(m.num_triangles()));
    for (int k = 0; k < m.num_triangles(); ++k) {
        const auto& v = m.triangles()[k].v;
        const auto& te = m.triangle_edges(k);
        const int m0 = nv + te[0], m1 = nv + te[1], m2 = nv + te[2];
        tris.push_back({{v[0], m2, m1}, 2});
        tris.push_back({{v[1], m0, m2}, 2});
        tris.push_back({{v[2], m1, m0}, 2});
        tris.push_back({{m0, m1, m2}, 2});
    }
    assign_refinement_edges(verts, tris);

    std::vector<BoundaryEdge> bnd;
    bnd.reserve(2 * m.boundary_edges().size());
    for (const BoundaryEdge& be : m.boundary_edges()) {
        const int mid = nv + m.edge_index(be.a, be.b);
        bnd.push_back({be.a, mid, be.tag});
        bnd.push_back({mid, be.b, be.tag});
    }
    return Mesh(std::move(verts), std::move(tris), std::move(bnd));
}

Mesh refine_marked(const Mesh& m, const std::vector<int>& marked) {
    const int nt = m.num_triangles();
    std::vector<char> edge_marked(m.num_edges(), 0);
    for (int k : marked) {
        if (k < 0 || k >= nt)
            throw std::invalid_argument("refine_marked: element index out of range");
        edge_marked[m.triangle_edges(k)[m.triangles()[k].refinement_edge]] = 1;
    }

    // Conformity closure: a triangle with any marked edge must also have its
    // refinement edge marked. Terminates because markings only grow.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < nt; ++k) {
            const auto& te = m.triangle_edges(k);
            const int ref = te[m.triangles()[k].refinement_edge];
            if (edge_marked[ref]) continue;
            if (edge_marked[te[0]] || edge_marked[te[1]] || edge_marked[te[2]]) {
                edge_marked[ref] = 1;
                changed = true;
            }
        }
    }

    std::vector<Point2> verts = m.vertices();
    std::vector<int> midpoint_vertex(m.num_edges(), -1);
    for (int e = 0; e < m.num_edges(); ++e) {
        if (!edge_marked[e]) continue;
        midpoint_vertex[e] = static_cast<int>(verts.size());
        verts.push_back(midpoint(m.vertex(m.edges()[e].a), m.vertex(m.edges()[e].b)));
    }

    std::vector<Triangle> tris;
    tris.reserve(nt);
    // Emit a triangle in normalized form: refinement edge (p0, p1), peak p2.
    // Bisection inserts the midpoint of (p0, p1) and hands each child the
    // edge opposite the new vertex as its refinement edge.
    auto emit = [&](auto&& self, int p0, int p1, int p2) -> void {
        const int e = m.edge_index(p0, p1);
        if (e < 0 || !edge_marked[e]) {
            tris.push_back({{p0, p1, p2}, 2});
            return;
        }
        const int mid = midpoint_vertex[e];
        self(self, p2, p0, mid);
        self(self, p1, p2, mid);
    };
    for (int k = 0; k < nt; ++k) {
        const Triangle& t = m.triangles()[k];
        const int r = t.refinement_edge;
        emit(emit, t.v[(r + 1) % 3], t.v[(r + 2) % 3], t.v[r]);
    }

    std::vector<BoundaryEdge> bnd;
    bnd.reserve(m.boundary_edges().size());
    for (const BoundaryEdge& be : m.boundary_edges()) {
        const int e = m.edge_index(be.a, be.b);
        if (edge_marked[e]) {
            const int mid = midpoint_vertex[e];
            bnd.push_back({be.a, mid, be.tag});
            bnd.push_back({mid, be.b, be.tag});
        } else {
            bnd.push_back(be);
        }
    }
    return Mesh(std::move(verts), std::move(tris), std::move(bnd));
}

MeshStatistics mesh_statistics(const Mesh& m) {
    MeshStatistics s;
    s.num_elements = m.num_triangles();
    s.num_vertices = m.num_vertices();
    s.min_angle_deg = 180.0;
    for (int k = 0; k < m.num_triangles(); ++k) {
        s.h_max = std::max(s.h_max, m.element_diameter(k));
        const auto& v = m.triangles()[k].v;
        for (int i = 0; i < 3; ++i) {
            const Point2 p = m.vertex(v[i]);
            const Point2 u = m.vertex(v[(i + 1) % 3]) - p;
            const Point2 w = m.vertex(v[(i + 2) % 3]) - p;
            const double ang = std::atan2(std::abs(cross(u, w)), dot(u, w));
            s.min_angle_deg = std::min(s.min_angle_deg, ang * 180.0 / std::numbers::pi);
        }
    }
    return s;
}

int contact_side_count(const Mesh& m) {
    // Group contact edges by their supporting line (normal direction and
    // signed offset), which identifies the polygon side they lie on.
    std::vector<std::array<double, 3>> lines;
    constexpr double tol = 1e-9;
    for (int i = 0; i < static_cast<int>(m.boundary_edges().size()); ++i) {
        if (m.boundary_edges()[i].tag != BoundaryClass::Contact) continue;
        Point2 n = m.boundary_edge_normal(i);
        const Point2 pa = m.vertex(m.boundary_edges()[i].a);
        double off = dot(n, pa);
        if (n.x < -tol || (std::abs(n.x) <= tol && n.y < 0.0)) {
            n = -1.0 * n;
            off = -off;
        }
        bool found = false;
        for (const auto& l : lines) {
            if (std::abs(l[0] - n.x) < tol && std::abs(l[1] - n.y) < tol &&
                std::abs(l[2] - off) < tol) {
                found = true;
                break;
            }
        }
        if (!found) lines.push_back({n.x, n.y, off});
    }
    return static_cast<int>(lines.size());
}

double boundary_length(const Mesh& m, BoundaryClass c) {
    double total = 0.0;
    for (int i = 0; i < static_cast<int>(m.boundary_edges().size()); ++i)
        if (m.boundary_edges()[i].tag == c) total += m.boundary_edge_length(i);
    return total;
}

}  // namespace signorini
