#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "signorini/geometry.hpp"

namespace signorini {

enum class BoundaryClass { Dirichlet, Neumann, Contact };

std::string_view to_string(BoundaryClass c);
BoundaryClass boundary_class_from_string(std::string_view s);

struct Triangle {
    /// Vertex indices, counter-clockwise.
    std::array<int, 3> v{-1, -1, -1};
    /// Local index of the refinement edge for newest-vertex bisection.
    /// Edge k joins v[(k+1)%3] and v[(k+2)%3] (it is opposite vertex k).
    int refinement_edge = 2;
};

struct BoundaryEdge {
    int a = -1;
    int b = -1;
    BoundaryClass tag = BoundaryClass::Neumann;
};

/// One mesh edge together with its incident triangles. Boundary edges have
/// tri[1] == -1 and boundary_index pointing into Mesh::boundary_edges().
struct EdgeInfo {
    int a = -1, b = -1;  // a < b
    std::array<int, 2> tri{-1, -1};
    int boundary_index = -1;

    bool is_boundary() const { return tri[1] < 0; }
};

/// Conforming triangulation of a simply connected polygon with classified
/// boundary edges. Instances are immutable after construction; refinement
/// returns a new mesh. The constructor verifies conformity (every edge shared
/// by two triangles or listed as a boundary edge exactly once), positive
/// triangle orientation, the Euler relation V - E + F = 1, and that the
/// closures of the Dirichlet and contact boundary parts are disjoint.
class Mesh {
public:
    Mesh(std::vector<Point2> vertices, std::vector<Triangle> triangles,
         std::vector<BoundaryEdge> boundary);

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_; }

    /// All mesh edges sorted lexicographically by vertex pair.
    const std::vector<EdgeInfo>& edges() const { return edges_; }
    /// Index into edges() for the pair {a, b}; -1 if no such edge.
    int edge_index(int a, int b) const;
    /// Global edge indices of the three edges of triangle k (local order:
    /// edge l opposite vertex l).
    const std::array<int, 3>& triangle_edges(int k) const { return tri_edges_[k]; }

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_triangles() const { return static_cast<int>(triangles_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    Point2 vertex(int i) const { return vertices_[i]; }
    double element_diameter(int k) const { return h_K_[k]; }
    double element_area(int k) const { return area_[k]; }
    double boundary_edge_length(int be) const { return h_E_[be]; }
    /// Outward unit normal of boundary edge be.
    Point2 boundary_edge_normal(int be) const { return normal_[be]; }
    /// Triangle owning boundary edge be.
    int boundary_edge_triangle(int be) const;
    Point2 centroid(int k) const;

private:
    std::vector<Point2> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<BoundaryEdge> boundary_;

    std::vector<EdgeInfo> edges_;
    std::vector<std::array<int, 3>> tri_edges_;
    std::vector<double> h_K_;
    std::vector<double> area_;
    std::vector<double> h_E_;
    std::vector<Point2> normal_;

    void build_derived();
};

/// Classification rule for boundary edges, evaluated at the edge midpoint.
using BoundaryTagger = std::function<BoundaryClass(Point2)>;

/// Left side Dirichlet (x = 0), right side contact (x = 1), top and bottom
/// Neumann, with coordinate tolerance 1e-12.
BoundaryTagger default_unit_square_tagger();

/// Structured mesh of (0,1)^2 with 2 n^2 triangles, diagonals from bottom-left
/// to top-right. Throws std::invalid_argument for n < 1.
Mesh build_unit_square(int n);
Mesh build_unit_square(int n, const BoundaryTagger& tagger);

/// Red refinement: every triangle is split into 4 similar children.
Mesh refine_uniform(const Mesh& m);

/// Newest-vertex bisection of all elements in `marked` plus the recursive
/// conformity closure. Sub-edges inherit boundary classes. An empty set
/// returns a copy with identical topology.
Mesh refine_marked(const Mesh& m, const std::vector<int>& marked);

/// Longest-edge refinement-edge assignment for initial meshes; ties go to
/// the smallest opposite-vertex index so meshes are identical across runs.
void assign_refinement_edges(const std::vector<Point2>& vertices,
                             std::vector<Triangle>& triangles);

struct MeshStatistics {
    double h_max = 0.0;
    double min_angle_deg = 0.0;
    int num_elements = 0;
    int num_vertices = 0;
};

MeshStatistics mesh_statistics(const Mesh& m);

/// Number of distinct straight boundary segments carrying contact edges.
/// The method's assumptions cover exactly one; callers may warn otherwise.
int contact_side_count(const Mesh& m);

/// Total length of the boundary part with the given class.
double boundary_length(const Mesh& m, BoundaryClass c);

}  // namespace signorini
