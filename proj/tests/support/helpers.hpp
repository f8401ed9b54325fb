#pragma once

#include <random>
#include <vector>

#include "signorini/mesh.hpp"

namespace signorini::testing {

/// Index of the triangle containing p (barycentric test with slack).
inline int find_element(const Mesh& m, Point2 p) {
    for (int k = 0; k < m.num_triangles(); ++k) {
        const auto& v = m.triangles()[k].v;
        const Point2 a = m.vertex(v[0]), b = m.vertex(v[1]), c = m.vertex(v[2]);
        const double area = cross(b - a, c - a);
        const double l1 = cross(p - a, c - a) / area;
        const double l2 = cross(b - a, p - a) / area;
        const double l0 = 1.0 - l1 - l2;
        if (l0 >= -1e-12 && l1 >= -1e-12 && l2 >= -1e-12) return k;
    }
    return -1;
}

/// Independent Euler-relation check (the Mesh constructor also enforces it).
inline bool euler_holds(const Mesh& m) {
    return m.num_vertices() - m.num_edges() + m.num_triangles() == 1;
}

inline std::vector<int> random_marking(std::mt19937& rng, int num_elements, int max_marks) {
    std::uniform_int_distribution<int> count(1, max_marks);
    std::uniform_int_distribution<int> pick(0, num_elements - 1);
    std::vector<int> marked;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) marked.push_back(pick(rng));
    return marked;
}

}  // namespace signorini::testing
