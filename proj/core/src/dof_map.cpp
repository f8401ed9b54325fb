#include "signorini/dof_map.hpp"

#include <stdexcept>

namespace signorini {

DofMap::DofMap(const Mesh& mesh, int degree) : degree_(degree) {
    if (degree != 1 && degree != 2)
        throw std::invalid_argument("DofMap: degree must be 1 or 2");

    const int nv = mesh.num_vertices();
    const int ne = mesh.num_edges();
    num_dofs_ = degree == 1 ? nv : nv + ne;

    positions_.resize(num_dofs_);
    for (int i = 0; i < nv; ++i) positions_[i] = mesh.vertex(i);
    if (degree == 2) {
        for (int e = 0; e < ne; ++e)
            positions_[nv + e] =
                midpoint(mesh.vertex(mesh.edges()[e].a), mesh.vertex(mesh.edges()[e].b));
    }

    const int per_el = dofs_per_element();
    element_dofs_.resize(static_cast<size_t>(mesh.num_triangles()) * per_el);
    for (int k = 0; k < mesh.num_triangles(); ++k) {
        int* d = element_dofs_.data() + static_cast<size_t>(k) * per_el;
        for (int i = 0; i < 3; ++i) d[i] = mesh.triangles()[k].v[i];
        if (degree == 2) {
            for (int l = 0; l < 3; ++l) d[3 + l] = nv + mesh.triangle_edges(k)[l];
        }
    }

    std::vector<char> constrained(num_dofs_, 0);
    for (const BoundaryEdge& be : mesh.boundary_edges()) {
        if (be.tag != BoundaryClass::Dirichlet) continue;
        constrained[be.a] = constrained[be.b] = 1;
        if (degree == 2) constrained[nv + mesh.edge_index(be.a, be.b)] = 1;
    }

    free_index_.assign(num_dofs_, -1);
    free_to_full_.clear();
    for (int i = 0; i < num_dofs_; ++i) {
        if (!constrained[i]) {
            free_index_[i] = static_cast<int>(free_to_full_.size());
            free_to_full_.push_back(i);
        }
    }
    num_free_ = static_cast<int>(free_to_full_.size());
}

std::vector<double> DofMap::restrict_free(std::span<const double> full) const {
    std::vector<double> out(num_free_);
    for (int i = 0; i < num_free_; ++i) out[i] = full[free_to_full_[i]];
    return out;
}

std::vector<double> DofMap::expand_free(std::span<const double> reduced) const {
    std::vector<double> out(num_dofs_, 0.0);
    for (int i = 0; i < num_free_; ++i) out[free_to_full_[i]] = reduced[i];
    return out;
}

}  // namespace signorini
