#pragma once

#include <array>
#include <span>
#include <vector>

#include "signorini/mesh.hpp"

namespace signorini {

/// Global numbering of Lagrange degrees of freedom: one per vertex, plus one
/// per edge midpoint for degree 2 (edge dof index = num_vertices + edge
/// index). A dof is Dirichlet-constrained iff it lies on the closure of the
/// Dirichlet boundary.
class DofMap {
public:
    DofMap(const Mesh& mesh, int degree);

    int degree() const { return degree_; }
    int num_dofs() const { return num_dofs_; }
    int num_free() const { return num_free_; }
    int dofs_per_element() const { return degree_ == 1 ? 3 : 6; }

    /// Global dofs of element k: vertex dofs then (degree 2) edge dofs in
    /// local edge order.
    std::span<const int> element_dofs(int k) const {
        const int n = dofs_per_element();
        return {element_dofs_.data() + static_cast<size_t>(k) * n, static_cast<size_t>(n)};
    }

    bool is_constrained(int dof) const { return free_index_[dof] < 0; }
    /// Index within the free subsystem, or -1 for constrained dofs.
    int free_index(int dof) const { return free_index_[dof]; }
    int full_index_of_free(int i) const { return free_to_full_[i]; }

    Point2 dof_position(int dof) const { return positions_[dof]; }

    /// Restrict a full-length vector to free dofs.
    std::vector<double> restrict_free(std::span<const double> full) const;
    /// Expand a free vector to full length with zeros on constrained dofs.
    std::vector<double> expand_free(std::span<const double> reduced) const;

private:
    int degree_;
    int num_dofs_;
    int num_free_;
    std::vector<int> element_dofs_;
    std::vector<int> free_index_;
    std::vector<int> free_to_full_;
    std::vector<Point2> positions_;
};

}  // namespace signorini
