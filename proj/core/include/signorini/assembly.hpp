#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "signorini/dof_map.hpp"
#include "signorini/mesh.hpp"
#include "signorini/quadrature.hpp"
#include "signorini/sparse.hpp"

namespace signorini {

using LoadFunction = std::function<double(Point2)>;

/// Matrix of (grad phi_i, grad phi_j) over all dofs; symmetric positive
/// semidefinite, constraints applied separately.
SparseMatrix assemble_stiffness(const Mesh& m, const DofMap& d);

/// Vector of (f, phi_i) by quadrature of the given degree.
std::vector<double> assemble_load(const Mesh& m, const DofMap& d, const LoadFunction& f,
                                  int quad_degree = kDefaultTriangleDegree);

/// One contact-boundary quadrature point. Weights are physical (they include
/// the edge length), so integrals over the contact boundary are plain
/// weighted sums. The point order — boundary edges in mesh order, Gauss
/// points in rule order — fixes the layout shared by the solver, the
/// estimators, and activity masks.
struct ContactQuadPoint {
    int boundary_edge;
    Point2 position;
    double param;   // position along the edge in [0,1]
    double weight;  // gauss weight * h_E
};

std::vector<ContactQuadPoint> contact_quadrature(const Mesh& m,
                                                 int edge_degree = kDefaultEdgeDegree);

struct NitscheBlocks {
    SparseMatrix penalty;        // (alpha h_E)^{-1} (u, v) over active points
    SparseMatrix consistency;    // (dn u, v) + (u, dn v) over active points
    SparseMatrix stabilisation;  // alpha h_E (dn u, dn v) over inactive points
};

/// Boundary blocks of the contact formulation for a fixed activity pattern,
/// one flag per contact quadrature point in layout order. The full system
/// matrix is stiffness + penalty - consistency - stabilisation.
NitscheBlocks assemble_nitsche_blocks(const Mesh& m, const DofMap& d, double alpha,
                                      std::span<const std::uint8_t> active,
                                      int edge_degree = kDefaultEdgeDegree);

/// Eliminate Dirichlet-constrained rows and columns symmetrically; the result
/// is indexed by free dofs.
std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(const SparseMatrix& A,
                                                             std::span<const double> b,
                                                             const DofMap& d);

}  // namespace signorini
