#pragma once

#include <array>
#include <span>

#include "signorini/geometry.hpp"

namespace signorini {

/// Lagrange basis on the reference triangle (0,0), (1,0), (0,1) for degree
/// k in {1,2}. Local dof order: vertices 0..2, then (k=2) edge midpoints
/// 3+l where edge l is opposite vertex l.
struct ReferenceElement {
    int degree;

    static const ReferenceElement& get(int degree);

    int num_dofs() const { return degree == 1 ? 3 : 6; }

    /// Basis values at barycentric coordinates (l0, l1, l2).
    void values(const std::array<double, 3>& bary, std::span<double> out) const;
    /// Reference gradients (d/dxi, d/deta) with xi = l1, eta = l2.
    void gradients(const std::array<double, 3>& bary, std::span<Point2> out) const;
    /// Constant reference Hessian of basis function i (zero for degree 1).
    std::array<double, 3> hessian(int i) const;  // (dxx, dxy, dyy)
};

/// Affine map from the reference triangle onto a physical triangle.
struct AffineMap {
    Point2 origin;       // image of (0,0)
    double j[2][2];      // columns: images of the reference basis vectors
    double inv[2][2];    // inverse of j
    double det;          // positive for CCW triangles

    AffineMap(Point2 a, Point2 b, Point2 c);

    Point2 to_physical(const std::array<double, 3>& bary) const;
    std::array<double, 3> to_barycentric(Point2 p) const;
    /// Push a reference gradient to a physical gradient (J^{-T} g).
    Point2 push_gradient(Point2 ref_grad) const;
    /// trace(J^{-T} H J^{-1}) for a constant reference Hessian H.
    double push_laplacian(const std::array<double, 3>& ref_hess) const;
};

}  // namespace signorini
