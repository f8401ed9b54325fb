#pragma once

#include <functional>
#include <span>
#include <vector>

#include "signorini/dof_map.hpp"
#include "signorini/mesh.hpp"

namespace signorini {

/// Finite element function given by its coefficient vector over a DofMap.
/// Dirichlet-constrained coefficients are exactly zero.
struct DiscreteSolution {
    std::vector<double> coefficients;
    int degree = 2;
    double alpha = 0.0;   // stabilisation parameter used by the solve
    int iterations = 0;   // linear solves performed by the active-set loop
};

double eval_value(const Mesh& m, const DofMap& d, std::span<const double> coeffs, int element,
                  const std::array<double, 3>& bary);
Point2 eval_gradient(const Mesh& m, const DofMap& d, std::span<const double> coeffs, int element,
                     const std::array<double, 3>& bary);
/// Elementwise-constant Laplacian (zero for degree 1).
double eval_laplacian(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                      int element);

/// Trace of the function on boundary edge `be` at parameter t in [0,1]
/// measured from endpoint a to endpoint b.
double boundary_value(const Mesh& m, const DofMap& d, std::span<const double> coeffs, int be,
                      double t);

/// Outward normal derivative on boundary edge `be` at parameter t, evaluated
/// from the single element owning the edge.
double edge_normal_derivative(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                              int be, double t);

/// |v|_{H^1} = ||grad v||_{L^2}, the V-norm.
double h1_seminorm(const Mesh& m, const DofMap& d, std::span<const double> coeffs);
double h1_seminorm_diff(const Mesh& m, const DofMap& d, std::span<const double> a,
                        std::span<const double> b);

/// ||grad(u_exact - u_h)||_{L^2} against an analytic gradient.
double exact_h1_error(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                      const std::function<Point2(Point2)>& exact_gradient, int quad_degree = 8);

/// Nodal interpolant of an analytic function (vertex and, for degree 2,
/// edge-midpoint values).
std::vector<double> interpolate(const Mesh& m, const DofMap& d,
                                const std::function<double(Point2)>& f);

}  // namespace signorini
