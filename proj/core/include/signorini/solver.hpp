#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "signorini/assembly.hpp"
#include "signorini/fields.hpp"

namespace signorini {

/// Numerical failure inside a solve (singular/indefinite system, active-set
/// or power-iteration non-convergence).
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NitscheConfig {
    double alpha = 0.1;
    int max_iterations = 50;
    double linear_tol = 1e-10;
    /// Activity requires the unclipped multiplier to exceed this, preventing
    /// flip-flop of points numerically at zero.
    double hysteresis_tol = 1e-10;
    int edge_quad_degree = kDefaultEdgeDegree;
    int volume_quad_degree = kDefaultTriangleDegree;
    /// Check alpha against the estimated inverse constant and warn through
    /// `warn` when it is not below it.
    bool validate_alpha = true;
    std::function<void(const std::string&)> warn;  // defaults to stderr
};

/// State of one contact quadrature point after multiplier recovery.
struct ContactPoint {
    int boundary_edge = -1;
    Point2 position;
    double param = 0.0;
    double weight = 0.0;
    double lambda = 0.0;  // clipped at zero
    bool active = false;
};

/// Pointwise discrete contact data over the contact quadrature layout.
/// lambda >= 0 everywhere by construction; active flags define the discrete
/// contact region.
struct ContactState {
    std::vector<ContactPoint> points;

    int active_count() const;
    std::vector<std::uint8_t> activity() const;
};

/// Recover the discrete Lagrange multiplier
///   lambda_h = (dn u_h - (alpha h_E)^{-1} u_h)_+
/// at every contact quadrature point and flag activity where the unclipped
/// value exceeds the hysteresis tolerance.
ContactState compute_lambda(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                            double alpha, double hysteresis_tol = 1e-10,
                            int edge_degree = kDefaultEdgeDegree);

/// Active-set solve of the contact problem: starting from an all-active
/// contact region, alternate linear Nitsche solves with multiplier recovery
/// until the activity pattern repeats itself. Throws SolveError when the
/// iteration cap is exceeded; cycles are broken by keeping the iterate with
/// the smallest nonlinear residual.
std::pair<DiscreteSolution, ContactState> solve_nitsche(const Mesh& m, const DofMap& d,
                                                        const LoadFunction& f,
                                                        const NitscheConfig& cfg = {});

/// Direct symmetric sparse solve with a residual check ||Ax-b|| <= tol ||b||.
/// Throws SolveError for indefinite or singular systems.
std::vector<double> solve_linear(const SparseMatrix& A, std::span<const double> b, double tol);

/// Largest constant c with c sum_E h_E ||dn v||_{0,E}^2 <= ||v||_V^2 over the
/// finite element space: the reciprocal of the top generalized Rayleigh
/// quotient of the contact edge form against the stiffness form, by power
/// iteration. Stable under refinement; used to validate the stabilisation
/// parameter.
double estimate_inverse_constant(const Mesh& m, const DofMap& d, double tol = 1e-9,
                                 int max_iterations = 10000);

/// Independent reference discretisation: minimize the energy over piecewise
/// linears with nodal constraints v >= 0 on the contact boundary, by
/// projected Gauss-Seidel to the given energy-increment tolerance.
DiscreteSolution solve_primal_oracle(const Mesh& m, const LoadFunction& f, double tol = 1e-12,
                                     int max_sweeps = 200000,
                                     int quad_degree = kDefaultTriangleDegree);

/// Locations where the activity flag switches along the contact boundary
/// (midpoints between neighbouring quadrature points of opposite state).
std::vector<Point2> free_boundary_points(const ContactState& state);

}  // namespace signorini
