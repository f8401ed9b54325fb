#pragma once

#include <span>
#include <vector>

#include "signorini/assembly.hpp"
#include "signorini/solver.hpp"

namespace signorini {

/// Residual error indicators. Edge vectors are indexed by global mesh edge
/// (interior jumps) or boundary edge (contact/Neumann residuals), with zeros
/// where the indicator does not apply. The global eta satisfies
///   eta^2 = sum eta_K^2 + sum eta_{E,interior}^2 + sum eta_{E,contact}^2
///         + sum eta_{E,neumann}^2
/// exactly as computed from the stored entries.
struct IndicatorSet {
    std::vector<double> eta_element;   // per element
    std::vector<double> eta_interior;  // per mesh edge
    std::vector<double> eta_contact;   // per boundary edge
    std::vector<double> eta_neumann;   // per boundary edge
    std::vector<double> oscillation;   // per element
    std::vector<double> combined;      // per element: the marking indicator E_K

    double eta = 0.0;
    double S = 0.0;
    /// Parts of S, logged separately: the mesh-dependent surrogate of
    /// ||u_h^-||_{H^{1/2}} and sqrt((lambda_h, u_h^+)).
    double negative_trace_norm = 0.0;
    double complementarity_defect = 0.0;
};

/// h_K ||lap(u_h) + f||_{0,K}
double element_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        const LoadFunction& f, int element,
                        int quad_degree = kDefaultTriangleDegree);

/// sqrt(h_E) * L2 norm over the interior edge of the jump of the normal
/// derivative between the two incident elements.
double interior_jump(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                     int edge_index, int edge_degree = kDefaultEdgeDegree);

/// sqrt(h_E) * L2 norm of (lambda_h - dn u_h) over a contact boundary edge,
/// integrated with the contact state's own quadrature points.
double contact_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        const ContactState& state, int boundary_edge);

/// sqrt(h_E) * L2 norm of dn u_h over a Neumann boundary edge.
double neumann_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        int boundary_edge, int edge_degree = kDefaultEdgeDegree);

/// h_K || f - f_h ||_{0,K} with f_h the elementwise L2 projection onto
/// polynomials of the given degree.
double oscillation(const Mesh& m, const LoadFunction& f, int element, int degree,
                   int quad_degree = kDefaultTriangleDegree);

/// The per-element marking indicator: element residual plus h_K-weighted
/// edge residuals of all edges of K.
double adaptive_indicator(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                          const ContactState& state, const LoadFunction& f, int element,
                          int quad_degree = kDefaultTriangleDegree,
                          int edge_degree = kDefaultEdgeDegree);

/// All indicators, the global pair (eta, S), and the marking indicators.
IndicatorSet global_estimate(const Mesh& m, const DofMap& d, const DiscreteSolution& u,
                             const ContactState& state, const LoadFunction& f,
                             int quad_degree = kDefaultTriangleDegree,
                             int edge_degree = kDefaultEdgeDegree);

}  // namespace signorini
