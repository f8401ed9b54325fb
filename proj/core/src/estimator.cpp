#include "signorini/estimator.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <stdexcept>

#include "signorini/elements.hpp"
#include "signorini/parallel.hpp"
#include "signorini/quadrature.hpp"

namespace signorini {

namespace {

AffineMap element_map(const Mesh& m, int k) {
    const auto& v = m.triangles()[k].v;
    return AffineMap(m.vertex(v[0]), m.vertex(v[1]), m.vertex(v[2]));
}

Point2 one_sided_normal_gradient_point(const Mesh& m, const DofMap& d,
                                       std::span<const double> coeffs, int tri, Point2 p) {
    return eval_gradient(m, d, coeffs, tri, element_map(m, tri).to_barycentric(p));
}

}  // namespace

double element_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        const LoadFunction& f, int element, int quad_degree) {
    const auto& rule = triangle_rule(quad_degree);
    const AffineMap map = element_map(m, element);
    const double jac = std::abs(map.det);
    const double lap = eval_laplacian(m, d, coeffs, element);
    double s = 0.0;
    for (const auto& node : rule.nodes) {
        const double r = lap + f(map.to_physical(node.bary));
        s += node.weight * jac * r * r;
    }
    return m.element_diameter(element) * std::sqrt(s);
}

double interior_jump(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                     int edge_index, int edge_degree) {
    const EdgeInfo& e = m.edges()[edge_index];
    if (e.is_boundary()) throw std::invalid_argument("interior_jump: edge is on the boundary");
    const Point2 pa = m.vertex(e.a), pb = m.vertex(e.b);
    const double h = distance(pa, pb);
    Point2 n = perp(pb - pa);
    n = (1.0 / norm(n)) * n;

    const auto& rule = edge_rule(edge_degree);
    double s = 0.0;
    for (const auto& node : rule.nodes) {
        const Point2 p = pa + node.t * (pb - pa);
        const Point2 g0 = one_sided_normal_gradient_point(m, d, coeffs, e.tri[0], p);
        const Point2 g1 = one_sided_normal_gradient_point(m, d, coeffs, e.tri[1], p);
        const double jump = dot(g0 - g1, n);
        s += node.weight * h * jump * jump;
    }
    return std::sqrt(h * s);
}

double contact_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        const ContactState& state, int boundary_edge) {
    if (m.boundary_edges()[boundary_edge].tag != BoundaryClass::Contact)
        throw std::invalid_argument("contact_residual: edge is not a contact edge");
    const double h = m.boundary_edge_length(boundary_edge);
    double s = 0.0;
    bool found = false;
    for (const ContactPoint& p : state.points) {
        if (p.boundary_edge != boundary_edge) continue;
        found = true;
        const double dn = edge_normal_derivative(m, d, coeffs, boundary_edge, p.param);
        const double r = p.lambda - dn;
        s += p.weight * r * r;
    }
    if (!found)
        throw std::invalid_argument("contact_residual: contact state has no points on the edge");
    return std::sqrt(h * s);
}

double neumann_residual(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                        int boundary_edge, int edge_degree) {
    const double h = m.boundary_edge_length(boundary_edge);
    const auto& rule = edge_rule(edge_degree);
    double s = 0.0;
    for (const auto& node : rule.nodes) {
        const double dn = edge_normal_derivative(m, d, coeffs, boundary_edge, node.t);
        s += node.weight * h * dn * dn;
    }
    return std::sqrt(h * s);
}

double oscillation(const Mesh& m, const LoadFunction& f, int element, int degree,
                   int quad_degree) {
    const auto& ref = ReferenceElement::get(degree);
    const int n = ref.num_dofs();
    const auto& rule = triangle_rule(std::max(quad_degree, 2 * degree));
    const AffineMap map = element_map(m, element);
    const double jac = std::abs(map.det);

    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    std::array<double, 6> phi{};
    for (const auto& node : rule.nodes) {
        ref.values(node.bary, phi);
        const double fx = f(map.to_physical(node.bary));
        for (int i = 0; i < n; ++i) {
            rhs[i] += node.weight * jac * fx * phi[i];
            for (int j = 0; j < n; ++j) mass(i, j) += node.weight * jac * phi[i] * phi[j];
        }
    }
    const Eigen::VectorXd c = mass.llt().solve(rhs);

    double s = 0.0;
    for (const auto& node : rule.nodes) {
        ref.values(node.bary, phi);
        double fh = 0.0;
        for (int i = 0; i < n; ++i) fh += c[i] * phi[i];
        const double r = f(map.to_physical(node.bary)) - fh;
        s += node.weight * jac * r * r;
    }
    return m.element_diameter(element) * std::sqrt(s);
}

double adaptive_indicator(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                          const ContactState& state, const LoadFunction& f, int element,
                          int quad_degree, int edge_degree) {
    const double hK = m.element_diameter(element);
    const double etaK = element_residual(m, d, coeffs, f, element, quad_degree);
    double total = etaK * etaK;
    for (int e : m.triangle_edges(element)) {
        const EdgeInfo& info = m.edges()[e];
        const double hE = distance(m.vertex(info.a), m.vertex(info.b));
        double edge_ind = 0.0;
        if (!info.is_boundary()) {
            edge_ind = interior_jump(m, d, coeffs, e, edge_degree);
        } else {
            const BoundaryClass tag = m.boundary_edges()[info.boundary_index].tag;
            if (tag == BoundaryClass::Contact)
                edge_ind = contact_residual(m, d, coeffs, state, info.boundary_index);
            else if (tag == BoundaryClass::Neumann)
                edge_ind = neumann_residual(m, d, coeffs, info.boundary_index, edge_degree);
        }
        total += hK / hE * edge_ind * edge_ind;
    }
    return std::sqrt(total);
}

IndicatorSet global_estimate(const Mesh& m, const DofMap& d, const DiscreteSolution& u,
                             const ContactState& state, const LoadFunction& f, int quad_degree,
                             int edge_degree) {
    IndicatorSet out;
    const int nt = m.num_triangles();
    const int ne = m.num_edges();
    const int nb = static_cast<int>(m.boundary_edges().size());
    out.eta_element.assign(nt, 0.0);
    out.eta_interior.assign(ne, 0.0);
    out.eta_contact.assign(nb, 0.0);
    out.eta_neumann.assign(nb, 0.0);
    out.oscillation.assign(nt, 0.0);
    out.combined.assign(nt, 0.0);

    const std::span<const double> coeffs(u.coefficients);

    parallel_for(nt, [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            out.eta_element[k] = element_residual(m, d, coeffs, f, k, quad_degree);
            out.oscillation[k] = oscillation(m, f, k, d.degree(), quad_degree);
        }
    });
    parallel_for(ne, [&](int begin, int end) {
        for (int e = begin; e < end; ++e) {
            if (m.edges()[e].is_boundary()) continue;
            out.eta_interior[e] = interior_jump(m, d, coeffs, e, edge_degree);
        }
    });
    for (int be = 0; be < nb; ++be) {
        const BoundaryClass tag = m.boundary_edges()[be].tag;
        if (tag == BoundaryClass::Contact)
            out.eta_contact[be] = contact_residual(m, d, coeffs, state, be);
        else if (tag == BoundaryClass::Neumann)
            out.eta_neumann[be] = neumann_residual(m, d, coeffs, be, edge_degree);
    }

    double eta2 = 0.0;
    for (double v : out.eta_element) eta2 += v * v;
    for (double v : out.eta_interior) eta2 += v * v;
    for (double v : out.eta_contact) eta2 += v * v;
    for (double v : out.eta_neumann) eta2 += v * v;
    out.eta = std::sqrt(eta2);

    // E_K from the stored edge indicators, h_K-weighted as in the marking rule
    for (int k = 0; k < nt; ++k) {
        const double hK = m.element_diameter(k);
        double total = out.eta_element[k] * out.eta_element[k];
        for (int e : m.triangle_edges(k)) {
            const EdgeInfo& info = m.edges()[e];
            const double hE = distance(m.vertex(info.a), m.vertex(info.b));
            double edge_ind = 0.0;
            if (!info.is_boundary())
                edge_ind = out.eta_interior[e];
            else if (m.boundary_edges()[info.boundary_index].tag == BoundaryClass::Contact)
                edge_ind = out.eta_contact[info.boundary_index];
            else if (m.boundary_edges()[info.boundary_index].tag == BoundaryClass::Neumann)
                edge_ind = out.eta_neumann[info.boundary_index];
            total += hK / hE * edge_ind * edge_ind;
        }
        out.combined[k] = std::sqrt(total);
    }

    // S = ||u_h^-||_W surrogate + sqrt((lambda_h, u_h^+)) over contact points
    double neg2 = 0.0, comp = 0.0;
    for (const ContactPoint& p : state.points) {
        const double hE = m.boundary_edge_length(p.boundary_edge);
        const double trace = boundary_value(m, d, coeffs, p.boundary_edge, p.param);
        const double upos = std::max(trace, 0.0);
        const double uneg = std::min(trace, 0.0);
        neg2 += p.weight / hE * uneg * uneg;
        comp += p.weight * p.lambda * upos;
    }
    out.negative_trace_norm = std::sqrt(neg2);
    out.complementarity_defect = std::sqrt(std::max(comp, 0.0));
    out.S = out.negative_trace_norm + out.complementarity_defect;
    return out;
}

}  // namespace signorini
