#include "signorini/fields.hpp"

#include <array>

#include "signorini/elements.hpp"
#include "signorini/quadrature.hpp"

namespace signorini {

namespace {

AffineMap element_map(const Mesh& m, int k) {
    const auto& v = m.triangles()[k].v;
    return AffineMap(m.vertex(v[0]), m.vertex(v[1]), m.vertex(v[2]));
}

}  // namespace

double eval_value(const Mesh&, const DofMap& d, std::span<const double> coeffs, int element,
                  const std::array<double, 3>& bary) {
    const auto& ref = ReferenceElement::get(d.degree());
    std::array<double, 6> phi{};
    ref.values(bary, phi);
    double s = 0.0;
    const auto dofs = d.element_dofs(element);
    for (int i = 0; i < ref.num_dofs(); ++i) s += coeffs[dofs[i]] * phi[i];
    return s;
}

Point2 eval_gradient(const Mesh& m, const DofMap& d, std::span<const double> coeffs, int element,
                     const std::array<double, 3>& bary) {
    const auto& ref = ReferenceElement::get(d.degree());
    std::array<Point2, 6> g{};
    ref.gradients(bary, g);
    const AffineMap map = element_map(m, element);
    Point2 acc{0.0, 0.0};
    const auto dofs = d.element_dofs(element);
    for (int i = 0; i < ref.num_dofs(); ++i) {
        const Point2 pg = map.push_gradient(g[i]);
        acc = acc + coeffs[dofs[i]] * pg;
    }
    return acc;
}

double eval_laplacian(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                      int element) {
    if (d.degree() == 1) return 0.0;
    const auto& ref = ReferenceElement::get(2);
    const AffineMap map = element_map(m, element);
    double s = 0.0;
    const auto dofs = d.element_dofs(element);
    for (int i = 0; i < 6; ++i) s += coeffs[dofs[i]] * map.push_laplacian(ref.hessian(i));
    return s;
}

double boundary_value(const Mesh& m, const DofMap& d, std::span<const double> coeffs, int be,
                      double t) {
    const BoundaryEdge& e = m.boundary_edges()[be];
    const int k = m.boundary_edge_triangle(be);
    const Point2 p = m.vertex(e.a) + t * (m.vertex(e.b) - m.vertex(e.a));
    return eval_value(m, d, coeffs, k, element_map(m, k).to_barycentric(p));
}

double edge_normal_derivative(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                              int be, double t) {
    const BoundaryEdge& e = m.boundary_edges()[be];
    const int k = m.boundary_edge_triangle(be);
    const Point2 p = m.vertex(e.a) + t * (m.vertex(e.b) - m.vertex(e.a));
    const Point2 g = eval_gradient(m, d, coeffs, k, element_map(m, k).to_barycentric(p));
    return dot(g, m.boundary_edge_normal(be));
}

double h1_seminorm(const Mesh& m, const DofMap& d, std::span<const double> coeffs) {
    std::vector<double> zero(coeffs.size(), 0.0);
    return h1_seminorm_diff(m, d, coeffs, zero);
}

double h1_seminorm_diff(const Mesh& m, const DofMap& d, std::span<const double> a,
                        std::span<const double> b) {
    const auto& rule = triangle_rule(d.degree() == 1 ? 1 : 2);
    double total = 0.0;
    std::vector<double> diff(a.size());
    for (size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    for (int k = 0; k < m.num_triangles(); ++k) {
        const double jac = 2.0 * m.element_area(k);
        for (const auto& node : rule.nodes) {
            const Point2 g = eval_gradient(m, d, diff, k, node.bary);
            total += node.weight * jac * dot(g, g);
        }
    }
    return std::sqrt(total);
}

double exact_h1_error(const Mesh& m, const DofMap& d, std::span<const double> coeffs,
                      const std::function<Point2(Point2)>& exact_gradient, int quad_degree) {
    const auto& rule = triangle_rule(quad_degree);
    double total = 0.0;
    for (int k = 0; k < m.num_triangles(); ++k) {
        const AffineMap map = element_map(m, k);
        const double jac = 2.0 * m.element_area(k);
        for (const auto& node : rule.nodes) {
            const Point2 gh = eval_gradient(m, d, coeffs, k, node.bary);
            const Point2 ge = exact_gradient(map.to_physical(node.bary));
            const Point2 diff = ge - gh;
            total += node.weight * jac * dot(diff, diff);
        }
    }
    return std::sqrt(total);
}

std::vector<double> interpolate(const Mesh&, const DofMap& d,
                                const std::function<double(Point2)>& f) {
    std::vector<double> coeffs(d.num_dofs());
    for (int i = 0; i < d.num_dofs(); ++i) coeffs[i] = f(d.dof_position(i));
    return coeffs;
}

}  // namespace signorini
