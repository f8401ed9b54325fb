#include "signorini/assembly.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "signorini/elements.hpp"
#include "signorini/parallel.hpp"

namespace signorini {

namespace {

AffineMap element_map(const Mesh& m, int k) {
    const auto& v = m.triangles()[k].v;
    return AffineMap(m.vertex(v[0]), m.vertex(v[1]), m.vertex(v[2]));
}

/// Scatter per-element dense blocks into triplets in element order, so the
/// accumulated matrix does not depend on how the compute loop was chunked.
SparseMatrix reduce_element_blocks(const Mesh& m, const DofMap& d,
                                   const std::vector<double>& blocks) {
    const int n = d.dofs_per_element();
    std::vector<Triplet> triplets;
    triplets.reserve(blocks.size());
    for (int k = 0; k < m.num_triangles(); ++k) {
        const auto dofs = d.element_dofs(k);
        const double* local = blocks.data() + static_cast<size_t>(k) * n * n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                triplets.push_back({dofs[i], dofs[j], local[i * n + j]});
    }
    return SparseMatrix::from_triplets(d.num_dofs(), std::move(triplets));
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& m, const DofMap& d) {
    const auto& ref = ReferenceElement::get(d.degree());
    const int n = ref.num_dofs();
    const auto& rule = triangle_rule(d.degree() == 1 ? 1 : 2);

    std::vector<double> blocks(static_cast<size_t>(m.num_triangles()) * n * n, 0.0);
    parallel_for(m.num_triangles(), [&](int begin, int end) {
        std::array<Point2, 6> g{};
        for (int k = begin; k < end; ++k) {
            const AffineMap map = element_map(m, k);
            const double jac = std::abs(map.det);
            double* local = blocks.data() + static_cast<size_t>(k) * n * n;
            for (const auto& node : rule.nodes) {
                ref.gradients(node.bary, g);
                std::array<Point2, 6> pg{};
                for (int i = 0; i < n; ++i) pg[i] = map.push_gradient(g[i]);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        local[i * n + j] += node.weight * jac * dot(pg[i], pg[j]);
            }
        }
    });
    return reduce_element_blocks(m, d, blocks);
}

std::vector<double> assemble_load(const Mesh& m, const DofMap& d, const LoadFunction& f,
                                  int quad_degree) {
    const auto& ref = ReferenceElement::get(d.degree());
    const int n = ref.num_dofs();
    const auto& rule = triangle_rule(quad_degree);

    std::vector<double> locals(static_cast<size_t>(m.num_triangles()) * n, 0.0);
    parallel_for(m.num_triangles(), [&](int begin, int end) {
        std::array<double, 6> phi{};
        for (int k = begin; k < end; ++k) {
            const AffineMap map = element_map(m, k);
            const double jac = std::abs(map.det);
            double* local = locals.data() + static_cast<size_t>(k) * n;
            for (const auto& node : rule.nodes) {
                ref.values(node.bary, phi);
                const double fx = f(map.to_physical(node.bary));
                for (int i = 0; i < n; ++i) local[i] += node.weight * jac * fx * phi[i];
            }
        }
    });

    std::vector<double> b(d.num_dofs(), 0.0);
    for (int k = 0; k < m.num_triangles(); ++k) {
        const auto dofs = d.element_dofs(k);
        for (int i = 0; i < n; ++i) b[dofs[i]] += locals[static_cast<size_t>(k) * n + i];
    }
    return b;
}

std::vector<ContactQuadPoint> contact_quadrature(const Mesh& m, int edge_degree) {
    const EdgeRule& rule = edge_rule(edge_degree);
    std::vector<ContactQuadPoint> points;
    for (int be = 0; be < static_cast<int>(m.boundary_edges().size()); ++be) {
        if (m.boundary_edges()[be].tag != BoundaryClass::Contact) continue;
        const Point2 pa = m.vertex(m.boundary_edges()[be].a);
        const Point2 pb = m.vertex(m.boundary_edges()[be].b);
        const double h = m.boundary_edge_length(be);
        for (const auto& node : rule.nodes)
            points.push_back({be, pa + node.t * (pb - pa), node.t, node.weight * h});
    }
    return points;
}

NitscheBlocks assemble_nitsche_blocks(const Mesh& m, const DofMap& d, double alpha,
                                      std::span<const std::uint8_t> active, int edge_degree) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("assemble_nitsche_blocks: alpha must be positive");
    const auto layout = contact_quadrature(m, edge_degree);
    if (active.size() != layout.size())
        throw std::invalid_argument(
            "assemble_nitsche_blocks: activity flags do not match the contact quadrature");

    const auto& ref = ReferenceElement::get(d.degree());
    const int n = ref.num_dofs();
    std::vector<Triplet> tp, tc, ts;

    std::array<double, 6> phi{};
    std::array<Point2, 6> g{};
    for (size_t q = 0; q < layout.size(); ++q) {
        const ContactQuadPoint& cp = layout[q];
        const int k = m.boundary_edge_triangle(cp.boundary_edge);
        const AffineMap map = element_map(m, k);
        const auto bary = map.to_barycentric(cp.position);
        const Point2 normal = m.boundary_edge_normal(cp.boundary_edge);
        const double hE = m.boundary_edge_length(cp.boundary_edge);
        const auto dofs = d.element_dofs(k);

        ref.values(bary, phi);
        ref.gradients(bary, g);
        std::array<double, 6> dn{};
        for (int i = 0; i < n; ++i) dn[i] = dot(map.push_gradient(g[i]), normal);

        if (active[q]) {
            const double wp = cp.weight / (alpha * hE);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    tp.push_back({dofs[i], dofs[j], wp * phi[i] * phi[j]});
                    tc.push_back({dofs[i], dofs[j],
                                  cp.weight * (dn[j] * phi[i] + phi[j] * dn[i])});
                }
        } else {
            const double ws = cp.weight * alpha * hE;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    ts.push_back({dofs[i], dofs[j], ws * dn[i] * dn[j]});
        }
    }

    NitscheBlocks blocks;
    blocks.penalty = SparseMatrix::from_triplets(d.num_dofs(), std::move(tp));
    blocks.consistency = SparseMatrix::from_triplets(d.num_dofs(), std::move(tc));
    blocks.stabilisation = SparseMatrix::from_triplets(d.num_dofs(), std::move(ts));
    return blocks;
}

std::pair<SparseMatrix, std::vector<double>> apply_dirichlet(const SparseMatrix& A,
                                                             std::span<const double> b,
                                                             const DofMap& d) {
    std::vector<Triplet> triplets;
    triplets.reserve(A.nonzeros());
    const auto rp = A.row_ptr();
    const auto ci = A.col_idx();
    const auto vals = A.values();
    for (int r = 0; r < A.rows(); ++r) {
        const int rr = d.free_index(r);
        if (rr < 0) continue;
        for (int i = rp[r]; i < rp[r + 1]; ++i) {
            const int cc = d.free_index(ci[i]);
            if (cc < 0) continue;
            triplets.push_back({rr, cc, vals[i]});
        }
    }
    SparseMatrix reduced = SparseMatrix::from_triplets(d.num_free(), std::move(triplets));
    return {std::move(reduced), d.restrict_free(b)};
}

}  // namespace signorini
