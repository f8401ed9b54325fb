#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "signorini/estimator.hpp"
#include "signorini/problems.hpp"
#include "support/helpers.hpp"

using namespace signorini;

namespace {

LoadFunction paper_load() {
    return [](Point2 p) { return p.x * std::cos(2.0 * std::numbers::pi * p.y); };
}

NitscheConfig quiet_config() {
    NitscheConfig cfg;
    cfg.warn = [](const std::string&) {};
    return cfg;
}

/// Two right triangles sharing the vertical edge x=0 (length 1).
Mesh two_triangle_mesh() {
    return Mesh({{-1, 0}, {0, 0}, {0, 1}, {1, 0}},
                {Triangle{{0, 1, 2}, 0}, Triangle{{1, 3, 2}, 0}},
                {{0, 1, BoundaryClass::Neumann},
                 {1, 3, BoundaryClass::Neumann},
                 {3, 2, BoundaryClass::Neumann},
                 {2, 0, BoundaryClass::Neumann}});
}

}  // namespace

TEST_CASE("element residual") {
    const Mesh m = build_unit_square(2);
    SUBCASE("P1 with zero load vanishes") {
        const DofMap d(m, 1);
        const auto u = interpolate(m, d, [](Point2 p) { return 0.3 * p.x - p.y; });
        for (int k = 0; k < m.num_triangles(); ++k)
            CHECK(element_residual(m, d, u, [](Point2) { return 0.0; }, k) <= 1e-14);
    }
    SUBCASE("P2 interpolant of x^2 with f = -2 vanishes") {
        const DofMap d(m, 2);
        const auto u = interpolate(m, d, [](Point2 p) { return p.x * p.x; });
        for (int k = 0; k < m.num_triangles(); ++k)
            CHECK(element_residual(m, d, u, [](Point2) { return -2.0; }, k) <= 1e-12);
    }
    SUBCASE("constant residual integrates the element area") {
        const DofMap d(m, 1);
        const std::vector<double> u(d.num_dofs(), 0.0);
        for (int k = 0; k < m.num_triangles(); ++k) {
            const double expected = m.element_diameter(k) * std::sqrt(m.element_area(k));
            CHECK(element_residual(m, d, u, [](Point2) { return 1.0; }, k) ==
                  doctest::Approx(expected).epsilon(1e-13));
        }
    }
}

TEST_CASE("interior jump") {
    SUBCASE("globally linear functions have no jump") {
        const Mesh m = build_unit_square(3);
        const DofMap d(m, 1);
        const auto u = interpolate(m, d, [](Point2 p) { return 2.0 * p.x - 0.7 * p.y + 1.0; });
        for (int e = 0; e < m.num_edges(); ++e) {
            if (m.edges()[e].is_boundary()) continue;
            CHECK(interior_jump(m, d, u, e) <= 1e-13);
        }
    }
    SUBCASE("hand-computed two-element jump") {
        const Mesh m = two_triangle_mesh();
        const DofMap d(m, 1);
        // u = x on the right triangle, 0 on the left: nodal values (0,0,0,1)
        const std::vector<double> u{0.0, 0.0, 0.0, 1.0};
        const int shared = m.edge_index(1, 2);
        REQUIRE(shared >= 0);
        REQUIRE(!m.edges()[shared].is_boundary());
        CHECK(interior_jump(m, d, u, shared) == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("invariant under relabeling the incident triangles") {
        const Mesh swapped = Mesh({{-1, 0}, {0, 0}, {0, 1}, {1, 0}},
                                  {Triangle{{1, 3, 2}, 0}, Triangle{{0, 1, 2}, 0}},
                                  {{0, 1, BoundaryClass::Neumann},
                                   {1, 3, BoundaryClass::Neumann},
                                   {3, 2, BoundaryClass::Neumann},
                                   {2, 0, BoundaryClass::Neumann}});
        const DofMap d(swapped, 1);
        const std::vector<double> u{0.0, 0.0, 0.0, 1.0};
        CHECK(interior_jump(swapped, d, u, swapped.edge_index(1, 2)) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("boundary edges are rejected") {
        const Mesh m = build_unit_square(1);
        const DofMap d(m, 1);
        const std::vector<double> u(d.num_dofs(), 0.0);
        CHECK_THROWS_AS(interior_jump(m, d, u, m.edge_index(0, 1)), std::invalid_argument);
    }
}

TEST_CASE("contact residual") {
    const Mesh m = build_unit_square(1);
    const DofMap d(m, 1);
    const double alpha = 0.1;
    int contact_edge = -1;
    for (int be = 0; be < 4; ++be)
        if (m.boundary_edges()[be].tag == BoundaryClass::Contact) contact_edge = be;

    SUBCASE("separation with zero flux vanishes") {
        const std::vector<double> u(d.num_dofs(), 0.0);
        const ContactState state = compute_lambda(m, d, u, alpha);
        CHECK(contact_residual(m, d, u, state, contact_edge) <= 1e-14);
    }
    SUBCASE("fully active set: residual reduces to the penalty identity") {
        // u = -x: trace -1 on the contact side, unclipped multiplier positive
        const auto u = interpolate(m, d, [](Point2 p) { return -p.x; });
        const ContactState state = compute_lambda(m, d, u, alpha);
        for (const ContactPoint& p : state.points) CHECK(p.active);
        const double hE = m.boundary_edge_length(contact_edge);
        // lambda - dn u = -(alpha hE)^{-1} u with |u| = 1 on the edge
        const double expected = std::sqrt(hE) / (alpha * hE) * std::sqrt(hE);
        CHECK(contact_residual(m, d, u, state, contact_edge) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("contact indicators decrease under uniform refinement") {
        double prev = 1e300;
        for (int n : {4, 8, 16}) {
            const Mesh mesh = build_unit_square(n);
            const DofMap dm(mesh, 2);
            auto [u, state] = solve_nitsche(mesh, dm, paper_load(), quiet_config());
            const IndicatorSet ind =
                global_estimate(mesh, dm, u, state, paper_load());
            double sum2 = 0.0;
            for (double v : ind.eta_contact) sum2 += v * v;
            CHECK(sum2 < prev);
            prev = sum2;
        }
    }
}

TEST_CASE("neumann residual") {
    const Mesh m = build_unit_square(1);
    const DofMap d(m, 1);
    const int bottom = [&] {
        for (int be = 0; be < 4; ++be) {
            const auto& e = m.boundary_edges()[be];
            if (m.vertex(e.a).y < 1e-12 && m.vertex(e.b).y < 1e-12) return be;
        }
        return -1;
    }();
    REQUIRE(bottom >= 0);

    const std::vector<double> zero(d.num_dofs(), 0.0);
    CHECK(neumann_residual(m, d, zero, bottom) <= 1e-14);

    const auto ux = interpolate(m, d, [](Point2 p) { return p.x; });
    CHECK(neumann_residual(m, d, ux, bottom) <= 1e-13);

    const auto uy = interpolate(m, d, [](Point2 p) { return p.y; });
    CHECK(neumann_residual(m, d, uy, bottom) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("data oscillation") {
    const Mesh m = build_unit_square(2);
    SUBCASE("polynomials of the element degree project exactly") {
        for (int k = 0; k < m.num_triangles(); ++k) {
            CHECK(oscillation(m, [](Point2 p) { return 2.0 - p.x + 3.0 * p.y; }, k, 1) <= 1e-12);
            CHECK(oscillation(m, [](Point2 p) { return p.x * p.x - p.x * p.y + 1.0; }, k, 2) <=
                  1e-12);
            CHECK(oscillation(m, [](Point2) { return 0.0; }, k, 2) == 0.0);
        }
    }
    SUBCASE("smooth loads: oscillation decays at the projection rate") {
        const LoadFunction f = paper_load();
        for (int degree : {1, 2}) {
            std::vector<double> hs, os;
            Mesh mesh = build_unit_square(4);
            for (int level = 0; level < 3; ++level) {
                double worst = 0.0;
                for (int k = 0; k < mesh.num_triangles(); ++k)
                    worst = std::max(worst, oscillation(mesh, f, k, degree, 8));
                hs.push_back(mesh_statistics(mesh).h_max);
                os.push_back(worst);
                mesh = refine_uniform(mesh);
            }
            const double slope = (std::log(os.front()) - std::log(os.back())) /
                                 (std::log(hs.front()) - std::log(hs.back()));
            CHECK(slope >= degree + 1.5);  // O(h^{k+2}) per element, or better
            CHECK(os[0] > os[1]);
            CHECK(os[1] > os[2]);
        }
    }
}

TEST_CASE("global estimate") {
    SUBCASE("zero everything gives eta = S = 0") {
        const Mesh m = build_unit_square(2);
        const DofMap d(m, 2);
        DiscreteSolution u{std::vector<double>(d.num_dofs(), 0.0), 2, 0.1, 0};
        const ContactState state = compute_lambda(m, d, u.coefficients, 0.1);
        const IndicatorSet ind = global_estimate(m, d, u, state, [](Point2) { return 0.0; });
        CHECK(ind.eta == 0.0);
        CHECK(ind.S == 0.0);
    }
    SUBCASE("feasible complementary solutions have S = 0") {
        const Mesh m = build_unit_square(2);
        const DofMap d(m, 1);
        // u = x: positive trace on the contact side, multiplier clipped to 0
        DiscreteSolution u{interpolate(m, d, [](Point2 p) { return p.x; }), 1, 0.1, 0};
        const ContactState state = compute_lambda(m, d, u.coefficients, 0.1);
        for (const ContactPoint& p : state.points) CHECK(p.lambda == 0.0);
        const IndicatorSet ind = global_estimate(m, d, u, state, [](Point2) { return 0.0; });
        CHECK(ind.S == 0.0);
        CHECK(ind.negative_trace_norm == 0.0);
        CHECK(ind.complementarity_defect == 0.0);
    }
    SUBCASE("eta aggregates the stored indicators exactly") {
        const Mesh m = build_unit_square(4);
        const DofMap d(m, 2);
        auto [u, state] = solve_nitsche(m, d, paper_load(), quiet_config());
        const IndicatorSet ind = global_estimate(m, d, u, state, paper_load());
        double sum2 = 0.0;
        for (double v : ind.eta_element) sum2 += v * v;
        for (double v : ind.eta_interior) sum2 += v * v;
        for (double v : ind.eta_contact) sum2 += v * v;
        for (double v : ind.eta_neumann) sum2 += v * v;
        CHECK(ind.eta == doctest::Approx(std::sqrt(sum2)).epsilon(1e-14));
        CHECK(ind.eta > 0.0);
        CHECK(ind.S >= 0.0);
    }
    SUBCASE("the combined indicator satisfies its aggregation identity") {
        const Mesh m = build_unit_square(4);
        const DofMap d(m, 2);
        auto [u, state] = solve_nitsche(m, d, paper_load(), quiet_config());
        const IndicatorSet ind = global_estimate(m, d, u, state, paper_load());
        for (int k = 0; k < m.num_triangles(); ++k) {
            const double hK = m.element_diameter(k);
            double expected = ind.eta_element[k] * ind.eta_element[k];
            for (int e : m.triangle_edges(k)) {
                const EdgeInfo& info = m.edges()[e];
                const double hE = distance(m.vertex(info.a), m.vertex(info.b));
                double v = 0.0;
                if (!info.is_boundary())
                    v = ind.eta_interior[e];
                else if (m.boundary_edges()[info.boundary_index].tag == BoundaryClass::Contact)
                    v = ind.eta_contact[info.boundary_index];
                else if (m.boundary_edges()[info.boundary_index].tag == BoundaryClass::Neumann)
                    v = ind.eta_neumann[info.boundary_index];
                expected += hK / hE * v * v;
            }
            CHECK(ind.combined[k] == doctest::Approx(std::sqrt(expected)).epsilon(1e-13));
            CHECK(adaptive_indicator(m, d, u.coefficients, state, paper_load(), k) ==
                  doctest::Approx(ind.combined[k]).epsilon(1e-12));
        }
    }
    SUBCASE("interior element with flat P1 solution and no load has E_K = 0") {
        const Mesh m = build_unit_square(4);
        const DofMap d(m, 1);
        const std::vector<double> flat(d.num_dofs(), 0.0);
        DiscreteSolution u{flat, 1, 0.1, 0};
        const ContactState state = compute_lambda(m, d, flat, 0.1);
        const int k = signorini::testing::find_element(m, {0.45, 0.45});
        REQUIRE(k >= 0);
        CHECK(adaptive_indicator(m, d, flat, state, [](Point2) { return 0.0; }, k) <= 1e-14);
    }
}

TEST_CASE("eta decreases under uniform refinement on the benchmark problem") {
    double prev = 1e300;
    for (int n : {4, 8, 16}) {
        const Mesh m = build_unit_square(n);
        const DofMap d(m, 2);
        auto [u, state] = solve_nitsche(m, d, paper_load(), quiet_config());
        const IndicatorSet ind = global_estimate(m, d, u, state, paper_load());
        CHECK(ind.eta < prev);
        prev = ind.eta;
    }
}

TEST_CASE("effectivity on the smooth no-contact problem stays in band") {
    const Problem prob = make_manufactured_problem(4);
    Mesh mesh = prob.mesh;
    double prev_eff = 0.0;
    for (int level = 0; level < 4; ++level) {
        const DofMap d(mesh, 2);
        auto [u, state] = solve_nitsche(mesh, d, prob.load, quiet_config());
        CHECK(state.active_count() == 0);
        const IndicatorSet ind = global_estimate(mesh, d, u, state, prob.load);
        const double err = exact_h1_error(mesh, d, u.coefficients, prob.exact_gradient);
        const double eff = ind.eta / err;
        CHECK(eff >= 0.5);
        CHECK(eff <= 30.0);
        if (level > 0) {
            CHECK(eff / prev_eff >= 0.4);
            CHECK(eff / prev_eff <= 2.5);
        }
        prev_eff = eff;
        if (level + 1 < 4) mesh = refine_uniform(mesh);
    }
}
