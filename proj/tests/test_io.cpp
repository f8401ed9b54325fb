#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "signorini/csv.hpp"
#include "signorini/expression.hpp"
#include "signorini/svg_plot.hpp"
#include "signorini/vtk.hpp"
#include "support/xml_check.hpp"

using namespace signorini;
using signorini::testing::xml_check;

namespace {

NitscheConfig quiet_config() {
    NitscheConfig cfg;
    cfg.warn = [](const std::string&) {};
    return cfg;
}

std::vector<ConvergenceRecord> power_series(double exponent, int count) {
    std::vector<ConvergenceRecord> records;
    for (int i = 0; i < count; ++i) {
        ConvergenceRecord r;
        r.step = i;
        r.num_dofs = 50 << (2 * i);
        r.eta = 2.0 * std::pow(static_cast<double>(r.num_dofs), exponent);
        r.S = 0.0;
        r.eta_plus_S = r.eta;
        r.h_max = 1.0 / (i + 1);
        r.active_points = i;
        r.walltime_ms = 1.5 * i;
        records.push_back(r);
    }
    return records;
}

}  // namespace

TEST_CASE("expression parser") {
    const LoadFunction f = compile_expression("x*cos(2*pi*y)");
    for (double x : {0.0, 0.3, 1.0})
        for (double y : {0.1, 0.7})
            CHECK(f({x, y}) ==
                  doctest::Approx(x * std::cos(2.0 * std::numbers::pi * y)).epsilon(1e-15));

    CHECK(compile_expression("2+3*4^2")({0, 0}) == doctest::Approx(50.0));
    CHECK(compile_expression("-x^2")({3, 0}) == doctest::Approx(-9.0));
    CHECK(compile_expression("2^3^2")({0, 0}) == doctest::Approx(512.0));  // right assoc
    CHECK(compile_expression("exp(0)+sin(0)")({0, 0}) == doctest::Approx(1.0));
    CHECK(compile_expression(" ( x + y ) / 2 ")({1, 3}) == doctest::Approx(2.0));
    CHECK(compile_expression("1e-2 + 1.5E2")({0, 0}) == doctest::Approx(150.01));

    CHECK_THROWS_AS(compile_expression("x +"), std::invalid_argument);
    CHECK_THROWS_AS(compile_expression("foo(x)"), std::invalid_argument);
    CHECK_THROWS_AS(compile_expression("sin x"), std::invalid_argument);
    CHECK_THROWS_AS(compile_expression("x y"), std::invalid_argument);
    CHECK_THROWS_AS(compile_expression("(x"), std::invalid_argument);
    CHECK_THROWS_AS(compile_expression(""), std::invalid_argument);
}

TEST_CASE("records CSV") {
    auto records = power_series(-1.0, 3);
    records[1].exact_h1_error = 0.125;

    std::stringstream ss;
    write_records_csv(ss, records);
    const std::string text = ss.str();
    CHECK(text.rfind("step,N,eta,S,eta_plus_S,h_max,active_points,walltime_ms,exact_h1_error\n",
                     0) == 0);

    std::stringstream in(text);
    const auto back = read_records_csv(in);
    REQUIRE(back.size() == records.size());
    for (size_t i = 0; i < records.size(); ++i) {
        CHECK(back[i].num_dofs == records[i].num_dofs);
        CHECK(back[i].eta == records[i].eta);
        CHECK(back[i].exact_h1_error.has_value() == records[i].exact_h1_error.has_value());
        if (back[i].exact_h1_error) CHECK(*back[i].exact_h1_error == 0.125);
    }
    std::stringstream bad("nope\n");
    CHECK_THROWS_AS(read_records_csv(bad), std::runtime_error);
}

TEST_CASE("indicator CSV sections") {
    const Mesh m = build_unit_square(2);
    const DofMap d(m, 2);
    auto [u, state] = solve_nitsche(
        m, d, [](Point2 p) { return p.x * std::cos(2.0 * std::numbers::pi * p.y); },
        quiet_config());
    const IndicatorSet ind = global_estimate(
        m, d, u, state, [](Point2 p) { return p.x * std::cos(2.0 * std::numbers::pi * p.y); });
    std::stringstream ss;
    write_indicators_csv(ss, m, ind);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "element,eta_K,osc_K,E_K");
    int element_rows = 0, edge_rows = 0;
    bool in_edges = false;
    while (std::getline(ss, line)) {
        if (line == "edge,class,indicator") {
            in_edges = true;
            continue;
        }
        (in_edges ? edge_rows : element_rows) += 1;
    }
    CHECK(element_rows == m.num_triangles());
    CHECK(edge_rows == static_cast<int>(m.boundary_edges().size()));
}

TEST_CASE("convergence SVG") {
    SUBCASE("well-formed XML with legend and guides") {
        std::vector<PlotSeries> series{{"uniform", power_series(-0.74, 5), ""},
                                       {"adaptive", power_series(-1.02, 5), ""}};
        std::stringstream ss;
        write_convergence_plot(ss, series);
        const std::string svg = ss.str();
        CHECK(xml_check(svg).empty());
        CHECK(svg.find("series-uniform") != std::string::npos);
        CHECK(svg.find("series-adaptive") != std::string::npos);
        CHECK(svg.find("guide-0") != std::string::npos);
        CHECK(svg.find("guide-1") != std::string::npos);
        CHECK(svg.find("slope") != std::string::npos);
    }
    SUBCASE("an exact 1/N series is colinear with the -1 guide") {
        std::vector<PlotSeries> series{{"uniform", power_series(-1.0, 6), ""}};
        std::stringstream ss;
        write_convergence_plot(ss, series);
        const std::string svg = ss.str();

        auto extract_attr = [&](const std::string& id, const std::string& attr) {
            const size_t at = svg.find("id=\"" + id + "\"");
            REQUIRE(at != std::string::npos);
            const size_t tag_end = svg.find('>', at);
            size_t start = svg.rfind('<', at);
            const std::string tag = svg.substr(start, tag_end - start);
            const size_t a = tag.find(attr + "=\"");
            REQUIRE(a != std::string::npos);
            const size_t v0 = a + attr.size() + 2;
            const size_t v1 = tag.find('"', v0);
            return tag.substr(v0, v1 - v0);
        };

        // pixel slope of the series points by least squares
        std::istringstream pts(extract_attr("series-uniform", "points"));
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        std::string pair;
        while (pts >> pair) {
            const size_t comma = pair.find(',');
            const double x = std::stod(pair.substr(0, comma));
            const double y = std::stod(pair.substr(comma + 1));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        REQUIRE(n == 6);
        const double series_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

        const double gx1 = std::stod(extract_attr("guide-1", "x1"));
        const double gy1 = std::stod(extract_attr("guide-1", "y1"));
        const double gx2 = std::stod(extract_attr("guide-1", "x2"));
        const double gy2 = std::stod(extract_attr("guide-1", "y2"));
        const double guide_slope = (gy2 - gy1) / (gx2 - gx1);
        CHECK(series_slope == doctest::Approx(guide_slope).epsilon(1e-5));
    }
    SUBCASE("byte determinism") {
        std::vector<PlotSeries> series{{"uniform", power_series(-0.8, 4), ""}};
        std::stringstream a, b;
        write_convergence_plot(a, series);
        write_convergence_plot(b, series);
        CHECK(a.str() == b.str());
    }
    SUBCASE("degenerate input is rejected") {
        std::vector<PlotSeries> one{{"u", power_series(-1.0, 1), ""}};
        std::stringstream ss;
        CHECK_THROWS_AS(write_convergence_plot(ss, one), std::invalid_argument);
        auto bad = power_series(-1.0, 3);
        bad[2].eta_plus_S = 0.0;
        std::vector<PlotSeries> zero{{"u", bad, ""}};
        CHECK_THROWS_AS(write_convergence_plot(ss, zero), std::invalid_argument);
    }
}

TEST_CASE("solution VTK dumps") {
    SUBCASE("zero solution round-trips") {
        const Mesh m = build_unit_square(3);
        const DofMap d(m, 2);
        DiscreteSolution u{std::vector<double>(d.num_dofs(), 0.0), 2, 0.1, 1};
        const ContactState state = compute_lambda(m, d, u.coefficients, 0.1);
        std::stringstream ss;
        write_solution_vtk(ss, m, d, u, state);
        const VtkData data = read_vtk(ss);
        // quadratic fields land on the once-refined shadow mesh
        CHECK(data.num_points == m.num_vertices() + m.num_edges());
        CHECK(data.num_cells == 4 * m.num_triangles());
        REQUIRE(data.point_data.count("u"));
        REQUIRE(data.point_data.count("lambda"));
        REQUIRE(data.cell_data.count("contact"));
        for (double v : data.point_data.at("u")) CHECK(v == 0.0);
        for (double v : data.cell_data.at("contact")) CHECK(v == 0.0);
    }
    SUBCASE("benchmark run: multiplier positive exactly on the flagged side") {
        const Mesh m = build_unit_square(8);
        const DofMap d(m, 2);
        auto [u, state] = solve_nitsche(
            m, d, [](Point2 p) { return p.x * std::cos(2.0 * std::numbers::pi * p.y); },
            quiet_config());
        std::stringstream ss;
        write_solution_vtk(ss, m, d, u, state);
        const std::string text = ss.str();
        std::stringstream in(text);
        const VtkData data = read_vtk(in);

        const Mesh shadow = refine_uniform(m);
        const auto& lambda = data.point_data.at("lambda");
        const auto& contact = data.cell_data.at("contact");
        int positive = 0, flagged = 0;
        for (int i = 0; i < data.num_points; ++i) {
            CHECK(lambda[i] >= 0.0);
            if (lambda[i] > 0.0) {
                ++positive;
                CHECK(shadow.vertex(i).x == doctest::Approx(1.0));
            }
        }
        for (int c = 0; c < data.num_cells; ++c) {
            if (contact[c] == 0.0) continue;
            ++flagged;
            bool touches = false;
            for (int v : shadow.triangles()[c].v)
                touches = touches || std::abs(shadow.vertex(v).x - 1.0) < 1e-12;
            CHECK(touches);
        }
        CHECK(positive > 0);
        CHECK(flagged > 0);

        // round trip: vertex count and scalar sums
        std::stringstream in2(text);
        const VtkData again = read_vtk(in2);
        double s1 = 0.0, s2 = 0.0;
        for (double v : data.point_data.at("u")) s1 += v;
        for (double v : again.point_data.at("u")) s2 += v;
        CHECK(again.num_points == data.num_points);
        CHECK(std::abs(s1 - s2) <= 1e-12);
        // byte determinism
        std::stringstream rewrite;
        write_solution_vtk(rewrite, m, d, u, state);
        CHECK(rewrite.str() == text);
    }
    SUBCASE("linear fields stay on the original mesh") {
        const Mesh m = build_unit_square(2);
        const DofMap d(m, 1);
        DiscreteSolution u{std::vector<double>(d.num_dofs(), 0.0), 1, 0.1, 1};
        const ContactState state = compute_lambda(m, d, u.coefficients, 0.1);
        std::stringstream ss;
        write_solution_vtk(ss, m, d, u, state);
        const VtkData data = read_vtk(ss);
        CHECK(data.num_points == m.num_vertices());
        CHECK(data.num_cells == m.num_triangles());
    }
}
