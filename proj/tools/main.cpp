// Command-line front end: solve, adaptive runs, convergence studies, and
// inverse-constant estimation, with CSV/SVG/VTK/mesh outputs.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "signorini/adapt.hpp"
#include "signorini/csv.hpp"
#include "signorini/estimator.hpp"
#include "signorini/mesh_io.hpp"
#include "signorini/problems.hpp"
#include "signorini/solver.hpp"
#include "signorini/svg_plot.hpp"
#include "signorini/vtk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMeshFile = 3;
constexpr int kExitSolver = 4;
constexpr int kExitOutput = 5;

struct CommonOptions {
    std::string problem = "signorini-paper";
    std::string mesh_file;
    std::string load_expr;
    int initial_n = 4;
    int degree = 2;
    double alpha = 0.1;
    int quad_degree = signorini::kDefaultTriangleDegree;
    std::string output = ".";
    long seed = 0;  // reserved for future randomized features
    bool csv_only = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--problem", opt.problem,
                    "built-in problem: signorini-paper, manufactured-smooth, zero-load")
        ->capture_default_str();
    cmd->add_option("--mesh-file", opt.mesh_file, "external mesh in the text format");
    cmd->add_option("--load-expr", opt.load_expr,
                    "load expression over x, y for --mesh-file runs");
    cmd->add_option("--initial-n", opt.initial_n, "unit-square subdivision of built-ins")
        ->capture_default_str();
    cmd->add_option("--degree", opt.degree, "polynomial degree")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    cmd->add_option("--alpha", opt.alpha, "stabilisation parameter")->capture_default_str();
    cmd->add_option("--quad-degree", opt.quad_degree, "volume quadrature degree")
        ->capture_default_str();
    cmd->add_option("--output", opt.output, "output directory")->capture_default_str();
    cmd->add_option("--seed", opt.seed, "reserved");
    cmd->add_flag("--csv-only", opt.csv_only, "skip SVG and VTK outputs");
}

signorini::Problem load_problem(const CommonOptions& opt) {
    signorini::ProblemSpec spec;
    spec.name = opt.problem;
    spec.mesh_file = opt.mesh_file;
    spec.load_expr = opt.load_expr;
    spec.initial_n = opt.initial_n;
    signorini::Problem problem = signorini::make_problem(spec);
    if (signorini::contact_side_count(problem.mesh) > 1) {
        std::cerr << "signorini: warning: contact edges span more than one side of the "
                     "polygon; the method's assumptions cover a single side\n";
    }
    return problem;
}

std::filesystem::path prepare_output(const CommonOptions& opt) {
    std::filesystem::path dir(opt.output);
    std::filesystem::create_directories(dir);
    return dir;
}

signorini::NitscheConfig nitsche_config(const CommonOptions& opt) {
    signorini::NitscheConfig cfg;
    cfg.alpha = opt.alpha;
    cfg.volume_quad_degree = opt.quad_degree;
    return cfg;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::filesystem::filesystem_error("cannot write", path, {});
    return out;
}

int run_solve(const CommonOptions& opt) {
    const signorini::Problem problem = load_problem(opt);
    const auto dir = prepare_output(opt);
    const signorini::DofMap dofs(problem.mesh, opt.degree);
    auto [u, state] = signorini::solve_nitsche(problem.mesh, dofs, problem.load,
                                               nitsche_config(opt));
    const signorini::IndicatorSet ind =
        signorini::global_estimate(problem.mesh, dofs, u, state, problem.load, opt.quad_degree);

    {
        auto out = open_output(dir / "indicators.csv");
        signorini::write_indicators_csv(out, problem.mesh, ind);
    }
    if (!opt.csv_only)
        signorini::write_solution_vtk_file((dir / "solution.vtk").string(), problem.mesh, dofs,
                                           u, state);

    std::printf("problem        %s\n", problem.name.c_str());
    std::printf("N              %d\n", dofs.num_free());
    std::printf("iterations     %d\n", u.iterations);
    std::printf("active points  %d / %d\n", state.active_count(),
                static_cast<int>(state.points.size()));
    std::printf("eta            %.12g\n", ind.eta);
    std::printf("S              %.12g\n", ind.S);
    if (problem.exact_gradient) {
        const double err = signorini::exact_h1_error(problem.mesh, dofs, u.coefficients,
                                                     problem.exact_gradient);
        std::printf("exact H1 error %.12g\n", err);
        if (err > 0.0) std::printf("effectivity    %.6g\n", ind.eta / err);
    }
    return kExitOk;
}

int run_adapt(const CommonOptions& opt, int steps, double theta) {
    const signorini::Problem problem = load_problem(opt);
    const auto dir = prepare_output(opt);
    const signorini::NitscheConfig cfg = nitsche_config(opt);

    auto records_out = open_output(dir / "records.csv");
    signorini::write_record_csv_header(records_out);

    signorini::Mesh mesh = problem.mesh;
    char name[64];
    for (int step = 0;; ++step) {
        std::snprintf(name, sizeof name, "mesh_%02d.txt", step);
        signorini::write_mesh_file((dir / name).string(), mesh);

        const auto t0 = std::chrono::steady_clock::now();
        const signorini::DofMap dofs(mesh, opt.degree);
        auto [u, state] = signorini::solve_nitsche(mesh, dofs, problem.load, cfg);
        const signorini::IndicatorSet ind =
            signorini::global_estimate(mesh, dofs, u, state, problem.load, opt.quad_degree);
        const auto t1 = std::chrono::steady_clock::now();

        signorini::ConvergenceRecord rec;
        rec.step = step;
        rec.num_dofs = dofs.num_free();
        rec.eta = ind.eta;
        rec.S = ind.S;
        rec.eta_plus_S = ind.eta + ind.S;
        rec.h_max = signorini::mesh_statistics(mesh).h_max;
        rec.active_points = state.active_count();
        rec.walltime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (problem.exact_gradient)
            rec.exact_h1_error =
                signorini::exact_h1_error(mesh, dofs, u.coefficients, problem.exact_gradient);
        append_record_csv(records_out, rec);
        records_out.flush();
        std::printf("step %2d  N %7d  eta %.6g  S %.6g  active %d\n", step, rec.num_dofs,
                    rec.eta, rec.S, rec.active_points);

        if (step == steps) {
            if (!opt.csv_only)
                signorini::write_solution_vtk_file((dir / "solution.vtk").string(), mesh, dofs,
                                                   u, state);
            break;
        }
        mesh = signorini::refine_marked(mesh, signorini::mark(ind, theta));
    }
    return kExitOk;
}

int run_convergence(const CommonOptions& opt, const std::string& strategy, double theta,
                    int max_dofs) {
    const signorini::Problem problem = load_problem(opt);
    const auto dir = prepare_output(opt);

    std::vector<std::string> wanted;
    if (strategy == "both") {
        wanted = {"uniform", "adaptive"};
    } else {
        wanted = {strategy};
    }

    std::vector<signorini::PlotSeries> series;
    for (const std::string& name : wanted) {
        signorini::RunConfig cfg{signorini::strategy_from_string(name),
                                 theta,
                                 max_dofs,
                                 opt.degree,
                                 nitsche_config(opt),
                                 problem,
                                 opt.quad_degree};
        auto csv = open_output(dir / ("convergence_" + name + ".csv"));
        signorini::write_record_csv_header(csv);
        const auto records = signorini::run_sequence(cfg, [&](const auto& rec) {
            append_record_csv(csv, rec);
            csv.flush();
        });
        const double slope = signorini::fit_rate(
            records, std::min<int>(4, static_cast<int>(records.size())));
        std::printf("%s: %zu steps, final N %d, eta+S %.6g, fitted slope %.3f\n", name.c_str(),
                    records.size(), records.back().num_dofs, records.back().eta_plus_S, slope);
        series.push_back({name, records, ""});
    }

    if (!opt.csv_only) {
        auto svg = open_output(dir / "convergence.svg");
        signorini::write_convergence_plot(svg, series);
    }
    return kExitOk;
}

int run_estimate_ci(const CommonOptions& opt, int levels) {
    const signorini::Problem problem = load_problem(opt);
    signorini::Mesh mesh = problem.mesh;
    std::printf("level  N        C_I estimate\n");
    double last = 0.0;
    for (int level = 0; level < levels; ++level) {
        const signorini::DofMap dofs(mesh, opt.degree);
        last = signorini::estimate_inverse_constant(mesh, dofs);
        std::printf("%-6d %-8d %.8f\n", level, dofs.num_free(), last);
        if (level + 1 < levels) mesh = signorini::refine_uniform(mesh);
    }
    if (opt.alpha < last)
        std::printf("alpha = %g is below the estimate\n", opt.alpha);
    else
        std::printf("warning: alpha = %g is NOT below the estimate %g\n", opt.alpha, last);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-element solver for the Poisson problem with a unilateral contact "
                 "boundary, with residual error estimation and adaptive refinement"};
    app.require_subcommand(1);

    CommonOptions opt;
    int steps = 8;
    double theta = 0.5;
    int max_dofs = 100000;
    std::string strategy = "both";
    int levels = 3;

    CLI::App* solve = app.add_subcommand("solve", "solve on the initial mesh and dump results");
    add_common(solve, opt);

    CLI::App* adapt = app.add_subcommand("adapt", "run adaptive refinement steps");
    add_common(adapt, opt);
    adapt->add_option("--steps", steps, "number of refinement steps")->capture_default_str();
    adapt->add_option("--theta", theta, "marking fraction")->capture_default_str();

    CLI::App* conv = app.add_subcommand("convergence", "uniform/adaptive convergence study");
    add_common(conv, opt);
    conv->add_option("--strategy", strategy, "uniform, adaptive, or both")
        ->check(CLI::IsMember({"uniform", "adaptive", "both"}))
        ->capture_default_str();
    conv->add_option("--theta", theta, "marking fraction")->capture_default_str();
    conv->add_option("--max-dofs", max_dofs, "dof budget")->capture_default_str();

    CLI::App* ci = app.add_subcommand("estimate-ci", "estimate the inverse constant");
    add_common(ci, opt);
    ci->add_option("--levels", levels, "uniform refinement levels")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (solve->parsed()) return run_solve(opt);
        if (adapt->parsed()) return run_adapt(opt, steps, theta);
        if (conv->parsed()) return run_convergence(opt, strategy, theta, max_dofs);
        if (ci->parsed()) return run_estimate_ci(opt, levels);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "signorini: output error: " << e.what() << "\n";
        return kExitOutput;
    } catch (const signorini::SolveError& e) {
        std::cerr << "signorini: solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::runtime_error& e) {
        // mesh-file and expression problems surface as runtime errors
        std::cerr << "signorini: " << e.what() << "\n";
        return kExitMeshFile;
    } catch (const std::invalid_argument& e) {
        std::cerr << "signorini: invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
