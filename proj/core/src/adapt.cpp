#include "signorini/adapt.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace signorini {

Strategy strategy_from_string(std::string_view s) {
    if (s == "uniform") return Strategy::Uniform;
    if (s == "adaptive") return Strategy::Adaptive;
    throw std::invalid_argument("unknown strategy: " + std::string(s));
}

std::string_view to_string(Strategy s) {
    return s == Strategy::Uniform ? "uniform" : "adaptive";
}

std::vector<int> mark(const IndicatorSet& indicators, double theta) {
    const auto& ind = indicators.combined;
    if (ind.empty()) throw std::invalid_argument("mark: no elements");
    const double max_ind = *std::max_element(ind.begin(), ind.end());
    std::vector<int> marked;
    for (int k = 0; k < static_cast<int>(ind.size()); ++k)
        if (ind[k] >= theta * max_ind) marked.push_back(k);
    return marked;
}

std::vector<ConvergenceRecord> run_sequence(const RunConfig& cfg, const RecordSink& sink) {
    if (!(cfg.theta > 0.0 && cfg.theta <= 1.0))
        throw std::invalid_argument("run_sequence: theta must be in (0, 1]");

    std::vector<ConvergenceRecord> records;
    Mesh mesh = cfg.problem.mesh;
    NitscheConfig ncfg = cfg.nitsche;
    ncfg.volume_quad_degree = std::max(ncfg.volume_quad_degree, cfg.quad_degree);

    for (int step = 0;; ++step) {
        const auto t0 = std::chrono::steady_clock::now();
        const DofMap dofs(mesh, cfg.degree);
        std::pair<DiscreteSolution, ContactState> solved = [&] {
            try {
                return solve_nitsche(mesh, dofs, cfg.problem.load, ncfg);
            } catch (const SolveError& e) {
                throw SolveError("step " + std::to_string(step) + ": " + e.what());
            }
        }();
        const IndicatorSet indicators = global_estimate(mesh, dofs, solved.first, solved.second,
                                                        cfg.problem.load, cfg.quad_degree,
                                                        ncfg.edge_quad_degree);
        const auto t1 = std::chrono::steady_clock::now();

        ConvergenceRecord rec;
        rec.step = step;
        rec.num_dofs = dofs.num_free();
        rec.eta = indicators.eta;
        rec.S = indicators.S;
        rec.eta_plus_S = indicators.eta + indicators.S;
        rec.h_max = mesh_statistics(mesh).h_max;
        rec.active_points = solved.second.active_count();
        rec.walltime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (cfg.problem.exact_gradient)
            rec.exact_h1_error = exact_h1_error(mesh, dofs, solved.first.coefficients,
                                                cfg.problem.exact_gradient);
        records.push_back(rec);
        if (sink) sink(rec);

        if (rec.num_dofs >= cfg.max_dofs) break;

        if (cfg.strategy == Strategy::Uniform) {
            mesh = refine_uniform(mesh);
        } else {
            mesh = refine_marked(mesh, mark(indicators, cfg.theta));
        }
    }
    return records;
}

double fit_rate(std::span<const ConvergenceRecord> records, int tail) {
    if (tail < 2) throw std::invalid_argument("fit_rate: tail must be >= 2");
    if (static_cast<int>(records.size()) < tail)
        throw std::invalid_argument("fit_rate: fewer records than tail");
    const auto window = records.subspan(records.size() - tail);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const ConvergenceRecord& r : window) {
        if (!(r.eta_plus_S > 0.0) || r.num_dofs <= 0)
            throw std::invalid_argument("fit_rate: nonpositive data");
        const double x = std::log(static_cast<double>(r.num_dofs));
        const double y = std::log(r.eta_plus_S);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = tail;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace signorini
