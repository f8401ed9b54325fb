#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "signorini/estimator.hpp"
#include "signorini/problems.hpp"

namespace signorini {

/// One refinement step of a convergence run.
struct ConvergenceRecord {
    int step = 0;
    int num_dofs = 0;  // free dofs N
    double eta = 0.0;
    double S = 0.0;
    double eta_plus_S = 0.0;
    double h_max = 0.0;
    int active_points = 0;
    double walltime_ms = 0.0;
    std::optional<double> exact_h1_error;
};

enum class Strategy { Uniform, Adaptive };

Strategy strategy_from_string(std::string_view s);
std::string_view to_string(Strategy s);

struct RunConfig {
    Strategy strategy = Strategy::Adaptive;
    double theta = 0.5;     // marking fraction in (0, 1]
    int max_dofs = 100000;  // stop after the first record with N >= max_dofs
    int degree = 2;
    NitscheConfig nitsche;
    Problem problem;
    int quad_degree = kDefaultTriangleDegree;
};

/// Maximum marking: all elements whose indicator reaches theta times the
/// largest one. Never empty.
std::vector<int> mark(const IndicatorSet& indicators, double theta);

/// Hook receiving each record as soon as it is computed, e.g. for
/// incremental CSV output.
using RecordSink = std::function<void(const ConvergenceRecord&)>;

/// Solve/estimate/record/refine until the dof budget is met. Uniform runs
/// refine every element, adaptive runs the marked set. Deterministic for a
/// fixed config (wall times aside).
std::vector<ConvergenceRecord> run_sequence(const RunConfig& cfg, const RecordSink& sink = {});

/// Least-squares slope of log(eta+S) against log(N) over the last `tail`
/// records.
double fit_rate(std::span<const ConvergenceRecord> records, int tail = 4);

}  // namespace signorini
