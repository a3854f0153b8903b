#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skelcut/planar_gen.hpp"
#include "skelcut/solver.hpp"

namespace skelcut {

/// One row of a metrics table. lcc is a real because the random baseline
/// reports a mean over trials; solver rows carry an exact integer value.
struct MetricsRow {
    std::string graph_id;
    int vertex_count = 0;
    int edge_count = 0;
    double t = 0.0;
    std::string method;
    int budget = 0;
    double cut_ratio = 0.0;  // budget / |E|
    int cut_used = 0;
    double lcc = 0.0;
    double lcc_ratio = 0.0;
    std::optional<double> eta;
    double runtime_ms = 0.0;
    int seed_count = 0;
    int lcc_best = 0;  // best trial (random baseline); not serialized
};

/// Per-edge efficiency eta = (|V| - lcc(G minus f)) / |f|.
double per_edge_efficiency(const Graph& g, const EdgeSet& f);

/// Removes `budget` uniformly random edges per trial and reports the mean
/// (and best) largest-component size over trials.
MetricsRow random_baseline(const Graph& g, int budget, int trials, uint64_t seed);

struct BudgetSweepOptions {
    bool with_random = false;
    int random_trials = 20;
    uint64_t random_seed = 0;
};

/// Runs solve at budget = floor(frac * |E|) for each fraction, emitting one
/// solver row (and optionally one random-baseline row) per fraction, in the
/// given order.
std::vector<MetricsRow> budget_sweep(const Graph& g, const std::string& graph_id,
                                     std::span<const double> fractions, const SolveConfig& cfg,
                                     const BudgetSweepOptions& opts = {});

std::string write_metrics_csv(const std::vector<MetricsRow>& rows);

/// Layout export for external plotting: one `vertex,x,y,class` row per
/// vertex. Graphs without coordinates get x = y = 0.
std::string write_layout_csv(const Graph& g, std::span<const int> class_of);

struct ScalingRow {
    int vertex_count = 0;
    int edge_count = 0;
    double median_ms = 0.0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::optional<double> slope;  // of log time vs log |E|; needs >= 2 sizes
};

/// Generates each spec, times solve_subproblem at fixed k and seeds (median
/// of 3 runs, generation excluded), and fits the log-log slope.
ScalingResult runtime_scaling(std::span<const GenSpec> specs, int k,
                              std::span<const uint64_t> seeds, int workers = 1);

struct SpeedupReport {
    int workers = 1;
    double median_ms = 0.0;
    double speedup = 1.0;     // T_1 / T_p
    double efficiency = 1.0;  // speedup / p
};

/// Times the same (k x seed) grid of subproblems at each worker count and
/// checks that every count produces identical winners. p_values must
/// include 1 (the speedup reference).
std::vector<SpeedupReport> speedup_report(const Graph& g, std::span<const int> ks,
                                          std::span<const uint64_t> seeds,
                                          std::span<const int> p_values);

std::string write_speedup_csv(const std::vector<SpeedupReport>& rows);

}  // namespace skelcut
