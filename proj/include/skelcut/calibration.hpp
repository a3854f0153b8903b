#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skelcut/graph.hpp"

namespace skelcut {

/// Empirical coefficients fitted from a corpus of graphs: s(t) = c0 ln t + c1
/// predicts the per-class growth of the cut size in k, and
/// alpha(cut, t, f2) = B0 t^-gamma cut^beta1 f2^-beta2 predicts the subgraph
/// fraction for small budgets. Valid only near the fitted density range.
struct CalibrationModel {
    double c0 = 0.0;
    double c1 = 0.0;
    double b0 = 0.0;
    double gamma = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double t_min = 0.0;
    double t_max = 0.0;
    double r2_slope = 0.0;
    double r2_alpha = 0.0;
    std::string corpus;

    /// True when t lies within the fitted range with 5% multiplicative slack.
    bool covers(double t) const { return t >= t_min * 0.95 && t <= t_max * 1.05; }
    /// Throws std::domain_error when covers(t) is false; the model refuses
    /// to extrapolate beyond the corpus it was fitted on.
    void require_covers(double t) const;
};

std::string save_calibration(const CalibrationModel& model);
CalibrationModel load_calibration(const std::string& json_text);
CalibrationModel read_calibration_file(const std::string& path);

/// Aggregated multi-seed statistics of the k-way tree-cut subproblem on one
/// graph: selected best plus mean/std of the cut size and largest class.
struct SweepRecord {
    std::string graph_id;
    int vertex_count = 0;
    int edge_count = 0;
    double t = 0.0;
    int k = 0;
    int f_selected = 0;
    int lcc_selected = 0;
    double f_mean = 0.0;
    double f_std = 0.0;
    double lcc_mean = 0.0;
    double lcc_std = 0.0;
    int seed_count = 0;
};

/// Runs the k-way subproblem for every k in [k_min, k_max] over the given
/// seeds and aggregates per-k statistics.
std::vector<SweepRecord> sweep_k(const Graph& g, const std::string& graph_id, int k_min,
                                 int k_max, std::span<const uint64_t> seeds, int workers = 1);

std::string write_sweep_csv(const std::vector<SweepRecord>& records);

struct SlopeFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double r2 = 0.0;
};

/// Two-stage fit of s(t). Stage 1 estimates a per-graph slope of mean cut
/// size in k through the k=2 anchor; stage 2 regresses those slopes on ln t.
/// Needs a k=2 record and at least 3 distinct k per graph, and at least two
/// distinct densities across graphs.
SlopeFit fit_slope(const std::vector<SweepRecord>& records);

/// One small-budget training point: the oracle-selected best subgraph
/// fraction alpha_star for a (graph, cut budget) pair.
struct AlphaRecord {
    int cut = 0;
    double t = 0.0;
    int f2 = 0;
    double alpha_star = 0.0;
};

struct AlphaFit {
    double b0 = 0.0;
    double gamma = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double r2 = 0.0;
};

/// Log-linear least squares over ln alpha* = ln B0 - gamma ln t
/// + beta1 ln cut - beta2 ln f2. Needs >= 8 records and a non-degenerate
/// design (each regressor must actually vary).
AlphaFit fit_alpha(const std::vector<AlphaRecord>& records);

/// Builds alpha training records for one graph by sweeping subgraph sizes
/// n_s in {2, 4, ...} and keeping, for each cut budget, the fraction whose
/// best detachment minimizes the residual largest component. Budgets that
/// no detachment can satisfy with an improvement produce no record.
std::vector<AlphaRecord> build_alpha_records(const Graph& g, std::span<const int> cuts,
                                             std::span<const uint64_t> seeds, int workers = 1);

/// Full pipeline over a corpus: per-graph k sweeps feed the slope fit, and
/// per-graph budget probes feed the alpha fit. Optionally returns the sweep
/// records through `sweeps_out`.
CalibrationModel calibrate_corpus(std::span<const Graph> graphs,
                                  std::span<const std::string> ids, int k_min, int k_max,
                                  std::span<const uint64_t> seeds, int workers = 1,
                                  std::vector<SweepRecord>* sweeps_out = nullptr);

}  // namespace skelcut
