#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skelcut/calibration.hpp"
#include "skelcut/graph.hpp"
#include "skelcut/tree_partition.hpp"

namespace skelcut {

enum class SolvePath { baseline, small_budget, large_budget };

const char* to_string(SolvePath path);

/// An edge-removal solution: deleting cut_edges from the host graph leaves
/// the recorded classes as its connected components (class_of has one label
/// per vertex). lcc is the largest class; seed/seed_index identify the
/// winning trial.
struct CutSolution {
    EdgeSet cut_edges;
    std::vector<int> class_of;
    int k = 1;
    int lcc = 0;
    uint64_t seed = 0;
    int seed_index = -1;
    SolvePath path = SolvePath::baseline;
    bool feasible = true;
    std::optional<double> alpha;  // subgraph fraction, small-budget path only
};

struct SolveConfig {
    int budget = 0;
    int delta = 1;  // half-width of the k window on the large-budget path
    std::vector<uint64_t> seeds;
    const CalibrationModel* calibration = nullptr;
    std::optional<double> alpha_override;
    int workers = 1;  // 0 selects hardware concurrency
};

struct SolveResult {
    CutSolution solution;
    double t = 0.0;
    int f2 = 0;
    double runtime_ms = 0.0;
    int workers = 1;
};

/// All host edges whose endpoints lie in different classes. This is the
/// deletion set realizing a partition: tree cuts alone do not disconnect the
/// classes in the host graph.
EdgeSet crossing_edges(const Graph& g, std::span<const int> class_of);
EdgeSet crossing_edges(const Graph& g, const Partition& partition);

/// Host edges with exactly one endpoint inside the marked vertex set.
EdgeSet boundary_edges(const Graph& g, const std::vector<char>& inside);

/// Best-of-m-seeds k-way skeleton cut: per seed, sample a spanning tree,
/// split it into k balanced classes and take the crossing edges; the winner
/// has the smallest largest-class size, ties broken by fewer cut edges, then
/// by the lowest seed index. Deterministic for fixed seeds regardless of
/// worker count.
CutSolution solve_subproblem(const Graph& g, int k, std::span<const uint64_t> seeds,
                             int workers = 1);

/// The k = 2 reference cut used for dispatching and reporting.
CutSolution baseline_bisection(const Graph& g, std::span<const uint64_t> seeds,
                               int workers = 1);

/// Fitted subgraph fraction for a small budget, clamped to [2/|V|, 0.95].
double estimate_alpha(int cut, double t, int f2, int vertex_count,
                      const CalibrationModel& model);

/// Fitted center of the k window for a large budget, clamped to [2, |V|].
int estimate_k(int cut, int f2, double t, int vertex_count, const CalibrationModel& model);

/// Connected vertex set of the given size grown from a minimum-degree corner
/// (ties by coordinates when present, else by index) by repeatedly absorbing
/// the lowest-degree frontier vertex. Returned sorted ascending.
std::vector<int> grow_subgraph(const Graph& g, int n_s);

/// Induced subgraph over a sorted vertex set; to_host maps local ids back.
struct InducedSubgraph {
    Graph graph;
    std::vector<int> to_host;
};
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices);

/// Budget below the bisection cut size: bisect a grown subgraph of fitted
/// fractional size and detach the cheapest of its two classes or the whole
/// subgraph, shrinking the fraction by 0.8 (at most 10 retries) while no
/// boundary fits the budget. Returns the do-nothing solution when every
/// attempt fails or the budget is zero.
CutSolution solve_small_budget(const Graph& g, const SolveConfig& cfg,
                               const CutSolution& bisection);

/// Budget at or above the bisection cut size: try every k in a fitted
/// window, keep the feasible candidate with the smallest largest component,
/// ties by fewer cut edges, then smaller k, then lower seed index. The k = 2
/// bisection itself is always a feasible fallback.
CutSolution solve_large_budget(const Graph& g, const SolveConfig& cfg,
                               const CutSolution& bisection);

/// Full pipeline: bisection reference, dispatch on budget vs its cut size,
/// then the small- or large-budget path. The returned cut always respects
/// the budget.
SolveResult solve(const Graph& g, const SolveConfig& cfg);

/// Solution report as pretty-printed JSON. stable_output zeroes timing
/// fields so repeated runs are byte-identical.
std::string solution_to_json(const Graph& g, const SolveResult& result, int budget,
                             std::span<const uint64_t> seeds, bool stable_output);

}  // namespace skelcut
