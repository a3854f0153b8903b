#include "skelcut/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "skelcut/parallel.hpp"
#include "skelcut/planar_gen.hpp"
#include "skelcut/ust.hpp"

namespace skelcut {

const char* to_string(SolvePath path) {
    switch (path) {
        case SolvePath::baseline: return "baseline";
        case SolvePath::small_budget: return "small_budget";
        case SolvePath::large_budget: return "large_budget";
    }
    return "unknown";
}

EdgeSet crossing_edges(const Graph& g, std::span<const int> class_of) {
    if (static_cast<int>(class_of.size()) != g.vertex_count())
        throw std::invalid_argument("crossing_edges: labeling must cover every vertex");
    std::vector<int> ids;
    const auto& edges = g.edges();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (class_of[edges[i].first] != class_of[edges[i].second]) ids.push_back(i);
    return EdgeSet(std::move(ids));
}

EdgeSet crossing_edges(const Graph& g, const Partition& partition) {
    return crossing_edges(g, std::span<const int>(partition.class_of));
}

EdgeSet boundary_edges(const Graph& g, const std::vector<char>& inside) {
    if (static_cast<int>(inside.size()) != g.vertex_count())
        throw std::invalid_argument("boundary_edges: mark must cover every vertex");
    std::vector<int> ids;
    const auto& edges = g.edges();
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (inside[edges[i].first] != inside[edges[i].second]) ids.push_back(i);
    return EdgeSet(std::move(ids));
}

namespace {

struct TrialStats {
    int lcc = 0;
    int cut_count = 0;
};

// One sample-cut-evaluate trial. The largest class size equals the largest
// component of g minus the crossing edges (classes are tree-connected and no
// edge joins two classes once the crossing set is removed), so no component
// pass is needed here.
TrialStats run_trial(const Graph& g, int k, uint64_t seed) {
    const SpanningTree tree = sample_ust(g, seed);
    const Partition part = balanced_partition(tree, k);
    TrialStats st;
    st.lcc = *std::max_element(part.class_sizes.begin(), part.class_sizes.end());
    const auto& edges = g.edges();
    for (const auto& [u, v] : edges)
        if (part.class_of[u] != part.class_of[v]) ++st.cut_count;
    return st;
}

// Flattened (k, seed) grid evaluated by a worker pool; slot (ki, si) lands
// at index ki * |seeds| + si, so results do not depend on scheduling.
std::vector<TrialStats> run_trial_grid(const Graph& g, std::span<const int> ks,
                                       std::span<const uint64_t> seeds, int workers) {
    const int m = static_cast<int>(seeds.size());
    std::vector<TrialStats> grid(ks.size() * seeds.size());
    parallel_for(static_cast<int>(grid.size()), workers, [&](int idx) {
        const int ki = idx / m;
        const int si = idx % m;
        grid[idx] = run_trial(g, ks[ki], seeds[si]);
    });
    return grid;
}

// Index of the winning seed among one k's trials: smallest largest class,
// then fewest cut edges, then lowest seed index.
int select_winner(std::span<const TrialStats> trials) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(trials.size()); ++i) {
        const auto& a = trials[i];
        const auto& b = trials[best];
        if (a.lcc < b.lcc || (a.lcc == b.lcc && a.cut_count < b.cut_count)) best = i;
    }
    return best;
}

// Rebuilds the winning trial in full and checks the recorded largest class
// against an actual component pass over g minus the cut.
CutSolution materialize_trial(const Graph& g, int k, std::span<const uint64_t> seeds,
                              int seed_index) {
    const SpanningTree tree = sample_ust(g, seeds[seed_index]);
    const Partition part = balanced_partition(tree, k);
    CutSolution sol;
    sol.cut_edges = crossing_edges(g, part);
    sol.class_of = part.class_of;
    sol.k = k;
    sol.lcc = components(g, sol.cut_edges).lcc;
    sol.seed = seeds[seed_index];
    sol.seed_index = seed_index;
    sol.path = SolvePath::baseline;
    sol.feasible = true;
    const int max_class = *std::max_element(part.class_sizes.begin(), part.class_sizes.end());
    if (sol.lcc != max_class)
        throw std::logic_error("solve_subproblem: partition classes disagree with components");
    return sol;
}

CutSolution do_nothing_solution(const Graph& g, SolvePath path) {
    CutSolution sol;
    sol.class_of.assign(g.vertex_count(), 0);
    sol.k = 1;
    sol.lcc = g.vertex_count();
    sol.path = path;
    sol.feasible = true;
    return sol;
}

void check_common(const Graph& g, const SolveConfig& cfg) {
    if (cfg.budget < 0) throw std::invalid_argument("solve: budget must be non-negative");
    if (cfg.budget > g.edge_count())
        throw std::invalid_argument("solve: budget exceeds the number of edges");
    if (cfg.seeds.empty()) throw std::invalid_argument("solve: need at least one seed");
    if (cfg.delta < 0) throw std::invalid_argument("solve: delta must be non-negative");
    if (cfg.alpha_override && (*cfg.alpha_override <= 0.0 || *cfg.alpha_override >= 1.0))
        throw std::invalid_argument("solve: alpha override must lie in (0, 1)");
}

}  // namespace

CutSolution solve_subproblem(const Graph& g, int k, std::span<const uint64_t> seeds,
                             int workers) {
    if (k < 1 || k > g.vertex_count())
        throw std::invalid_argument("solve_subproblem: k must be in [1, |V|]");
    if (seeds.empty()) throw std::invalid_argument("solve_subproblem: need at least one seed");
    const int ks[1] = {k};
    const auto grid = run_trial_grid(g, ks, seeds, workers);
    return materialize_trial(g, k, seeds, select_winner(grid));
}

CutSolution baseline_bisection(const Graph& g, std::span<const uint64_t> seeds, int workers) {
    if (g.vertex_count() < 2)
        throw std::invalid_argument("baseline_bisection: need at least 2 vertices");
    return solve_subproblem(g, 2, seeds, workers);
}

double estimate_alpha(int cut, double t, int f2, int vertex_count,
                      const CalibrationModel& model) {
    if (cut < 1) throw std::invalid_argument("estimate_alpha: cut must be >= 1");
    if (f2 < 1) throw std::invalid_argument("estimate_alpha: f2 must be >= 1");
    if (vertex_count < 2) throw std::invalid_argument("estimate_alpha: need >= 2 vertices");
    if (t <= 0.0) throw std::invalid_argument("estimate_alpha: t must be positive");
    model.require_covers(t);
    const double raw = model.b0 * std::pow(t, -model.gamma) *
                       std::pow(static_cast<double>(cut), model.beta1) *
                       std::pow(static_cast<double>(f2), -model.beta2);
    const double lo = 2.0 / vertex_count;
    return std::clamp(raw, lo, 0.95);
}

int estimate_k(int cut, int f2, double t, int vertex_count, const CalibrationModel& model) {
    if (f2 < 1) throw std::invalid_argument("estimate_k: f2 must be >= 1");
    if (cut < f2) throw std::invalid_argument("estimate_k: cut must be >= f2");
    if (t <= 0.0) throw std::invalid_argument("estimate_k: t must be positive");
    model.require_covers(t);
    const double s = model.c0 * std::log(t) + model.c1;
    if (s <= 0.0)
        throw std::domain_error(
            "estimate_k: fitted slope s(t) is not positive at t = " + std::to_string(t) +
            "; the calibration does not cover this density");
    const double center = 2.0 + static_cast<double>(cut - f2) / s;
    long long k = std::llround(center);
    k = std::max<long long>(2, k);
    k = std::min<long long>(k, vertex_count);
    return static_cast<int>(k);
}

std::vector<int> grow_subgraph(const Graph& g, int n_s) {
    const int n = g.vertex_count();
    if (n_s < 1 || n_s > n) throw std::invalid_argument("grow_subgraph: size must be in [1, |V|]");

    // Corner: minimum degree, ties by (x, y) when coordinates exist, else by
    // the smaller vertex id.
    int corner = 0;
    for (int v = 1; v < n; ++v) {
        if (g.degree(v) != g.degree(corner)) {
            if (g.degree(v) < g.degree(corner)) corner = v;
            continue;
        }
        if (g.has_coords()) {
            const auto& a = g.coords()[v];
            const auto& b = g.coords()[corner];
            if (a.x < b.x || (a.x == b.x && a.y < b.y)) corner = v;
        }
    }

    // Absorb the lowest-degree frontier vertex first; ties to the smaller id.
    using Entry = std::pair<int, int>;  // (degree, vertex)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> frontier;
    std::vector<char> in_set(n, 0), seen(n, 0);
    std::vector<int> out;
    out.reserve(n_s);
    in_set[corner] = seen[corner] = 1;
    out.push_back(corner);
    auto offer = [&](int v) {
        if (!seen[v]) {
            seen[v] = 1;
            frontier.push({g.degree(v), v});
        }
    };
    for (auto [to, eid] : g.neighbors(corner)) offer(to);
    while (static_cast<int>(out.size()) < n_s) {
        if (frontier.empty())
            throw std::invalid_argument("grow_subgraph: graph is not connected");
        const auto [deg, v] = frontier.top();
        frontier.pop();
        in_set[v] = 1;
        out.push_back(v);
        for (auto [to, eid] : g.neighbors(v)) offer(to);
    }
    std::sort(out.begin(), out.end());
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> vertices) {
    InducedSubgraph out;
    out.to_host.assign(vertices.begin(), vertices.end());
    std::vector<int> local(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(out.to_host.size()); ++i) {
        const int v = out.to_host[i];
        if (v < 0 || v >= g.vertex_count())
            throw std::invalid_argument("induced_subgraph: vertex out of range");
        if (local[v] != -1) throw std::invalid_argument("induced_subgraph: repeated vertex");
        local[v] = i;
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : g.edges())
        if (local[u] != -1 && local[v] != -1) edges.push_back({local[u], local[v]});
    std::vector<Coord> coords;
    if (g.has_coords()) {
        coords.reserve(out.to_host.size());
        for (int v : out.to_host) coords.push_back(g.coords()[v]);
    }
    out.graph = Graph(static_cast<int>(out.to_host.size()), std::move(edges), std::move(coords));
    return out;
}

CutSolution solve_small_budget(const Graph& g, const SolveConfig& cfg,
                               const CutSolution& bisection) {
    check_common(g, cfg);
    const int n = g.vertex_count();
    const int f2 = bisection.cut_edges.size();
    if (cfg.budget >= f2)
        throw std::invalid_argument("solve_small_budget: budget must be below the bisection cut");
    if (cfg.budget == 0) return do_nothing_solution(g, SolvePath::small_budget);

    double alpha;
    if (cfg.alpha_override) {
        alpha = *cfg.alpha_override;
    } else if (cfg.calibration) {
        alpha = estimate_alpha(cfg.budget, density_feature(g), f2, n, *cfg.calibration);
    } else {
        throw std::runtime_error(
            "solve_small_budget: no calibration model; run `skelcut calibrate` or pass an "
            "explicit alpha");
    }

    for (int attempt = 0; attempt <= 10; ++attempt) {
        const int n_s = std::clamp(static_cast<int>(std::floor(alpha * n)), 2, n);
        const auto grown = grow_subgraph(g, n_s);
        const auto sub = induced_subgraph(g, grown);
        const CutSolution split = solve_subproblem(sub.graph, 2, cfg.seeds, cfg.workers);

        // Detachment candidates: each bisection class mapped back to the
        // host, plus the grown subgraph as a whole.
        std::vector<std::vector<char>> marks(3, std::vector<char>(n, 0));
        for (int i = 0; i < sub.graph.vertex_count(); ++i) {
            marks[split.class_of[i] == 0 ? 0 : 1][sub.to_host[i]] = 1;
            marks[2][sub.to_host[i]] = 1;
        }
        bool found = false;
        int best_lcc = 0;
        EdgeSet best_cut;
        std::vector<char> best_mark;
        for (const auto& mark : marks) {
            EdgeSet cut = boundary_edges(g, mark);
            if (cut.size() > cfg.budget || cut.empty()) continue;
            const int lcc = components(g, cut).lcc;
            if (!found || lcc < best_lcc ||
                (lcc == best_lcc && cut.size() < best_cut.size())) {
                found = true;
                best_lcc = lcc;
                best_cut = std::move(cut);
                best_mark = mark;
            }
        }
        if (found) {
            CutSolution sol;
            sol.cut_edges = std::move(best_cut);
            sol.class_of.assign(n, 1);
            for (int v = 0; v < n; ++v)
                if (best_mark[v]) sol.class_of[v] = 0;
            sol.k = 2;
            sol.lcc = best_lcc;
            sol.seed = split.seed;
            sol.seed_index = split.seed_index;
            sol.path = SolvePath::small_budget;
            sol.feasible = true;
            sol.alpha = alpha;
            return sol;
        }
        alpha *= 0.8;
    }
    return do_nothing_solution(g, SolvePath::small_budget);
}

CutSolution solve_large_budget(const Graph& g, const SolveConfig& cfg,
                               const CutSolution& bisection) {
    check_common(g, cfg);
    const int n = g.vertex_count();
    const int f2 = bisection.cut_edges.size();
    if (cfg.budget < f2)
        throw std::invalid_argument(
            "solve_large_budget: budget must cover the bisection cut");
    if (!cfg.calibration)
        throw std::runtime_error(
            "solve_large_budget: no calibration model; run `skelcut calibrate` first");

    const int center =
        estimate_k(cfg.budget, f2, density_feature(g), n, *cfg.calibration);
    std::vector<int> ks;
    for (int k = center - cfg.delta; k <= center + cfg.delta; ++k)
        if (k > 2 && k <= n) ks.push_back(k);  // k = 2 is covered by the bisection

    struct Candidate {
        int lcc;
        int cut_count;
        int k;
        int seed_index;
    };
    // The bisection is always feasible here (budget >= f2), so the window
    // never comes back empty-handed.
    Candidate best{bisection.lcc, f2, 2, bisection.seed_index};
    const auto grid = run_trial_grid(g, ks, cfg.seeds, cfg.workers);
    const int m = static_cast<int>(cfg.seeds.size());
    for (int ki = 0; ki < static_cast<int>(ks.size()); ++ki) {
        const std::span<const TrialStats> trials(grid.data() + ki * m, m);
        const int si = select_winner(trials);
        const Candidate cand{trials[si].lcc, trials[si].cut_count, ks[ki], si};
        if (cand.cut_count > cfg.budget) continue;
        const auto key = [](const Candidate& c) {
            return std::make_tuple(c.lcc, c.cut_count, c.k, c.seed_index);
        };
        if (key(cand) < key(best)) best = cand;
    }

    CutSolution sol = best.k == 2 && best.seed_index == bisection.seed_index
                          ? bisection
                          : materialize_trial(g, best.k, cfg.seeds, best.seed_index);
    sol.path = SolvePath::large_budget;
    sol.feasible = sol.cut_edges.size() <= cfg.budget;
    return sol;
}

SolveResult solve(const Graph& g, const SolveConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    check_common(g, cfg);
    if (!is_connected(g)) throw std::invalid_argument("solve: graph must be connected");

    SolveResult res;
    res.workers = effective_workers(cfg.workers);
    if (g.vertex_count() < 2) {
        // A single vertex has nothing to cut; only budget 0 reaches here.
        res.solution = do_nothing_solution(g, SolvePath::small_budget);
        res.runtime_ms = 0.0;
        return res;
    }
    res.t = density_feature(g);
    const CutSolution bisection = baseline_bisection(g, cfg.seeds, cfg.workers);
    res.f2 = bisection.cut_edges.size();
    res.solution = cfg.budget < res.f2 ? solve_small_budget(g, cfg, bisection)
                                       : solve_large_budget(g, cfg, bisection);
    if (res.solution.cut_edges.size() > cfg.budget)
        throw std::logic_error("solve: produced a cut above the budget");
    const auto stop = std::chrono::steady_clock::now();
    res.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return res;
}

}  // namespace skelcut
