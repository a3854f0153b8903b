#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "skelcut/planar_gen.hpp"
#include "skelcut/rng.hpp"
#include "skelcut/solver.hpp"

using namespace skelcut;

namespace {

std::vector<uint64_t> seeds_of(uint64_t master, int count) {
    std::vector<uint64_t> out(count);
    for (int i = 0; i < count; ++i) out[i] = derive_seed(master, i);
    return out;
}

// Calibration stub with a constant slope s(t) = s and a constant fitted
// fraction alpha = a, covering every density the tests produce.
CalibrationModel flat_model(double s = 2.0, double a = 0.5) {
    CalibrationModel m;
    m.c0 = 0.0;
    m.c1 = s;
    m.b0 = a;
    m.gamma = 0.0;
    m.beta1 = 0.0;
    m.beta2 = 0.0;
    m.t_min = 0.5;
    m.t_max = 2.5;
    m.corpus = "synthetic";
    return m;
}

Graph six_cycle() {
    return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}});
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

// r x c grid lattice, vertex (i, j) -> i*c + j, row-major edges.
Graph grid_graph(int r, int c) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (j + 1 < c) edges.push_back({i * c + j, i * c + j + 1});
            if (i + 1 < r) edges.push_back({i * c + j, (i + 1) * c + j});
        }
    return Graph(r * c, std::move(edges));
}

}  // namespace

TEST_CASE("crossing edges of a 4-cycle split into opposite pairs") {
    const Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    const std::vector<int> classes{0, 0, 1, 1};
    const EdgeSet f = crossing_edges(c4, std::span<const int>(classes));
    CHECK(f.ids == std::vector<int>{1, 3});
}

TEST_CASE("one class means no crossing edges; a singleton takes its star") {
    const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
    const std::vector<int> one{0, 0, 0};
    CHECK(crossing_edges(k3, std::span<const int>(one)).empty());
    const std::vector<int> split{0, 1, 1};
    CHECK(crossing_edges(k3, std::span<const int>(split)).ids == std::vector<int>{0, 1});
}

TEST_CASE("removing the crossing edges leaves exactly the classes") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 60);
        const Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 40));
        const SpanningTree t = sample_ust(g, rng());
        const int k = 1 + static_cast<int>(rng() % n);
        const Partition p = balanced_partition(t, k);
        const EdgeSet f = crossing_edges(g, p);
        const auto ref = oracle::components(g, f.ids);
        CHECK(ref.count == k);
        std::vector<int> expected = p.class_sizes;
        std::sort(expected.begin(), expected.end(), std::greater<int>());
        CHECK(ref.sizes == expected);
    }
}

TEST_CASE("boundary edges have exactly one endpoint inside") {
    const Graph p5 = path_graph(5);
    CHECK(boundary_edges(p5, {1, 1, 0, 0, 0}).ids == std::vector<int>{1});
    CHECK(boundary_edges(p5, {1, 1, 1, 1, 1}).empty());
    CHECK_THROWS_AS(boundary_edges(p5, {1, 0}), std::invalid_argument);
}

TEST_CASE("subproblem on a tree cuts exactly one edge for k=2") {
    std::mt19937_64 rng(7);
    const Graph tree = oracle::random_tree(rng, 12);
    const CutSolution sol = solve_subproblem(tree, 2, seeds_of(4, 6));
    CHECK(sol.cut_edges.size() == 1);
    std::vector<int> sizes(2, 0);
    for (int c : sol.class_of) ++sizes.at(c);
    CHECK(sol.lcc == std::max(sizes[0], sizes[1]));
    CHECK(sol.lcc == oracle::components(tree, sol.cut_edges.ids).lcc);
    CHECK(sol.k == 2);
}

TEST_CASE("subproblem on the 6-cycle finds the optimal arc bipartition") {
    const CutSolution sol = solve_subproblem(six_cycle(), 2, seeds_of(10, 8));
    CHECK(sol.lcc == 3);
    CHECK(sol.cut_edges.size() == 2);
}

TEST_CASE("k=1 subproblem is the whole graph") {
    const CutSolution sol = solve_subproblem(six_cycle(), 1, seeds_of(1, 3));
    CHECK(sol.cut_edges.empty());
    CHECK(sol.lcc == 6);
}

TEST_CASE("subproblem winner is independent of the worker count") {
    const Graph g = generate({80, 180, 4});
    const auto seeds = seeds_of(21, 10);
    const CutSolution one = solve_subproblem(g, 5, seeds, 1);
    const CutSolution four = solve_subproblem(g, 5, seeds, 4);
    CHECK(one.cut_edges.ids == four.cut_edges.ids);
    CHECK(one.seed == four.seed);
    CHECK(one.seed_index == four.seed_index);
    CHECK(one.lcc == four.lcc);
}

TEST_CASE("subproblem rejects bad inputs") {
    CHECK_THROWS_AS(solve_subproblem(six_cycle(), 0, seeds_of(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(solve_subproblem(six_cycle(), 7, seeds_of(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(solve_subproblem(six_cycle(), 2, {}), std::invalid_argument);
    CHECK_THROWS_AS(solve_subproblem(Graph(4, {{0, 1}, {2, 3}}), 2, seeds_of(1, 2)),
                    std::invalid_argument);
}

TEST_CASE("bisection baselines: cycle, path, complete four") {
    CHECK(baseline_bisection(six_cycle(), seeds_of(2, 8)).cut_edges.size() == 2);
    CHECK(baseline_bisection(six_cycle(), seeds_of(2, 8)).lcc == 3);
    CHECK(baseline_bisection(path_graph(7), seeds_of(2, 4)).cut_edges.size() == 1);
    const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    const CutSolution sol = baseline_bisection(k4, seeds_of(2, 8));
    CHECK(sol.cut_edges.size() == 4);
    CHECK(sol.lcc == 2);
}

TEST_CASE("alpha estimate follows the fitted power law") {
    CalibrationModel m = flat_model();
    m.b0 = 0.3;
    m.gamma = 2.0;
    m.beta1 = 0.7;
    m.beta2 = 0.7;
    const double t = 1.2;
    // cut = f2 cancels the two budget terms when beta1 = beta2
    CHECK(estimate_alpha(5, t, 5, 100, m) ==
          doctest::Approx(0.3 * std::pow(t, -2.0)).epsilon(1e-12));
    CHECK(estimate_alpha(2, t, 5, 100, m) <= estimate_alpha(4, t, 5, 100, m));

    m.b0 = 50.0;
    CHECK(estimate_alpha(5, t, 5, 100, m) == doctest::Approx(0.95));
    m.b0 = 1e-9;
    CHECK(estimate_alpha(5, t, 5, 100, m) == doctest::Approx(2.0 / 100));
    CHECK_THROWS_AS(estimate_alpha(0, t, 5, 100, m), std::invalid_argument);
    CHECK_THROWS_AS(estimate_alpha(5, 3.5, 5, 100, m), std::domain_error);
}

TEST_CASE("k estimate walks the fitted line from the bisection anchor") {
    const CalibrationModel m = flat_model(5.0);
    CHECK(estimate_k(7, 7, 1.2, 100, m) == 2);
    CHECK(estimate_k(17, 7, 1.2, 100, m) == 4);
    CHECK(estimate_k(22, 7, 1.2, 100, m) == 5);
    CHECK(estimate_k(100000, 7, 1.2, 100, m) == 100);
    CHECK_THROWS_AS(estimate_k(5, 7, 1.2, 100, m), std::invalid_argument);
    CHECK_THROWS_AS(estimate_k(9, 7, 1.2, 100, flat_model(-1.0)), std::domain_error);
    CHECK_THROWS_AS(estimate_k(9, 7, 3.5, 100, m), std::domain_error);
}

TEST_CASE("subgraph growth absorbs a chain prefix") {
    const Graph p5 = path_graph(5);
    CHECK(grow_subgraph(p5, 3) == std::vector<int>{0, 1, 2});
    CHECK(grow_subgraph(p5, 1) == std::vector<int>{0});
    CHECK(grow_subgraph(p5, 5) == std::vector<int>{0, 1, 2, 3, 4});
    CHECK_THROWS_AS(grow_subgraph(p5, 0), std::invalid_argument);
    CHECK_THROWS_AS(grow_subgraph(p5, 6), std::invalid_argument);
}

TEST_CASE("growth starts at the coordinate-least corner among degree ties") {
    // all degrees equal on a cycle; coords single out vertex 2
    Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}},
             {{0.5, 0.5}, {0.5, 0.2}, {0.1, 0.9}, {0.9, 0.9}});
    CHECK(grow_subgraph(c4, 1) == std::vector<int>{2});
    // without coords the smaller id wins
    Graph bare(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(grow_subgraph(bare, 1) == std::vector<int>{0});
}

TEST_CASE("grown sets induce connected subgraphs") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 50);
        const Graph g = oracle::random_connected_graph(rng, n, static_cast<int>(rng() % 30));
        const int n_s = 1 + static_cast<int>(rng() % n);
        const auto set = grow_subgraph(g, n_s);
        REQUIRE(static_cast<int>(set.size()) == n_s);
        const InducedSubgraph sub = induced_subgraph(g, set);
        CHECK(oracle::is_connected(sub.graph));
        CHECK(std::is_sorted(set.begin(), set.end()));
    }
}

TEST_CASE("induced subgraphs keep exactly the internal edges") {
    const Graph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {1, 3}});
    const std::vector<int> keep{1, 2, 3};
    const InducedSubgraph sub = induced_subgraph(g, keep);
    CHECK(sub.graph.vertex_count() == 3);
    CHECK(sub.graph.edge_count() == 3);  // (1,2) (2,3) (1,3) relabeled
    CHECK(sub.to_host == keep);
    CHECK_THROWS_AS(induced_subgraph(g, std::vector<int>{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(induced_subgraph(g, std::vector<int>{9}), std::invalid_argument);
}

TEST_CASE("budget zero always answers with the untouched graph") {
    SolveConfig cfg;
    cfg.budget = 0;
    cfg.seeds = seeds_of(3, 4);
    const SolveResult res = solve(six_cycle(), cfg);
    CHECK(res.solution.cut_edges.empty());
    CHECK(res.solution.lcc == 6);
    CHECK(res.solution.path == SolvePath::small_budget);
    CHECK(res.solution.feasible);
}

TEST_CASE("unit budget on a chain halves it: k above 2 is filtered as infeasible") {
    const Graph p10 = path_graph(10);
    const CalibrationModel m = flat_model(2.0);
    SolveConfig cfg;
    cfg.budget = 1;  // equals the bisection cost, so this dispatches large
    cfg.seeds = seeds_of(5, 4);
    cfg.calibration = &m;
    const SolveResult res = solve(p10, cfg);
    CHECK(res.solution.path == SolvePath::large_budget);
    CHECK(res.solution.k == 2);
    CHECK(res.solution.cut_edges.size() == 1);
    CHECK(res.solution.lcc == 5);
    CHECK(res.f2 == 1);
}

TEST_CASE("no single edge disconnects a cycle: the solver declines to cut") {
    SolveConfig cfg;
    cfg.budget = 1;
    cfg.seeds = seeds_of(6, 6);
    cfg.alpha_override = 0.4;
    const SolveResult res = solve(six_cycle(), cfg);
    CHECK(res.solution.path == SolvePath::small_budget);
    CHECK(res.solution.cut_edges.empty());
    CHECK(res.solution.lcc == 6);
    CHECK(res.solution.feasible);
}

TEST_CASE("small path shrinks alpha until a boundary fits the budget") {
    const Graph grid = grid_graph(5, 5);
    SolveConfig cfg;
    cfg.budget = 2;
    cfg.seeds = seeds_of(8, 6);
    cfg.alpha_override = 0.9;  // initial boundary is far too wide
    const SolveResult res = solve(grid, cfg);
    CHECK(res.solution.path == SolvePath::small_budget);
    CHECK(!res.solution.cut_edges.empty());
    CHECK(res.solution.cut_edges.size() <= 2);
    CHECK(res.solution.lcc < 25);
    REQUIRE(res.solution.alpha.has_value());
    CHECK(*res.solution.alpha < 0.9);
}

TEST_CASE("large path on the 6-cycle reaches three arcs of two") {
    const CalibrationModel m = flat_model(2.0);
    SolveConfig cfg;
    cfg.budget = 4;
    cfg.delta = 1;
    cfg.seeds = seeds_of(9, 8);
    cfg.calibration = &m;
    const SolveResult res = solve(six_cycle(), cfg);
    CHECK(res.solution.path == SolvePath::large_budget);
    CHECK(res.solution.k == 3);
    CHECK(res.solution.lcc == 2);
    CHECK(res.solution.cut_edges.size() == 3);
    CHECK(res.f2 == 2);
}

TEST_CASE("a full budget isolates every vertex once k = |V| is reachable") {
    const CalibrationModel m = flat_model(2.0);
    SolveConfig cfg;
    cfg.budget = 6;
    cfg.delta = 4;  // window reaches k = 6
    cfg.seeds = seeds_of(9, 8);
    cfg.calibration = &m;
    const SolveResult res = solve(six_cycle(), cfg);
    CHECK(res.solution.lcc == 1);
    CHECK(res.solution.cut_edges.size() == 6);
}

TEST_CASE("the large path never does worse than its own bisection") {
    const CalibrationModel m = flat_model(2.0);
    const Graph g = generate({120, 300, 6});
    const auto seeds = seeds_of(14, 10);
    const CutSolution base = baseline_bisection(g, seeds);
    SolveConfig cfg;
    cfg.budget = static_cast<int>(base.cut_edges.size());
    cfg.seeds = seeds;
    cfg.calibration = &m;
    const SolveResult res = solve(g, cfg);
    CHECK(res.solution.path == SolvePath::large_budget);
    CHECK(res.solution.lcc <= base.lcc);
    CHECK(static_cast<int>(res.solution.cut_edges.size()) <= cfg.budget);
}

TEST_CASE("dispatch follows the measured bisection cost") {
    const CalibrationModel m = flat_model(3.0, 0.4);
    const Graph g = generate({100, 260, 3});
    const auto seeds = seeds_of(31, 8);
    const int f2 = static_cast<int>(baseline_bisection(g, seeds).cut_edges.size());
    REQUIRE(f2 >= 1);

    SolveConfig cfg;
    cfg.seeds = seeds;
    cfg.calibration = &m;
    cfg.budget = f2 - 1;
    if (cfg.budget > 0) {
        const SolveResult below = solve(g, cfg);
        CHECK(below.solution.path == SolvePath::small_budget);
        CHECK(below.f2 == f2);
    }
    cfg.budget = f2;
    CHECK(solve(g, cfg).solution.path == SolvePath::large_budget);
    cfg.budget = f2 + 5;
    CHECK(solve(g, cfg).solution.path == SolvePath::large_budget);
}

TEST_CASE("every solution respects the budget and reports its true lcc") {
    const CalibrationModel m = flat_model(2.5, 0.35);
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 20 + static_cast<int>(rng() % 80);
        // densities up to 2.2|V| stay inside every grid's edge pool
        const int e = n - 1 + static_cast<int>(rng() % (n + n / 5));
        const Graph g = generate({n, e, rng()});
        SolveConfig cfg;
        cfg.budget = static_cast<int>(rng() % (e + 1));
        cfg.seeds = seeds_of(rng(), 4);
        cfg.calibration = &m;
        const SolveResult res = solve(g, cfg);
        CHECK(static_cast<int>(res.solution.cut_edges.size()) <= cfg.budget);
        CHECK(res.solution.feasible);
        CHECK(res.solution.lcc == oracle::components(g, res.solution.cut_edges.ids).lcc);
        CHECK(res.t == doctest::Approx(density_feature(g)));
    }
}

TEST_CASE("solve output is a pure function of the config, not the schedule") {
    const CalibrationModel m = flat_model(2.0, 0.45);
    const Graph g = generate({90, 220, 12});
    SolveConfig cfg;
    cfg.budget = 50;
    cfg.seeds = seeds_of(77, 12);
    cfg.calibration = &m;
    cfg.workers = 1;
    const SolveResult a = solve(g, cfg);
    cfg.workers = 4;
    const SolveResult b = solve(g, cfg);
    CHECK(a.solution.cut_edges.ids == b.solution.cut_edges.ids);
    CHECK(a.solution.k == b.solution.k);
    CHECK(a.solution.seed == b.solution.seed);
    CHECK(a.f2 == b.f2);
}

TEST_CASE("solve validates its inputs") {
    SolveConfig cfg;
    cfg.seeds = seeds_of(1, 2);
    cfg.budget = 7;
    CHECK_THROWS_AS(solve(six_cycle(), cfg), std::invalid_argument);  // budget > |E|
    cfg.budget = 2;
    cfg.seeds.clear();
    CHECK_THROWS_AS(solve(six_cycle(), cfg), std::invalid_argument);
    cfg.seeds = seeds_of(1, 2);
    cfg.alpha_override = 1.0;
    CHECK_THROWS_AS(solve(six_cycle(), cfg), std::invalid_argument);
    cfg.alpha_override.reset();
    CHECK_THROWS_AS(solve(Graph(4, {{0, 1}, {2, 3}}), cfg), std::invalid_argument);
    cfg.budget = 1;
    cfg.calibration = nullptr;
    CHECK_THROWS_AS(solve(six_cycle(), cfg), std::runtime_error);  // small path, no model
}

TEST_CASE("solution reports round-trip as JSON with stable bytes on demand") {
    const Graph g = generate({40, 90, 2});
    SolveConfig cfg;
    cfg.budget = 10;
    cfg.seeds = seeds_of(4, 5);
    cfg.alpha_override = 0.3;
    const SolveResult res = solve(g, cfg);

    const std::string stable_a = solution_to_json(g, res, cfg.budget, cfg.seeds, true);
    const std::string stable_b = solution_to_json(g, res, cfg.budget, cfg.seeds, true);
    CHECK(stable_a == stable_b);

    const auto doc = nlohmann::json::parse(stable_a);
    CHECK(doc["graph"]["v"] == 40);
    CHECK(doc["graph"]["e"] == 90);
    CHECK(doc["budget"] == 10);
    CHECK(doc["cut_count"] == res.solution.cut_edges.size());
    CHECK(doc["lcc"] == res.solution.lcc);
    CHECK(doc["lcc_ratio"].get<double>() ==
          doctest::Approx(res.solution.lcc / 40.0).epsilon(1e-12));
    CHECK(doc["runtime_ms"] == 0.0);
    CHECK(doc["seeds_used"].size() == 5);
    CHECK(doc["cut_edges"].size() == doc["cut_edge_ids"].size());
    for (size_t i = 0; i < doc["cut_edge_ids"].size(); ++i) {
        const int id = doc["cut_edge_ids"][i].get<int>();
        const auto [u, v] = g.edge(id);
        CHECK(doc["cut_edges"][i][0] == u);
        CHECK(doc["cut_edges"][i][1] == v);
    }
    if (res.solution.path == SolvePath::small_budget && res.solution.alpha)
        CHECK(doc["alpha"].get<double>() == doctest::Approx(*res.solution.alpha));
}
