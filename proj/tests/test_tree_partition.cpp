#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "skelcut/tree_partition.hpp"
#include "skelcut/ust.hpp"

using namespace skelcut;

namespace {

// Path tree 0 -> 1 -> ... -> n-1 built directly; edge i joins (i-1, i).
SpanningTree path_tree(int n) {
    SpanningTree t;
    t.root = 0;
    t.parent.resize(n);
    t.parent_edge.resize(n);
    t.parent[0] = -1;
    t.parent_edge[0] = -1;
    for (int v = 1; v < n; ++v) {
        t.parent[v] = v - 1;
        t.parent_edge[v] = v - 1;
    }
    return t;
}

// Each class must induce a connected subtree: class-internal tree edges are
// acyclic, so connectivity is equivalent to |edges| = size - 1.
void check_partition_invariants(const SpanningTree& t, const Partition& p, int k) {
    const int n = t.vertex_count();
    REQUIRE(p.k == k);
    REQUIRE(static_cast<int>(p.class_sizes.size()) == k);
    REQUIRE(static_cast<int>(p.class_of.size()) == n);
    CHECK(static_cast<int>(p.tree_cuts.size()) == k - 1);

    int total = 0;
    for (int s : p.class_sizes) {
        CHECK(s >= 1);
        total += s;
    }
    CHECK(total == n);

    std::vector<int> internal(k, 0), count(k, 0);
    for (int v = 0; v < n; ++v) {
        const int c = p.class_of[v];
        REQUIRE(c >= 0);
        REQUIRE(c < k);
        ++count[c];
        if (v != t.root && p.class_of[t.parent[v]] == c) ++internal[c];
    }
    for (int c = 0; c < k; ++c) {
        CHECK(count[c] == p.class_sizes[c]);
        CHECK(internal[c] == p.class_sizes[c] - 1);
    }
}

}  // namespace

TEST_CASE("dfs_preprocess on a chain: children precede parents") {
    const DfsInfo info = dfs_preprocess(path_tree(3));
    REQUIRE(info.post_order.size() == 3);
    CHECK(info.post_order.back() == 0);
    CHECK(info.post_order == std::vector<int>{2, 1, 0});
    CHECK(info.subtree_sizes == std::vector<int>{3, 2, 1});
}

TEST_CASE("dfs_preprocess on a star and a single vertex") {
    const Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const DfsInfo info = dfs_preprocess(sample_ust(star, 1));
    CHECK(info.subtree_sizes[0] == 6);
    for (int leaf = 1; leaf < 6; ++leaf) CHECK(info.subtree_sizes[leaf] == 1);

    const DfsInfo single = dfs_preprocess(path_tree(1));
    CHECK(single.post_order == std::vector<int>{0});
    CHECK(single.subtree_sizes == std::vector<int>{1});
}

TEST_CASE("dfs_preprocess orders every vertex after its descendants") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 60);
        const Graph g = oracle::random_tree(rng, n);
        const SpanningTree t = sample_ust(g, rng());
        const DfsInfo info = dfs_preprocess(t);
        std::vector<int> position(n, -1);
        for (int i = 0; i < n; ++i) {
            CHECK(position[info.post_order[i]] == -1);
            position[info.post_order[i]] = i;
        }
        for (int v = 0; v < n; ++v) {
            if (v == t.root) continue;
            CHECK(position[v] < position[t.parent[v]]);
        }
        CHECK(info.subtree_sizes[t.root] == n);
    }
}

TEST_CASE("target shares split n into k near-equal parts") {
    const TargetShares a = target_shares(10, 3);
    CHECK(a.q == 3);
    CHECK(a.r == 1);
    CHECK(a.targets == std::vector<int>{4, 3, 3});
    CHECK(target_shares(6, 2).targets == std::vector<int>{3, 3});
    CHECK(target_shares(7, 7).targets == std::vector<int>(7, 1));
    CHECK_THROWS_AS(target_shares(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(target_shares(5, 6), std::invalid_argument);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 200);
        const int k = 1 + static_cast<int>(rng() % n);
        const TargetShares ts = target_shares(n, k);
        REQUIRE(static_cast<int>(ts.targets.size()) == k);
        int sum = 0;
        for (int v : ts.targets) sum += v;
        CHECK(sum == n);
        const auto [lo, hi] = std::minmax_element(ts.targets.begin(), ts.targets.end());
        CHECK(*hi - *lo <= 1);
    }
}

TEST_CASE("chain of six, two classes: the greedy cuts the middle edge") {
    const Partition p = balanced_partition(path_tree(6), 2);
    CHECK(p.tree_cuts == std::vector<int>{2});
    CHECK(p.class_sizes == std::vector<int>{3, 3});
    CHECK(p.class_of == std::vector<int>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("chain of six, three classes of two") {
    const Partition p = balanced_partition(path_tree(6), 3);
    CHECK(p.class_sizes == std::vector<int>{2, 2, 2});
    CHECK(p.tree_cuts == std::vector<int>{1, 3});
}

TEST_CASE("star bipartition falls back to the adjustment phase") {
    const Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    const SpanningTree t = sample_ust(star, 1);
    const Partition p = balanced_partition(t, 2);
    std::vector<int> sizes = p.class_sizes;
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 5});
    CHECK(p.tree_cuts.size() == 1);
    check_partition_invariants(t, p, 2);
}

TEST_CASE("degenerate class counts") {
    const SpanningTree t = path_tree(5);
    const Partition whole = balanced_partition(t, 1);
    CHECK(whole.class_sizes == std::vector<int>{5});
    CHECK(whole.tree_cuts.empty());
    const Partition apart = balanced_partition(t, 5);
    CHECK(apart.class_sizes == std::vector<int>(5, 1));
    CHECK(apart.tree_cuts.size() == 4);
    CHECK_THROWS_AS(balanced_partition(t, 0), std::invalid_argument);
    CHECK_THROWS_AS(balanced_partition(t, 6), std::invalid_argument);
}

TEST_CASE("partition invariants hold on random trees for every k") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 120);
        const Graph g = oracle::random_tree(rng, n);
        const SpanningTree t = sample_ust(g, rng());
        const int k = 1 + static_cast<int>(rng() % n);
        check_partition_invariants(t, balanced_partition(t, k), k);
    }
}

TEST_CASE("chains are split exactly: max class size is ceil(n/k)") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 300);
        const int k = 1 + static_cast<int>(rng() % n);
        const Partition p = balanced_partition(path_tree(n), k);
        const int widest = *std::max_element(p.class_sizes.begin(), p.class_sizes.end());
        CHECK(widest == (n + k - 1) / k);
    }
}

TEST_CASE("partitioning is deterministic") {
    std::mt19937_64 rng(77);
    const Graph g = oracle::random_connected_graph(rng, 40, 20);
    const SpanningTree t = sample_ust(g, 5);
    const Partition a = balanced_partition(t, 7);
    const Partition b = balanced_partition(t, 7);
    CHECK(a.class_of == b.class_of);
    CHECK(a.tree_cuts == b.tree_cuts);
}

TEST_CASE("chain partitioning scales linearly from 1e3 to 1e6 vertices") {
    std::vector<double> log_n, log_ms;
    for (int n : {1000, 10000, 100000, 1000000}) {
        const SpanningTree t = path_tree(n);
        const int reps = std::max(3, 300000 / n * 3);
        volatile int sink = 0;
        const auto start = std::chrono::steady_clock::now();
        for (int r = 0; r < reps; ++r) sink = sink + balanced_partition(t, 16).class_sizes[0];
        const auto stop = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(stop - start).count() / reps;
        log_n.push_back(std::log(static_cast<double>(n)));
        log_ms.push_back(std::log(ms));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(log_n.size());
    for (int i = 0; i < m; ++i) {
        sx += log_n[i];
        sy += log_ms[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_ms[i];
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    INFO("log-log slope ", slope);
    CHECK(slope >= 0.8);
    CHECK(slope <= 1.3);
}
