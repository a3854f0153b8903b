#include "skelcut/ust.hpp"

#include <stdexcept>

#include "skelcut/rng.hpp"

namespace skelcut {

// Wilson's algorithm with next-pointer bookkeeping: from each unvisited
// vertex (in ascending order) walk uniformly at random until the tree is
// hit, overwriting next[] along the way so loops erase themselves, then
// attach the loop-erased path.
SpanningTree sample_ust(const Graph& g, uint64_t seed) {
    const int n = g.vertex_count();
    if (n < 1) throw std::invalid_argument("sample_ust: empty graph");
    if (!is_connected(g)) throw std::invalid_argument("sample_ust: graph must be connected");

    SpanningTree tree;
    tree.root = 0;
    tree.parent.assign(n, -1);
    tree.parent_edge.assign(n, -1);

    Rng rng(seed);
    std::vector<char> in_tree(n, 0);
    std::vector<int> next(n, -1), next_edge(n, -1);
    in_tree[0] = 1;

    for (int start = 0; start < n; ++start) {
        if (in_tree[start]) continue;
        int u = start;
        while (!in_tree[u]) {
            const auto& nbrs = g.neighbors(u);
            const auto [to, eid] = nbrs[rng.next_below(nbrs.size())];
            next[u] = to;
            next_edge[u] = eid;
            u = to;
        }
        u = start;
        while (!in_tree[u]) {
            in_tree[u] = 1;
            tree.parent[u] = next[u];
            tree.parent_edge[u] = next_edge[u];
            u = next[u];
        }
    }
    return tree;
}

}  // namespace skelcut
