#include "skelcut/tree_partition.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace skelcut {

DfsInfo dfs_preprocess(const SpanningTree& tree) {
    const int n = tree.vertex_count();
    DfsInfo info;
    info.parent = tree.parent;
    info.parent_edge = tree.parent_edge;
    info.children.resize(n);
    for (int v = 0; v < n; ++v) {
        const int p = tree.parent[v];
        if (p >= 0) info.children[p].push_back(v);
        if (p < 0 && v != tree.root)
            throw std::invalid_argument("dfs_preprocess: vertex without parent is not the root");
    }
    // children[] is filled in ascending v, so each list is already sorted

    // Reversing a pre-order that pushes children in ascending order (and so
    // pops them descending) yields a post-order that visits children
    // ascending. Iterative on purpose: trees can be 10^6 vertices deep.
    info.post_order.reserve(n);
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        info.post_order.push_back(u);
        for (int c : info.children[u]) stack.push_back(c);
    }
    std::reverse(info.post_order.begin(), info.post_order.end());
    if (static_cast<int>(info.post_order.size()) != n)
        throw std::invalid_argument("dfs_preprocess: parent pointers do not form one tree");

    info.subtree_sizes.assign(n, 1);
    for (int u : info.post_order)
        for (int c : info.children[u]) info.subtree_sizes[u] += info.subtree_sizes[c];
    return info;
}

TargetShares target_shares(int n, int k) {
    if (n < 1) throw std::invalid_argument("target_shares: n must be positive");
    if (k < 1 || k > n) throw std::invalid_argument("target_shares: k must be in [1, n]");
    TargetShares ts;
    ts.q = n / k;
    ts.r = n - ts.q * k;
    ts.targets.reserve(k);
    for (int i = 0; i < ts.r; ++i) ts.targets.push_back(ts.q + 1);
    for (int i = ts.r; i < k; ++i) ts.targets.push_back(ts.q);
    return ts;
}

Partition balanced_partition(const SpanningTree& tree, int k) {
    const int n = tree.vertex_count();
    if (k < 1 || k > n) throw std::invalid_argument("balanced_partition: k must be in [1, |V|]");
    const DfsInfo info = dfs_preprocess(tree);
    const TargetShares ts = target_shares(n, k);

    // Greedy pass: rem(u) counts u plus the not-yet-detached part of its
    // subtree; cutting u's parent edge detaches rem(u) vertices and zeroes
    // u's contribution to its ancestors.
    std::vector<int> contrib(n, 0);
    std::vector<char> cut(n, 0);  // cut[u]: the edge between u and parent[u] is cut
    int cuts_made = 0;
    int t_ptr = 0;
    for (int u : info.post_order) {
        int rem = 1;
        for (int c : info.children[u]) rem += contrib[c];
        if (u != tree.root && cuts_made < k - 1 && rem >= ts.targets[t_ptr]) {
            cut[u] = 1;
            ++cuts_made;
            ++t_ptr;
        } else {
            contrib[u] = rem;
        }
    }

    // Adjustment: if the greedy pass ran out of tree before making k-1 cuts,
    // repeatedly cut the edge whose dangling subtree size is closest to the
    // next outstanding target, ties to the smaller edge id.
    while (cuts_made < k - 1) {
        std::vector<int> live(n, 1);
        for (int u : info.post_order)
            for (int c : info.children[u])
                if (!cut[c]) live[u] += live[c];
        const int target = ts.targets[t_ptr];
        int best = -1, best_diff = INT_MAX, best_eid = INT_MAX;
        for (int u = 0; u < n; ++u) {
            if (u == tree.root || cut[u]) continue;
            const int diff = std::abs(live[u] - target);
            const int eid = info.parent_edge[u];
            if (diff < best_diff || (diff == best_diff && eid < best_eid)) {
                best = u;
                best_diff = diff;
                best_eid = eid;
            }
        }
        cut[best] = 1;  // n-1 tree edges >= k-1 cuts, so a candidate always exists
        ++cuts_made;
        ++t_ptr;
    }

    // Final classes are the tree components under the cut set; the greedy
    // pass records sizes only tentatively, since adjustment cuts can split a
    // previously accumulated class.
    Partition part;
    part.k = k;
    part.class_of.assign(n, -1);
    std::vector<int> stack;
    for (int v = 0; v < n; ++v) {
        if (part.class_of[v] != -1) continue;
        const int label = static_cast<int>(part.class_sizes.size());
        int size = 0;
        part.class_of[v] = label;
        stack.push_back(v);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (int c : info.children[u]) {
                if (!cut[c] && part.class_of[c] == -1) {
                    part.class_of[c] = label;
                    stack.push_back(c);
                }
            }
            const int p = info.parent[u];
            if (p >= 0 && !cut[u] && part.class_of[p] == -1) {
                part.class_of[p] = label;
                stack.push_back(p);
            }
        }
        part.class_sizes.push_back(size);
    }

    part.tree_cuts.reserve(k - 1);
    for (int v = 0; v < n; ++v)
        if (cut[v]) part.tree_cuts.push_back(info.parent_edge[v]);
    return part;
}

}  // namespace skelcut
