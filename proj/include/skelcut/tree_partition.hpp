#pragma once

#include <vector>

#include "skelcut/ust.hpp"

namespace skelcut {

/// Traversal data for a rooted tree: children lists (ascending vertex id),
/// a post-order in which every vertex follows all of its descendants, and
/// subtree sizes.
struct DfsInfo {
    std::vector<int> parent;
    std::vector<int> parent_edge;
    std::vector<std::vector<int>> children;
    std::vector<int> post_order;
    std::vector<int> subtree_sizes;
};

DfsInfo dfs_preprocess(const SpanningTree& tree);

/// Class-size targets for splitting n vertices into k classes: with
/// q = floor(n/k) and r = n - q*k, the first r targets are q+1 and the rest
/// are q. Sizes differ by at most one and sum to n.
struct TargetShares {
    int q = 0;
    int r = 0;
    std::vector<int> targets;
};

TargetShares target_shares(int n, int k);

/// k connected vertex classes of a spanning tree obtained by cutting k-1
/// tree edges. Classes are numbered in order of their smallest vertex.
struct Partition {
    int k = 1;
    std::vector<int> class_of;
    std::vector<int> class_sizes;
    std::vector<int> tree_cuts;  // host edge ids of the k-1 cut tree edges
};

/// Splits the tree into k connected classes with near-balanced sizes: a
/// single post-order pass cuts a subtree whenever its accumulated size
/// reaches the next outstanding target, and if fewer than k-1 edges were cut
/// the remainder is split on the edges whose dangling subtree size is
/// closest to the outstanding targets (ties to the smaller edge id).
Partition balanced_partition(const SpanningTree& tree, int k);

}  // namespace skelcut
