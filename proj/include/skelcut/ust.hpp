#pragma once

#include <cstdint>
#include <vector>

#include "skelcut/graph.hpp"

namespace skelcut {

/// Rooted spanning tree of a host graph, stored as parent pointers.
/// parent[root] == -1 and parent_edge[root] == -1.
struct SpanningTree {
    int root = 0;
    std::vector<int> parent;
    std::vector<int> parent_edge;  // host edge id realizing the parent link

    int vertex_count() const { return static_cast<int>(parent.size()); }
};

/// Uniform spanning tree of a connected graph by loop-erased random walks
/// (Wilson's algorithm), rooted at vertex 0. Each seed gives one exact
/// sample from the uniform distribution over spanning trees.
SpanningTree sample_ust(const Graph& g, uint64_t seed);

}  // namespace skelcut
