#pragma once

#include <string>
#include <utility>
#include <vector>

namespace skelcut {

struct Coord {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Coord&) const = default;
};

/// Undirected simple graph with dense 0-based vertex ids. Edges are stored
/// normalized (u < v) in insertion order; an edge's id is its position in
/// that list. Instances are immutable after construction and safe to share
/// across threads.
class Graph {
public:
    Graph() = default;
    Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
          std::vector<Coord> coords = {});

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    std::pair<int, int> edge(int id) const { return edges_[id]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    /// (neighbor, edge id) pairs in edge insertion order.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<Coord>& coords() const { return coords_; }

    bool operator==(const Graph& other) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::vector<Coord> coords_;  // empty, or one entry per vertex
};

/// Set of edge ids of a host graph; kept sorted and duplicate-free.
struct EdgeSet {
    std::vector<int> ids;

    EdgeSet() = default;
    explicit EdgeSet(std::vector<int> edge_ids);

    int size() const { return static_cast<int>(ids.size()); }
    bool empty() const { return ids.empty(); }
    bool contains(int id) const;
    bool operator==(const EdgeSet&) const = default;
};

struct ComponentLabeling {
    std::vector<int> labels;  // per-vertex component id, 0-based
    std::vector<int> sizes;   // per-component vertex count
    int lcc = 0;              // largest component size; 0 for the empty graph
};

/// Connected components of g with the given edges removed. Components are
/// numbered in order of their smallest vertex.
ComponentLabeling components(const Graph& g, const EdgeSet& removed = {});

bool is_connected(const Graph& g);

/// Text format: a "<V> <E>" header line, E lines "u v", then an optional
/// "#coords" marker followed by V lines "x y". Lines starting with '%' and
/// blank lines are ignored. Parse errors name the offending line.
Graph load_graph(const std::string& text);
std::string save_graph(const Graph& g);

Graph read_graph_file(const std::string& path);

}  // namespace skelcut
