#include "skelcut/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace skelcut {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edges,
             std::vector<Coord> coords)
    : n_(vertex_count), edges_(std::move(edges)), coords_(std::move(coords)) {
    if (n_ < 0) throw std::invalid_argument("Graph: negative vertex count");
    if (!coords_.empty() && static_cast<int>(coords_.size()) != n_)
        throw std::invalid_argument("Graph: coords must cover every vertex or be absent");
    adj_.assign(n_, {});
    std::unordered_set<long long> seen;
    seen.reserve(edges_.size() * 2);
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
        auto& [u, v] = edges_[id];
        if (u > v) std::swap(u, v);
        if (u < 0 || v >= n_)
            throw std::invalid_argument("Graph: vertex out of range in edge " + std::to_string(id));
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at edge " + std::to_string(id));
        const long long key = static_cast<long long>(u) * n_ + v;
        if (!seen.insert(key).second)
            throw std::invalid_argument("Graph: duplicate edge " + std::to_string(u) + " " +
                                        std::to_string(v));
        adj_[u].push_back({v, id});
        adj_[v].push_back({u, id});
    }
}

bool Graph::operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_ && coords_ == other.coords_;
}

EdgeSet::EdgeSet(std::vector<int> edge_ids) : ids(std::move(edge_ids)) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (!ids.empty() && ids.front() < 0)
        throw std::invalid_argument("EdgeSet: negative edge id");
}

bool EdgeSet::contains(int id) const {
    return std::binary_search(ids.begin(), ids.end(), id);
}

ComponentLabeling components(const Graph& g, const EdgeSet& removed) {
    if (!removed.ids.empty() && removed.ids.back() >= g.edge_count())
        throw std::invalid_argument("components: removed edge id outside the graph");
    const int n = g.vertex_count();
    std::vector<char> off(g.edge_count(), 0);
    for (int id : removed.ids) off[id] = 1;

    ComponentLabeling out;
    out.labels.assign(n, -1);
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (out.labels[s] != -1) continue;
        const int label = static_cast<int>(out.sizes.size());
        int size = 0;
        out.labels[s] = label;
        stack.push_back(s);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            ++size;
            for (auto [to, eid] : g.neighbors(u)) {
                if (off[eid] || out.labels[to] != -1) continue;
                out.labels[to] = label;
                stack.push_back(to);
            }
        }
        out.sizes.push_back(size);
    }
    out.lcc = out.sizes.empty() ? 0 : *std::max_element(out.sizes.begin(), out.sizes.end());
    return out;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() <= 1) return true;
    return components(g).lcc == g.vertex_count();
}

}  // namespace skelcut
