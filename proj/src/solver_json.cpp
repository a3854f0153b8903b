#include <json.hpp>

#include "skelcut/solver.hpp"

namespace skelcut {

std::string solution_to_json(const Graph& g, const SolveResult& result, int budget,
                             std::span<const uint64_t> seeds, bool stable_output) {
    using nlohmann::json;
    const CutSolution& sol = result.solution;
    const int n = g.vertex_count();

    json out;
    out["graph"] = {{"v", n}, {"e", g.edge_count()}};
    out["budget"] = budget;
    out["path"] = to_string(sol.path);
    out["k"] = sol.k;
    out["t"] = result.t;
    out["f2"] = result.f2;
    if (sol.alpha)
        out["alpha"] = *sol.alpha;
    else
        out["alpha"] = nullptr;

    json pairs = json::array();
    json ids = json::array();
    for (int id : sol.cut_edges.ids) {
        const auto [u, v] = g.edge(id);
        pairs.push_back(json::array({u, v}));
        ids.push_back(id);
    }
    out["cut_edges"] = std::move(pairs);
    out["cut_edge_ids"] = std::move(ids);
    out["cut_count"] = sol.cut_edges.size();
    out["lcc"] = sol.lcc;
    out["lcc_ratio"] = n > 0 ? static_cast<double>(sol.lcc) / n : 0.0;
    if (sol.cut_edges.empty())
        out["eta"] = nullptr;
    else
        out["eta"] = static_cast<double>(n - sol.lcc) / sol.cut_edges.size();
    out["seeds_used"] = std::vector<uint64_t>(seeds.begin(), seeds.end());
    // scheduling metadata is zeroed in stable mode so the bytes depend only
    // on the inputs, never on timing or parallelism
    out["runtime_ms"] = stable_output ? 0.0 : result.runtime_ms;
    out["worker_count"] = stable_output ? 0 : result.workers;
    return out.dump(2) + "\n";
}

}  // namespace skelcut
