#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "skelcut/bench.hpp"
#include "skelcut/calibration.hpp"
#include "skelcut/planar_gen.hpp"
#include "skelcut/rng.hpp"
#include "skelcut/solver.hpp"
#include "skelcut/tree_partition.hpp"
#include "skelcut/ust.hpp"

namespace py = pybind11;
using namespace skelcut;

namespace {

Graph make_graph(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                 const std::vector<std::pair<double, double>>& coords) {
    std::vector<Coord> cs;
    cs.reserve(coords.size());
    for (auto [x, y] : coords) cs.push_back({x, y});
    return Graph(vertex_count, edges, std::move(cs));
}

std::vector<std::pair<double, double>> graph_coords(const Graph& g) {
    std::vector<std::pair<double, double>> out;
    for (const auto& c : g.coords()) out.push_back({c.x, c.y});
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spanning-tree skeleton cuts: budgeted edge removal for planar graphs";
    m.attr("__version__") = "0.1.0";

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("vertex_count"), py::arg("edges"),
             py::arg("coords") = std::vector<std::pair<double, double>>{})
        .def_property_readonly("vertex_count", &Graph::vertex_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
        .def_property_readonly("coords", &graph_coords)
        .def("edge", &Graph::edge, py::arg("edge_id"))
        .def("neighbors", [](const Graph& g, int v) { return g.neighbors(v); }, py::arg("v"))
        .def("degree", &Graph::degree, py::arg("v"))
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
        .def("__repr__", [](const Graph& g) {
            return "Graph(|V|=" + std::to_string(g.vertex_count()) +
                   ", |E|=" + std::to_string(g.edge_count()) + ")";
        });

    py::class_<ComponentLabeling>(m, "ComponentLabeling")
        .def_readonly("labels", &ComponentLabeling::labels)
        .def_readonly("sizes", &ComponentLabeling::sizes)
        .def_readonly("lcc", &ComponentLabeling::lcc);

    m.def(
        "components",
        [](const Graph& g, const std::vector<int>& removed) {
            return components(g, EdgeSet(removed));
        },
        py::arg("g"), py::arg("removed_edge_ids") = std::vector<int>{});
    m.def("is_connected", &is_connected, py::arg("g"));
    m.def("load_graph", &load_graph, py::arg("text"));
    m.def("save_graph", &save_graph, py::arg("g"));
    m.def("read_graph_file", &read_graph_file, py::arg("path"));

    m.def(
        "generate",
        [](int nodes, int edges, uint64_t seed) { return generate({nodes, edges, seed}); },
        py::arg("nodes"), py::arg("edges"), py::arg("seed") = 1);
    m.def("density_feature", &density_feature, py::arg("g"));

    py::class_<SpanningTree>(m, "SpanningTree")
        .def_readonly("root", &SpanningTree::root)
        .def_readonly("parent", &SpanningTree::parent)
        .def_readonly("parent_edge", &SpanningTree::parent_edge);
    m.def("sample_ust", &sample_ust, py::arg("g"), py::arg("seed"));

    py::class_<Partition>(m, "Partition")
        .def_readonly("k", &Partition::k)
        .def_readonly("class_of", &Partition::class_of)
        .def_readonly("class_sizes", &Partition::class_sizes)
        .def_readonly("tree_cuts", &Partition::tree_cuts);
    m.def("balanced_partition", &balanced_partition, py::arg("tree"), py::arg("k"));
    m.def(
        "target_shares",
        [](int n, int k) {
            const TargetShares ts = target_shares(n, k);
            return py::make_tuple(ts.q, ts.r, ts.targets);
        },
        py::arg("n"), py::arg("k"));

    m.def(
        "crossing_edges",
        [](const Graph& g, const std::vector<int>& class_of) {
            return crossing_edges(g, std::span<const int>(class_of)).ids;
        },
        py::arg("g"), py::arg("class_of"));

    py::class_<CutSolution>(m, "CutSolution")
        .def_property_readonly("cut_edge_ids",
                               [](const CutSolution& s) { return s.cut_edges.ids; })
        .def_readonly("class_of", &CutSolution::class_of)
        .def_readonly("k", &CutSolution::k)
        .def_readonly("lcc", &CutSolution::lcc)
        .def_readonly("seed", &CutSolution::seed)
        .def_readonly("seed_index", &CutSolution::seed_index)
        .def_property_readonly("path",
                               [](const CutSolution& s) { return std::string(to_string(s.path)); })
        .def_readonly("feasible", &CutSolution::feasible)
        .def_readonly("alpha", &CutSolution::alpha);

    m.def(
        "solve_subproblem",
        [](const Graph& g, int k, const std::vector<uint64_t>& seeds, int workers) {
            return solve_subproblem(g, k, seeds, workers);
        },
        py::arg("g"), py::arg("k"), py::arg("seeds"), py::arg("workers") = 1);
    m.def(
        "baseline_bisection",
        [](const Graph& g, const std::vector<uint64_t>& seeds, int workers) {
            return baseline_bisection(g, seeds, workers);
        },
        py::arg("g"), py::arg("seeds"), py::arg("workers") = 1);
    m.def("grow_subgraph", &grow_subgraph, py::arg("g"), py::arg("n_s"));

    py::class_<CalibrationModel>(m, "CalibrationModel")
        .def(py::init<>())
        .def_readwrite("c0", &CalibrationModel::c0)
        .def_readwrite("c1", &CalibrationModel::c1)
        .def_readwrite("b0", &CalibrationModel::b0)
        .def_readwrite("gamma", &CalibrationModel::gamma)
        .def_readwrite("beta1", &CalibrationModel::beta1)
        .def_readwrite("beta2", &CalibrationModel::beta2)
        .def_readwrite("t_min", &CalibrationModel::t_min)
        .def_readwrite("t_max", &CalibrationModel::t_max)
        .def_readwrite("r2_slope", &CalibrationModel::r2_slope)
        .def_readwrite("r2_alpha", &CalibrationModel::r2_alpha)
        .def_readwrite("corpus", &CalibrationModel::corpus)
        .def("covers", &CalibrationModel::covers, py::arg("t"));
    m.def("save_calibration", &save_calibration, py::arg("model"));
    m.def("load_calibration", &load_calibration, py::arg("json_text"));
    m.def("read_calibration_file", &read_calibration_file, py::arg("path"));

    m.def("estimate_alpha", &estimate_alpha, py::arg("cut"), py::arg("t"), py::arg("f2"),
          py::arg("vertex_count"), py::arg("model"));
    m.def("estimate_k", &estimate_k, py::arg("cut"), py::arg("f2"), py::arg("t"),
          py::arg("vertex_count"), py::arg("model"));

    py::class_<SweepRecord>(m, "SweepRecord")
        .def_readonly("graph_id", &SweepRecord::graph_id)
        .def_readonly("vertex_count", &SweepRecord::vertex_count)
        .def_readonly("edge_count", &SweepRecord::edge_count)
        .def_readonly("t", &SweepRecord::t)
        .def_readonly("k", &SweepRecord::k)
        .def_readonly("f_selected", &SweepRecord::f_selected)
        .def_readonly("lcc_selected", &SweepRecord::lcc_selected)
        .def_readonly("f_mean", &SweepRecord::f_mean)
        .def_readonly("f_std", &SweepRecord::f_std)
        .def_readonly("lcc_mean", &SweepRecord::lcc_mean)
        .def_readonly("lcc_std", &SweepRecord::lcc_std)
        .def_readonly("seed_count", &SweepRecord::seed_count);
    m.def(
        "sweep_k",
        [](const Graph& g, const std::string& id, int k_min, int k_max,
           const std::vector<uint64_t>& seeds, int workers) {
            return sweep_k(g, id, k_min, k_max, seeds, workers);
        },
        py::arg("g"), py::arg("graph_id"), py::arg("k_min"), py::arg("k_max"), py::arg("seeds"),
        py::arg("workers") = 1);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solution", &SolveResult::solution)
        .def_readonly("t", &SolveResult::t)
        .def_readonly("f2", &SolveResult::f2)
        .def_readonly("runtime_ms", &SolveResult::runtime_ms)
        .def_readonly("workers", &SolveResult::workers);
    m.def(
        "solve",
        [](const Graph& g, int budget, const std::vector<uint64_t>& seeds, int delta,
           const CalibrationModel* calibration, std::optional<double> alpha, int workers) {
            SolveConfig cfg;
            cfg.budget = budget;
            cfg.delta = delta;
            cfg.seeds = seeds;
            cfg.calibration = calibration;
            cfg.alpha_override = alpha;
            cfg.workers = workers;
            return solve(g, cfg);
        },
        py::arg("g"), py::arg("budget"), py::arg("seeds"), py::arg("delta") = 1,
        py::arg("calibration") = nullptr, py::arg("alpha") = std::nullopt,
        py::arg("workers") = 1);

    m.def(
        "per_edge_efficiency",
        [](const Graph& g, const std::vector<int>& edge_ids) {
            return per_edge_efficiency(g, EdgeSet(edge_ids));
        },
        py::arg("g"), py::arg("edge_ids"));

    m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));
    m.def(
        "expand_seeds",
        [](uint64_t master, int count) {
            std::vector<uint64_t> seeds(count);
            for (int i = 0; i < count; ++i) seeds[i] = derive_seed(master, i);
            return seeds;
        },
        py::arg("master"), py::arg("count"));
}
