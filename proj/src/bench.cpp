#include "skelcut/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "skelcut/rng.hpp"

namespace skelcut {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Median wall time of three runs of fn(); the value fn returns on the last
// run is discarded, timing is the point.
template <typename Fn>
double median_of_three_ms(Fn&& fn) {
    double times[3];
    for (double& slot : times) {
        const auto start = Clock::now();
        fn();
        slot = ms_since(start);
    }
    std::sort(std::begin(times), std::end(times));
    return times[1];
}

}  // namespace

double per_edge_efficiency(const Graph& g, const EdgeSet& f) {
    if (f.empty()) throw std::invalid_argument("per_edge_efficiency: undefined for an empty cut");
    const int lcc = components(g, f).lcc;
    return static_cast<double>(g.vertex_count() - lcc) / f.size();
}

MetricsRow random_baseline(const Graph& g, int budget, int trials, uint64_t seed) {
    const int e = g.edge_count();
    if (budget < 0 || budget > e)
        throw std::invalid_argument("random_baseline: budget must be in [0, |E|]");
    if (trials < 1) throw std::invalid_argument("random_baseline: need at least one trial");

    const auto start = Clock::now();
    Rng rng(seed);
    std::vector<int> ids(e);
    double lcc_sum = 0.0;
    int lcc_best = g.vertex_count();
    for (int trial = 0; trial < trials; ++trial) {
        for (int i = 0; i < e; ++i) ids[i] = i;
        // Partial Fisher-Yates: the first `budget` slots become a uniform
        // budget-sized subset.
        for (int i = 0; i < budget; ++i)
            std::swap(ids[i], ids[i + static_cast<int>(rng.next_below(e - i))]);
        const EdgeSet removed(std::vector<int>(ids.begin(), ids.begin() + budget));
        const int lcc = components(g, removed).lcc;
        lcc_sum += lcc;
        lcc_best = std::min(lcc_best, lcc);
    }

    MetricsRow row;
    row.graph_id = "";
    row.vertex_count = g.vertex_count();
    row.edge_count = e;
    row.t = g.vertex_count() >= 2 && e >= 1 ? density_feature(g) : 0.0;
    row.method = "random";
    row.budget = budget;
    row.cut_ratio = e > 0 ? static_cast<double>(budget) / e : 0.0;
    row.cut_used = budget;
    row.lcc = lcc_sum / trials;
    row.lcc_ratio = g.vertex_count() > 0 ? row.lcc / g.vertex_count() : 0.0;
    if (budget >= 1) row.eta = (g.vertex_count() - row.lcc) / budget;
    row.runtime_ms = ms_since(start);
    row.seed_count = trials;
    row.lcc_best = lcc_best;
    return row;
}

std::vector<MetricsRow> budget_sweep(const Graph& g, const std::string& graph_id,
                                     std::span<const double> fractions, const SolveConfig& cfg,
                                     const BudgetSweepOptions& opts) {
    for (double f : fractions)
        if (!(f > 0.0) || f > 1.0)
            throw std::invalid_argument("budget_sweep: fractions must lie in (0, 1]");

    std::vector<MetricsRow> rows;
    for (size_t i = 0; i < fractions.size(); ++i) {
        const int budget = static_cast<int>(std::floor(fractions[i] * g.edge_count()));
        SolveConfig step = cfg;
        step.budget = budget;
        const SolveResult res = solve(g, step);

        MetricsRow row;
        row.graph_id = graph_id;
        row.vertex_count = g.vertex_count();
        row.edge_count = g.edge_count();
        row.t = res.t;
        row.method = "solver";
        row.budget = budget;
        row.cut_ratio = g.edge_count() > 0 ? static_cast<double>(budget) / g.edge_count() : 0.0;
        row.cut_used = res.solution.cut_edges.size();
        row.lcc = res.solution.lcc;
        row.lcc_ratio = static_cast<double>(res.solution.lcc) / g.vertex_count();
        if (!res.solution.cut_edges.empty())
            row.eta = per_edge_efficiency(g, res.solution.cut_edges);
        row.runtime_ms = res.runtime_ms;
        row.seed_count = static_cast<int>(cfg.seeds.size());
        rows.push_back(std::move(row));

        if (opts.with_random) {
            MetricsRow rnd = random_baseline(g, budget, opts.random_trials,
                                             derive_seed(opts.random_seed, i));
            rnd.graph_id = graph_id;
            rows.push_back(std::move(rnd));
        }
    }
    return rows;
}

std::string write_metrics_csv(const std::vector<MetricsRow>& rows) {
    std::string out =
        "graph,V,E,t,method,budget,cut_ratio,cut_used,lcc,lcc_ratio,eta,runtime_ms,seed_count\n";
    char buf[320];
    for (const auto& r : rows) {
        char eta[32] = "";
        if (r.eta) std::snprintf(eta, sizeof eta, "%.9g", *r.eta);
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.9g,%s,%d,%.9g,%d,%.9g,%.9g,%s,%.9g,%d\n",
                      r.graph_id.c_str(), r.vertex_count, r.edge_count, r.t, r.method.c_str(),
                      r.budget, r.cut_ratio, r.cut_used, r.lcc, r.lcc_ratio, eta, r.runtime_ms,
                      r.seed_count);
        out += buf;
    }
    return out;
}

std::string write_layout_csv(const Graph& g, std::span<const int> class_of) {
    if (static_cast<int>(class_of.size()) != g.vertex_count())
        throw std::invalid_argument("write_layout_csv: labeling must cover every vertex");
    std::string out = "vertex,x,y,class\n";
    char buf[128];
    for (int v = 0; v < g.vertex_count(); ++v) {
        const double x = g.has_coords() ? g.coords()[v].x : 0.0;
        const double y = g.has_coords() ? g.coords()[v].y : 0.0;
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%d\n", v, x, y, class_of[v]);
        out += buf;
    }
    return out;
}

ScalingResult runtime_scaling(std::span<const GenSpec> specs, int k,
                              std::span<const uint64_t> seeds, int workers) {
    if (seeds.empty()) throw std::invalid_argument("runtime_scaling: need seeds");
    ScalingResult result;
    for (const auto& spec : specs) {
        const Graph g = generate(spec);  // generation excluded from timing
        const double ms = median_of_three_ms([&] {
            (void)solve_subproblem(g, std::min(k, g.vertex_count()), seeds, workers);
        });
        result.rows.push_back({g.vertex_count(), g.edge_count(), ms});
    }

    // Log-log slope over rows with distinct edge counts.
    std::vector<double> lx, ly;
    for (const auto& row : result.rows) {
        lx.push_back(std::log(static_cast<double>(row.edge_count)));
        ly.push_back(std::log(std::max(row.median_ms, 1e-6)));
    }
    bool distinct = false;
    for (size_t i = 1; i < lx.size(); ++i)
        if (lx[i] != lx[0]) distinct = true;
    if (distinct) {
        double mx = 0, my = 0;
        for (size_t i = 0; i < lx.size(); ++i) {
            mx += lx[i];
            my += ly[i];
        }
        mx /= lx.size();
        my /= ly.size();
        double sxx = 0, sxy = 0;
        for (size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - mx) * (lx[i] - mx);
            sxy += (lx[i] - mx) * (ly[i] - my);
        }
        result.slope = sxy / sxx;
    }
    return result;
}

std::vector<SpeedupReport> speedup_report(const Graph& g, std::span<const int> ks,
                                          std::span<const uint64_t> seeds,
                                          std::span<const int> p_values) {
    if (std::find(p_values.begin(), p_values.end(), 1) == p_values.end())
        throw std::invalid_argument("speedup_report: p_values must include 1");
    for (int p : p_values)
        if (p < 1) throw std::invalid_argument("speedup_report: worker counts must be >= 1");
    if (ks.empty() || seeds.empty())
        throw std::invalid_argument("speedup_report: need at least one k and one seed");

    struct Winner {
        int k;
        int seed_index;
        int lcc;
        int cut_count;
        bool operator==(const Winner&) const = default;
    };
    auto run_grid = [&](int workers) {
        std::vector<Winner> winners;
        for (int k : ks) {
            const CutSolution sol = solve_subproblem(g, k, seeds, workers);
            winners.push_back({k, sol.seed_index, sol.lcc, sol.cut_edges.size()});
        }
        return winners;
    };

    std::vector<SpeedupReport> out;
    std::vector<Winner> reference;
    bool have_reference = false;
    double t1 = 0.0;
    for (int p : p_values) {
        std::vector<Winner> winners;
        const double ms = median_of_three_ms([&] { winners = run_grid(p); });
        if (!have_reference) {
            reference = winners;
            have_reference = true;
        } else if (winners != reference) {
            throw std::runtime_error(
                "speedup_report: results differ across worker counts; the grid must be "
                "schedule-independent");
        }
        if (p == 1) t1 = ms;
        out.push_back({p, ms, 1.0, 1.0});
    }
    if (t1 <= 0.0) t1 = 1e-6;
    for (auto& row : out) {
        row.speedup = t1 / std::max(row.median_ms, 1e-6);
        row.efficiency = row.speedup / row.workers;
    }
    return out;
}

std::string write_speedup_csv(const std::vector<SpeedupReport>& rows) {
    std::string out = "p,T_ms,S_p,E_p\n";
    char buf[128];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%.9g,%.9g,%.9g\n", r.workers, r.median_ms, r.speedup,
                      r.efficiency);
        out += buf;
    }
    return out;
}

}  // namespace skelcut
