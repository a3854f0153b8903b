#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skelcut/bench.hpp"
#include "skelcut/calibration.hpp"
#include "skelcut/parallel.hpp"
#include "skelcut/planar_gen.hpp"
#include "skelcut/rng.hpp"
#include "skelcut/solver.hpp"

namespace {

using namespace skelcut;

// Complete-or-absent file writes: stage to a sibling temp file, then rename.
void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::vector<uint64_t> expand_seeds(uint64_t master, int count) {
    std::vector<uint64_t> seeds(count);
    for (int i = 0; i < count; ++i) seeds[i] = derive_seed(master, i);
    return seeds;
}

// Worker precedence: explicit flag, then SKELCUT_WORKERS, then all cores.
int resolve_workers(int flag_value) {
    if (flag_value >= 0) return flag_value;
    if (const char* env = std::getenv("SKELCUT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<int>(v);
    }
    return 0;  // library resolves 0 to hardware concurrency
}

int checked_budget(bool has_budget, int budget, bool has_frac, double frac, int edge_count) {
    if (has_budget == has_frac)
        throw CLI::ValidationError("budget", "exactly one of --budget / --budget-frac required");
    if (has_frac) {
        if (!(frac > 0.0) || frac > 1.0)
            throw CLI::ValidationError("budget", "--budget-frac must lie in (0, 1]");
        return static_cast<int>(std::floor(frac * edge_count));
    }
    return budget;
}

struct SolveArgs {
    std::string graph_path;
    int budget = 0;
    double budget_frac = 0.0;
    int samples = 50;
    int delta = 1;
    uint64_t seed = 1;
    int workers = -1;
    std::string calib_path;
    double alpha = 0.0;
    std::string out_path;
    std::string layout_path;
    bool stable_output = false;
};

void add_solve_flags(CLI::App* cmd, SolveArgs& args, CLI::Option*& budget_opt,
                     CLI::Option*& frac_opt, CLI::Option*& alpha_opt) {
    cmd->add_option("-g,--graph", args.graph_path, "input graph file")->required();
    budget_opt = cmd->add_option("-b,--budget", args.budget, "edge-removal budget");
    frac_opt = cmd->add_option("--budget-frac", args.budget_frac,
                               "budget as a fraction of |E| in (0,1]");
    budget_opt->excludes(frac_opt);
    frac_opt->excludes(budget_opt);
    cmd->add_option("-m,--samples", args.samples, "spanning-tree samples per k")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--delta", args.delta, "half-width of the k search window")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", args.seed, "master seed; trial seeds are derived from it");
    cmd->add_option("-w,--workers", args.workers,
                    "worker threads (default: $SKELCUT_WORKERS, else all cores)");
    cmd->add_option("--calib", args.calib_path, "calibration JSON from `skelcut calibrate`");
    alpha_opt = cmd->add_option("--alpha", args.alpha,
                                "override the fitted subgraph fraction, in (0,1)");
    cmd->add_flag("--stable-output", args.stable_output,
                  "zero timing fields for byte-reproducible outputs");
}

int cmd_gen(const std::string& out_path, int nodes, int edges, uint64_t seed) {
    const Graph g = generate({nodes, edges, seed});
    atomic_write(out_path, save_graph(g));
    std::printf("wrote %s: |V|=%d |E|=%d seed=%llu\n", out_path.c_str(), g.vertex_count(),
                g.edge_count(), static_cast<unsigned long long>(seed));
    return 0;
}

int cmd_solve(const SolveArgs& args, bool has_budget, bool has_frac, bool has_alpha) {
    const Graph g = read_graph_file(args.graph_path);
    const int budget =
        checked_budget(has_budget, args.budget, has_frac, args.budget_frac, g.edge_count());

    CalibrationModel model;
    SolveConfig cfg;
    cfg.budget = budget;
    cfg.delta = args.delta;
    cfg.seeds = expand_seeds(args.seed, args.samples);
    cfg.workers = resolve_workers(args.workers);
    if (!args.calib_path.empty()) {
        model = read_calibration_file(args.calib_path);
        cfg.calibration = &model;
    }
    if (has_alpha) cfg.alpha_override = args.alpha;

    const SolveResult res = solve(g, cfg);
    if (!args.out_path.empty())
        atomic_write(args.out_path,
                     solution_to_json(g, res, budget, cfg.seeds, args.stable_output));
    if (!args.layout_path.empty())
        atomic_write(args.layout_path, write_layout_csv(g, res.solution.class_of));
    std::printf("lcc=%d lcc_ratio=%.4f cut_used=%d path=%s\n", res.solution.lcc,
                static_cast<double>(res.solution.lcc) / g.vertex_count(),
                res.solution.cut_edges.size(), to_string(res.solution.path));
    return 0;
}

GenSpec parse_gen_spec(const std::string& text) {
    GenSpec spec;
    char extra = 0;
    unsigned long long seed = 0;
    if (std::sscanf(text.c_str(), "%d:%d:%llu%c", &spec.nodes, &spec.edges, &seed, &extra) != 3)
        throw CLI::ValidationError("spec", "expected <nodes>:<edges>:<seed>, got " + text);
    spec.seed = seed;
    return spec;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"spanning-tree skeleton cuts: budgeted edge removal for planar graphs"};
    app.require_subcommand(1);
    app.footer("Environment: SKELCUT_WORKERS sets the default worker count.");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random connected planar graph");
    int gen_nodes = 0, gen_edges = 0;
    uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("-n,--nodes", gen_nodes, "vertex count")->required();
    gen->add_option("-e,--edges", gen_edges, "edge count")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output graph file")->required();

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "dismantle a graph under an edge budget");
    SolveArgs sv;
    CLI::Option *sv_budget = nullptr, *sv_frac = nullptr, *sv_alpha = nullptr;
    add_solve_flags(solve_cmd, sv, sv_budget, sv_frac, sv_alpha);
    solve_cmd->add_option("-o,--out", sv.out_path, "solution JSON path");
    solve_cmd->add_option("--layout", sv.layout_path, "vertex,x,y,class CSV path");

    // sweep-k
    auto* sweepk = app.add_subcommand("sweep-k", "k-way cut statistics over a k range");
    std::string sk_graph, sk_out;
    int sk_kmin = 2, sk_kmax = 10, sk_samples = 50, sk_workers = -1;
    uint64_t sk_seed = 1;
    sweepk->add_option("-g,--graph", sk_graph)->required();
    sweepk->add_option("--kmin", sk_kmin);
    sweepk->add_option("--kmax", sk_kmax);
    sweepk->add_option("-m,--samples", sk_samples)->check(CLI::PositiveNumber);
    sweepk->add_option("--seed", sk_seed);
    sweepk->add_option("-w,--workers", sk_workers);
    sweepk->add_option("-o,--out", sk_out, "sweep CSV path")->required();

    // sweep-budget
    auto* sweepb = app.add_subcommand("sweep-budget", "solve across budget fractions");
    SolveArgs sb;
    std::string sb_out;
    std::vector<double> sb_fractions{0.05, 0.10, 0.15, 0.20};
    bool sb_with_random = false;
    int sb_random_trials = 20;
    sweepb->add_option("-g,--graph", sb.graph_path)->required();
    sweepb->add_option("--fractions", sb_fractions, "comma-separated budget fractions")
        ->delimiter(',');
    sweepb->add_option("-m,--samples", sb.samples)->check(CLI::PositiveNumber);
    sweepb->add_option("--delta", sb.delta)->check(CLI::NonNegativeNumber);
    sweepb->add_option("--seed", sb.seed);
    sweepb->add_option("-w,--workers", sb.workers);
    sweepb->add_option("--calib", sb.calib_path);
    auto* sb_alpha_opt = sweepb->add_option("--alpha", sb.alpha);
    sweepb->add_flag("--with-random", sb_with_random, "add random-baseline rows");
    sweepb->add_option("--random-trials", sb_random_trials)->check(CLI::PositiveNumber);
    sweepb->add_flag("--stable-output", sb.stable_output);
    sweepb->add_option("-o,--out", sb_out, "metrics CSV path")->required();

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "fit priors from a corpus of graphs");
    std::vector<std::string> cal_graphs;
    std::string cal_out, cal_sweep_out;
    int cal_kmin = 2, cal_kmax = 10, cal_samples = 50, cal_workers = -1;
    uint64_t cal_seed = 1;
    cal->add_option("--graphs", cal_graphs, "graph files of the corpus")
        ->required()
        ->expected(-1);
    cal->add_option("--kmin", cal_kmin);
    cal->add_option("--kmax", cal_kmax);
    cal->add_option("-m,--samples", cal_samples)->check(CLI::PositiveNumber);
    cal->add_option("--seed", cal_seed);
    cal->add_option("-w,--workers", cal_workers);
    cal->add_option("-o,--out", cal_out, "calibration JSON path")->required();
    cal->add_option("--sweep-out", cal_sweep_out, "optional sweep CSV path");

    // baseline
    auto* base = app.add_subcommand("baseline", "random-removal reference");
    std::string ba_graph, ba_out;
    int ba_budget = 0, ba_trials = 20;
    double ba_frac = 0.0;
    uint64_t ba_seed = 1;
    base->add_option("-g,--graph", ba_graph)->required();
    auto* ba_budget_opt = base->add_option("-b,--budget", ba_budget);
    auto* ba_frac_opt = base->add_option("--budget-frac", ba_frac);
    ba_budget_opt->excludes(ba_frac_opt);
    ba_frac_opt->excludes(ba_budget_opt);
    base->add_option("--trials", ba_trials)->check(CLI::PositiveNumber);
    base->add_option("--seed", ba_seed);
    base->add_option("-o,--out", ba_out, "metrics CSV path");

    // scaling
    auto* scal = app.add_subcommand("scaling", "runtime vs |E| at fixed k and m");
    std::vector<std::string> scal_specs;
    int scal_k = 4, scal_samples = 10, scal_workers = -1;
    uint64_t scal_seed = 1;
    std::string scal_out;
    scal->add_option("--spec", scal_specs, "graph spec <nodes>:<edges>:<seed>, repeatable")
        ->required()
        ->expected(-1);
    scal->add_option("--k", scal_k)->check(CLI::PositiveNumber);
    scal->add_option("-m,--samples", scal_samples)->check(CLI::PositiveNumber);
    scal->add_option("--seed", scal_seed);
    scal->add_option("-w,--workers", scal_workers);
    scal->add_option("-o,--out", scal_out, "scaling CSV path");

    // speedup
    auto* spd = app.add_subcommand("speedup", "wall-time scaling over worker counts");
    std::string spd_graph, spd_out;
    std::vector<int> spd_ks{2, 3, 4, 5};
    std::vector<int> spd_pvals{1, 2, 4};
    int spd_samples = 16;
    uint64_t spd_seed = 1;
    spd->add_option("-g,--graph", spd_graph)->required();
    spd->add_option("--ks", spd_ks, "comma-separated k values")->delimiter(',');
    spd->add_option("-m,--samples", spd_samples)->check(CLI::PositiveNumber);
    spd->add_option("--seed", spd_seed);
    spd->add_option("--workers-list", spd_pvals, "comma-separated worker counts")
        ->delimiter(',');
    spd->add_option("-o,--out", spd_out, "speedup CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or the error message
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) return cmd_gen(gen_out, gen_nodes, gen_edges, gen_seed);

    if (solve_cmd->parsed())
        return cmd_solve(sv, sv_budget->count() > 0, sv_frac->count() > 0,
                         sv_alpha->count() > 0);

    if (sweepk->parsed()) {
        const Graph g = read_graph_file(sk_graph);
        const auto seeds = expand_seeds(sk_seed, sk_samples);
        const auto records =
            sweep_k(g, sk_graph, sk_kmin, sk_kmax, seeds, resolve_workers(sk_workers));
        atomic_write(sk_out, write_sweep_csv(records));
        std::printf("wrote %s: %zu records\n", sk_out.c_str(), records.size());
        return 0;
    }

    if (sweepb->parsed()) {
        const Graph g = read_graph_file(sb.graph_path);
        CalibrationModel model;
        SolveConfig cfg;
        cfg.delta = sb.delta;
        cfg.seeds = expand_seeds(sb.seed, sb.samples);
        cfg.workers = resolve_workers(sb.workers);
        if (!sb.calib_path.empty()) {
            model = read_calibration_file(sb.calib_path);
            cfg.calibration = &model;
        }
        if (sb_alpha_opt->count() > 0) cfg.alpha_override = sb.alpha;
        BudgetSweepOptions opts;
        opts.with_random = sb_with_random;
        opts.random_trials = sb_random_trials;
        opts.random_seed = sb.seed;
        auto rows = budget_sweep(g, sb.graph_path, sb_fractions, cfg, opts);
        if (sb.stable_output)
            for (auto& row : rows) row.runtime_ms = 0.0;
        atomic_write(sb_out, write_metrics_csv(rows));
        std::printf("wrote %s: %zu rows\n", sb_out.c_str(), rows.size());
        return 0;
    }

    if (cal->parsed()) {
        std::vector<Graph> graphs;
        std::vector<std::string> ids;
        for (const auto& path : cal_graphs) {
            graphs.push_back(read_graph_file(path));
            ids.push_back(path);
        }
        const auto seeds = expand_seeds(cal_seed, cal_samples);
        std::vector<SweepRecord> sweeps;
        const CalibrationModel model =
            calibrate_corpus(graphs, ids, cal_kmin, cal_kmax, seeds,
                             resolve_workers(cal_workers), &sweeps);
        atomic_write(cal_out, save_calibration(model));
        if (!cal_sweep_out.empty()) atomic_write(cal_sweep_out, write_sweep_csv(sweeps));
        std::printf("wrote %s: r2_slope=%.4f r2_alpha=%.4f t_range=[%.4f, %.4f]\n",
                    cal_out.c_str(), model.r2_slope, model.r2_alpha, model.t_min, model.t_max);
        return 0;
    }

    if (base->parsed()) {
        const Graph g = read_graph_file(ba_graph);
        const int budget = checked_budget(ba_budget_opt->count() > 0, ba_budget,
                                          ba_frac_opt->count() > 0, ba_frac, g.edge_count());
        MetricsRow row = random_baseline(g, budget, ba_trials, ba_seed);
        row.graph_id = ba_graph;
        if (!ba_out.empty()) atomic_write(ba_out, write_metrics_csv({row}));
        std::printf("method=random budget=%d mean_lcc=%.2f best_lcc=%d trials=%d\n", budget,
                    row.lcc, row.lcc_best, ba_trials);
        return 0;
    }

    if (scal->parsed()) {
        std::vector<GenSpec> specs;
        for (const auto& text : scal_specs) specs.push_back(parse_gen_spec(text));
        const auto seeds = expand_seeds(scal_seed, scal_samples);
        const ScalingResult result =
            runtime_scaling(specs, scal_k, seeds, resolve_workers(scal_workers));
        std::string csv = "V,E,median_ms\n";
        char buf[96];
        for (const auto& row : result.rows) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.9g\n", row.vertex_count, row.edge_count,
                          row.median_ms);
            csv += buf;
        }
        if (!scal_out.empty()) atomic_write(scal_out, csv);
        for (const auto& row : result.rows)
            std::printf("V=%d E=%d median_ms=%.2f\n", row.vertex_count, row.edge_count,
                        row.median_ms);
        if (result.slope)
            std::printf("loglog_slope=%.3f\n", *result.slope);
        else
            std::printf("loglog_slope=undefined (need >= 2 distinct sizes)\n");
        return 0;
    }

    if (spd->parsed()) {
        const Graph g = read_graph_file(spd_graph);
        const auto seeds = expand_seeds(spd_seed, spd_samples);
        const auto rows = speedup_report(g, spd_ks, seeds, spd_pvals);
        if (!spd_out.empty()) atomic_write(spd_out, write_speedup_csv(rows));
        for (const auto& row : rows)
            std::printf("p=%d T_ms=%.2f S_p=%.2f E_p=%.2f\n", row.workers, row.median_ms,
                        row.speedup, row.efficiency);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
