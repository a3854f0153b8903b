#include "skelcut/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "skelcut/planar_gen.hpp"
#include "skelcut/solver.hpp"

namespace skelcut {

void CalibrationModel::require_covers(double t) const {
    if (covers(t)) return;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "density t = %.6g outside the calibrated range [%.6g, %.6g] (5%% slack); "
                  "refusing to extrapolate",
                  t, t_min, t_max);
    throw std::domain_error(buf);
}

std::string save_calibration(const CalibrationModel& m) {
    nlohmann::json out;
    out["c0"] = m.c0;
    out["c1"] = m.c1;
    out["B0"] = m.b0;
    out["gamma"] = m.gamma;
    out["beta1"] = m.beta1;
    out["beta2"] = m.beta2;
    out["t_range"] = {m.t_min, m.t_max};
    out["r2_slope"] = m.r2_slope;
    out["r2_alpha"] = m.r2_alpha;
    out["corpus"] = m.corpus;
    return out.dump(2) + "\n";
}

CalibrationModel load_calibration(const std::string& json_text) {
    nlohmann::json in;
    try {
        in = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("calibration file is not valid JSON: ") + e.what());
    }
    CalibrationModel m;
    try {
        m.c0 = in.at("c0").get<double>();
        m.c1 = in.at("c1").get<double>();
        m.b0 = in.at("B0").get<double>();
        m.gamma = in.at("gamma").get<double>();
        m.beta1 = in.at("beta1").get<double>();
        m.beta2 = in.at("beta2").get<double>();
        m.t_min = in.at("t_range").at(0).get<double>();
        m.t_max = in.at("t_range").at(1).get<double>();
        m.r2_slope = in.at("r2_slope").get<double>();
        m.r2_alpha = in.at("r2_alpha").get<double>();
        m.corpus = in.value("corpus", std::string{});
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("calibration file is missing fields: ") + e.what());
    }
    if (!(m.t_min > 0.0) || !(m.t_max >= m.t_min))
        throw std::runtime_error("calibration file has an invalid t_range");
    return m;
}

CalibrationModel read_calibration_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open calibration file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return load_calibration(body.str());
}

std::vector<SweepRecord> sweep_k(const Graph& g, const std::string& graph_id, int k_min,
                                 int k_max, std::span<const uint64_t> seeds, int workers) {
    if (k_min < 2 || k_min > k_max || k_max > g.vertex_count())
        throw std::invalid_argument("sweep_k: need 2 <= k_min <= k_max <= |V|");
    if (seeds.empty()) throw std::invalid_argument("sweep_k: need at least one seed");
    const double t = density_feature(g);
    const int m = static_cast<int>(seeds.size());

    std::vector<SweepRecord> out;
    for (int k = k_min; k <= k_max; ++k) {
        // One subproblem per k; the worker pool parallelizes over seeds.
        const CutSolution best = solve_subproblem(g, k, seeds, workers);
        // Aggregate statistics need every trial, not just the winner.
        double f_sum = 0.0, f_sq = 0.0, l_sum = 0.0, l_sq = 0.0;
        for (int si = 0; si < m; ++si) {
            const SpanningTree tree = sample_ust(g, seeds[si]);
            const Partition part = balanced_partition(tree, k);
            const int lcc = *std::max_element(part.class_sizes.begin(), part.class_sizes.end());
            int cut = 0;
            for (const auto& [u, v] : g.edges())
                if (part.class_of[u] != part.class_of[v]) ++cut;
            f_sum += cut;
            f_sq += static_cast<double>(cut) * cut;
            l_sum += lcc;
            l_sq += static_cast<double>(lcc) * lcc;
        }
        SweepRecord rec;
        rec.graph_id = graph_id;
        rec.vertex_count = g.vertex_count();
        rec.edge_count = g.edge_count();
        rec.t = t;
        rec.k = k;
        rec.f_selected = best.cut_edges.size();
        rec.lcc_selected = best.lcc;
        rec.f_mean = f_sum / m;
        rec.f_std = std::sqrt(std::max(0.0, f_sq / m - rec.f_mean * rec.f_mean));
        rec.lcc_mean = l_sum / m;
        rec.lcc_std = std::sqrt(std::max(0.0, l_sq / m - rec.lcc_mean * rec.lcc_mean));
        rec.seed_count = m;
        out.push_back(std::move(rec));
    }
    return out;
}

std::string write_sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = "graph,V,E,t,k,F_mean,F_std,lcc_mean,lcc_std,seeds\n";
    char buf[256];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%s,%d,%d,%.9g,%d,%.9g,%.9g,%.9g,%.9g,%d\n",
                      r.graph_id.c_str(), r.vertex_count, r.edge_count, r.t, r.k, r.f_mean,
                      r.f_std, r.lcc_mean, r.lcc_std, r.seed_count);
        out += buf;
    }
    return out;
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares y = slope*x + intercept. r2 is defined as 1 for an
// exact fit of constant data.
LineFit ols_line(const std::vector<double>& x, const std::vector<double>& y) {
    const int n = static_cast<int>(x.size());
    double sx = 0, sy = 0;
    for (int i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0)
        throw std::invalid_argument("ols_line: regressor does not vary");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0, ss_tot = 0;
    for (int i = 0; i < n; ++i) {
        const double e = y[i] - (fit.slope * x[i] + fit.intercept);
        ss_res += e * e;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-12 ? 1.0 : 0.0);
    return fit;
}

}  // namespace

SlopeFit fit_slope(const std::vector<SweepRecord>& records) {
    // Group by graph, preserving first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::map<int, double>> by_graph;  // id -> k -> F_mean
    std::map<std::string, double> t_of;
    for (const auto& r : records) {
        if (!by_graph.count(r.graph_id)) order.push_back(r.graph_id);
        by_graph[r.graph_id][r.k] = r.f_mean;
        t_of[r.graph_id] = r.t;
    }

    std::vector<double> log_t, slopes;
    for (const auto& id : order) {
        const auto& ks = by_graph[id];
        if (!ks.count(2))
            throw std::invalid_argument("fit_slope: graph " + id + " has no k=2 record");
        if (ks.size() < 3)
            throw std::invalid_argument("fit_slope: graph " + id +
                                        " needs records for at least 3 distinct k");
        const double f2 = ks.at(2);
        // Through-the-anchor least squares of F_k - F_2 on k - 2.
        double num = 0.0, den = 0.0;
        for (const auto& [k, fk] : ks) {
            num += (k - 2) * (fk - f2);
            den += static_cast<double>(k - 2) * (k - 2);
        }
        slopes.push_back(num / den);
        log_t.push_back(std::log(t_of[id]));
    }

    const double lo = *std::min_element(log_t.begin(), log_t.end());
    const double hi = *std::max_element(log_t.begin(), log_t.end());
    if (!(hi > lo))
        throw std::invalid_argument(
            "fit_slope: need graphs at two or more distinct densities to fit s(t)");

    const LineFit line = ols_line(log_t, slopes);

    // Pooled r2 over every record against the full two-stage prediction
    // F_2 + s(t) (k - 2), clamped into [0, 1].
    double mean_f = 0.0;
    for (const auto& r : records) mean_f += r.f_mean;
    mean_f /= static_cast<double>(records.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& r : records) {
        const double s = line.slope * std::log(r.t) + line.intercept;
        const double pred = by_graph[r.graph_id].at(2) + s * (r.k - 2);
        ss_res += (r.f_mean - pred) * (r.f_mean - pred);
        ss_tot += (r.f_mean - mean_f) * (r.f_mean - mean_f);
    }
    const double r2 = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0)
                                   : (ss_res <= 1e-12 ? 1.0 : 0.0);
    return SlopeFit{line.slope, line.intercept, r2};
}

AlphaFit fit_alpha(const std::vector<AlphaRecord>& records) {
    const int m = static_cast<int>(records.size());
    if (m < 8) throw std::invalid_argument("fit_alpha: need at least 8 records");
    for (const auto& r : records)
        if (r.cut < 1 || r.f2 < 1 || !(r.t > 0.0) || !(r.alpha_star > 0.0))
            throw std::invalid_argument("fit_alpha: records must have positive fields");

    // Normal equations for ln a* = q0 + q1 ln t + q2 ln cut + q3 ln f2.
    double a[4][4] = {};
    double b[4] = {};
    std::vector<std::array<double, 4>> rows(m);
    std::vector<double> y(m);
    for (int i = 0; i < m; ++i) {
        rows[i] = {1.0, std::log(records[i].t), std::log(static_cast<double>(records[i].cut)),
                   std::log(static_cast<double>(records[i].f2))};
        y[i] = std::log(records[i].alpha_star);
        for (int p = 0; p < 4; ++p) {
            b[p] += rows[i][p] * y[i];
            for (int q = 0; q < 4; ++q) a[p][q] += rows[i][p] * rows[i][q];
        }
    }

    // Gaussian elimination with partial pivoting; a tiny pivot means some
    // regressor is (nearly) constant or collinear across the corpus.
    double scale = 0.0;
    for (auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    int perm[4] = {0, 1, 2, 3};
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[perm[r]][col]) > std::abs(a[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double d = a[perm[col]][col];
        if (std::abs(d) <= scale * 1e-12)
            throw std::invalid_argument(
                "fit_alpha: degenerate design (a regressor is constant or collinear); vary the "
                "corpus");
        for (int r = col + 1; r < 4; ++r) {
            const double f = a[perm[r]][col] / d;
            for (int c = col; c < 4; ++c) a[perm[r]][c] -= f * a[perm[col]][c];
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    double q[4];
    for (int col = 3; col >= 0; --col) {
        double v = b[perm[col]];
        for (int c = col + 1; c < 4; ++c) v -= a[perm[col]][c] * q[c];
        q[col] = v / a[perm[col]][col];
    }

    AlphaFit fit;
    fit.b0 = std::exp(q[0]);
    fit.gamma = -q[1];
    fit.beta1 = q[2];
    fit.beta2 = -q[3];

    double my = 0.0;
    for (double v : y) my += v;
    my /= m;
    double ss_res = 0.0, ss_tot = 0.0;
    for (int i = 0; i < m; ++i) {
        double pred = 0.0;
        for (int p = 0; p < 4; ++p) pred += rows[i][p] * q[p];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-12 ? 1.0 : 0.0);
    return fit;
}

std::vector<AlphaRecord> build_alpha_records(const Graph& g, std::span<const int> cuts,
                                             std::span<const uint64_t> seeds, int workers) {
    if (seeds.empty()) throw std::invalid_argument("build_alpha_records: need seeds");
    const int n = g.vertex_count();
    if (n < 2) return {};
    const double t = density_feature(g);
    const CutSolution bisection = baseline_bisection(g, seeds, workers);
    const int f2 = bisection.cut_edges.size();

    // Candidate detachments per subgraph size, reusable across cut budgets:
    // (boundary size, residual lcc) for each bisection class and the whole
    // grown subgraph.
    struct Option {
        int cut;
        int lcc;
        double alpha;
    };
    std::vector<Option> options;
    for (int n_s = 2; n_s <= n; n_s += 2) {
        const auto grown = grow_subgraph(g, n_s);
        const auto sub = induced_subgraph(g, grown);
        const CutSolution split = solve_subproblem(sub.graph, 2, seeds, workers);
        std::vector<std::vector<char>> marks(3, std::vector<char>(n, 0));
        for (int i = 0; i < sub.graph.vertex_count(); ++i) {
            marks[split.class_of[i] == 0 ? 0 : 1][sub.to_host[i]] = 1;
            marks[2][sub.to_host[i]] = 1;
        }
        const double alpha = static_cast<double>(n_s) / n;
        for (const auto& mark : marks) {
            const EdgeSet cut = boundary_edges(g, mark);
            if (cut.empty()) continue;
            options.push_back({cut.size(), components(g, cut).lcc, alpha});
        }
    }

    std::vector<AlphaRecord> out;
    for (int budget : cuts) {
        if (budget < 1 || budget >= f2) continue;  // the alpha model covers small budgets only
        bool found = false;
        Option best{};
        for (const auto& opt : options) {
            if (opt.cut > budget) continue;
            if (!found || opt.lcc < best.lcc ||
                (opt.lcc == best.lcc && opt.alpha < best.alpha)) {
                found = true;
                best = opt;
            }
        }
        // A budget that nothing improves (best residual is the whole graph)
        // carries no signal about the right subgraph size.
        if (!found || best.lcc >= n) continue;
        out.push_back({budget, t, f2, best.alpha});
    }
    return out;
}

CalibrationModel calibrate_corpus(std::span<const Graph> graphs,
                                  std::span<const std::string> ids, int k_min, int k_max,
                                  std::span<const uint64_t> seeds, int workers,
                                  std::vector<SweepRecord>* sweeps_out) {
    if (graphs.empty()) throw std::invalid_argument("calibrate_corpus: empty corpus");
    if (graphs.size() != ids.size())
        throw std::invalid_argument("calibrate_corpus: one id per graph required");

    std::vector<SweepRecord> sweeps;
    std::vector<AlphaRecord> alphas;
    double t_min = 0.0, t_max = 0.0;
    for (size_t i = 0; i < graphs.size(); ++i) {
        const Graph& g = graphs[i];
        const double t = density_feature(g);
        t_min = i == 0 ? t : std::min(t_min, t);
        t_max = i == 0 ? t : std::max(t_max, t);

        const int hi = std::min(k_max, g.vertex_count());
        auto recs = sweep_k(g, ids[i], k_min, hi, seeds, workers);
        sweeps.insert(sweeps.end(), recs.begin(), recs.end());

        // Probe budgets below the bisection cut: every value when f2 is
        // small, quartiles when it is large.
        const CutSolution bisection = baseline_bisection(g, seeds, workers);
        const int f2 = bisection.cut_edges.size();
        std::vector<int> cuts;
        if (f2 <= 5) {
            for (int c = 1; c < f2; ++c) cuts.push_back(c);
        } else {
            cuts = {(f2 + 3) / 4, f2 / 2, (3 * f2) / 4};
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        }
        auto recs2 = build_alpha_records(g, cuts, seeds, workers);
        alphas.insert(alphas.end(), recs2.begin(), recs2.end());
    }

    const SlopeFit slope = fit_slope(sweeps);
    const AlphaFit alpha = fit_alpha(alphas);

    CalibrationModel model;
    model.c0 = slope.c0;
    model.c1 = slope.c1;
    model.r2_slope = slope.r2;
    model.b0 = alpha.b0;
    model.gamma = alpha.gamma;
    model.beta1 = alpha.beta1;
    model.beta2 = alpha.beta2;
    model.r2_alpha = alpha.r2;
    model.t_min = t_min;
    model.t_max = t_max;
    model.corpus = std::to_string(graphs.size()) + " graphs, k in [" + std::to_string(k_min) +
                   ", " + std::to_string(k_max) + "], " + std::to_string(seeds.size()) +
                   " seeds";
    if (sweeps_out) *sweeps_out = std::move(sweeps);
    return model;
}

}  // namespace skelcut
