// Acceptance runner: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset; exit status is nonzero if any selected one fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkhide/gadget.hpp"
#include "linkhide/harness.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace linkhide;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

Verdict from(const props::Outcome& o, const std::string& what) {
    return {o.ok(), fmt("%zu %s, %zu violations", o.cases, what.c_str(), o.violations) +
                        (o.first.empty() ? "" : "; first: " + o.first)};
}

// 1 ------------------------------------------------------------------------

Verdict local_correctness() {
    const auto t0 = Clock::now();
    std::size_t bad = 0, checks = 0;
    std::string first;
    auto note = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok && bad++ == 0)
            first = what;
    };

    // path a-b-c-d: d(a)=1, d(c)=2, the pair (a,c) shares b (degree 2)
    Graph path(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
    const double expect[9] = {1.0, 1.0 / std::sqrt(2.0), 0.5, 2.0 / 3.0, 1.0,
                              0.5, 0.5, 1.0 / std::log(2.0), 0.5};
    for (std::size_t i = 0; i < 9; ++i) {
        const double s = local_score(path, Edge(0, 2), kAllLocalIndices[i]);
        note(std::abs(s - expect[i]) <= 1e-12, fmt("path %s = %.17g", name(kAllLocalIndices[i]).data(), s));
    }

    Rng rng(101);
    for (int gi = 0; gi < 200; ++gi) {
        const std::size_t n = 2 + rng.below(29);
        const Graph g = oracle::random_graph(n, 0.05 + 0.5 * rng.uniform(), rng);
        for (auto k : kAllLocalIndices)
            for (const auto& sp : local_score_all(g, k)) {
                const double ref = oracle::local(g, sp.pair.a, sp.pair.b, k);
                note(std::abs(sp.score - ref) <= 1e-12 * std::max(1.0, std::abs(ref)),
                     fmt("graph %d %s (%u,%u): %.17g vs %.17g", gi, name(k).data(), unsigned(sp.pair.a),
                         unsigned(sp.pair.b), sp.score, ref));
            }
    }
    const double t = seconds_since(t0);
    note(t < 10.0, "too slow");
    return {bad == 0, fmt("%zu checks, %zu mismatches, %.2f s (< 10 s)", checks, bad, t) +
                          (first.empty() ? "" : "; first: " + first)};
}

// 2 ------------------------------------------------------------------------

Verdict theorem2() {
    const auto t0 = Clock::now();
    auto v = from(props::theorem2(1000, 202), "configurations x 9 indices");
    const double t = seconds_since(t0);
    v.pass = v.pass && t < 30.0;
    v.detail += fmt(", %.2f s (< 30 s)", t);
    return v;
}

// 3 ------------------------------------------------------------------------

Verdict factor_signs() {
    std::size_t cases = 0, violations = 0;
    std::string first;
    std::uint64_t seed = 303;
    for (auto type : {props::Type::One, props::Type::Two, props::Type::Three})
        for (auto k : kAllLocalIndices) {
            const auto o = props::factor_suite(type, k, 500, seed++);
            cases += o.cases;
            if (o.cases != 500 && first.empty())
                first = fmt("only %zu cases for %s", o.cases, name(k).data());
            if (o.violations && first.empty())
                first = o.first;
            violations += o.violations;
        }
    return {violations == 0 && cases == 3 * 9 * 500 && first.empty(),
            fmt("%zu cases (500 per type per index), %zu violations", cases, violations) +
                (first.empty() ? "" : "; first: " + first)};
}

// 4 ------------------------------------------------------------------------

Verdict metric_equivalence() {
    Rng rng(404);
    std::size_t bad = 0;
    double worst = 0;
    for (int c = 0; c < 1000; ++c) {
        ScoredRanking r;
        const std::size_t levels = 1 + rng.below(6);  // few distinct values: many ties
        for (std::size_t i = 0, nq = 1 + rng.below(20); i < nq; ++i)
            r.probe.push_back(double(rng.below(levels)) * 0.5);
        for (std::size_t i = 0, nx = 1 + rng.below(60); i < nx; ++i)
            r.rest.push_back(double(rng.below(levels)) * 0.5);
        if (rng.bernoulli(0.4)) {
            r.implicit_rest = rng.below(30);
            r.implicit_score = 0.0;
        }
        std::vector<double> x = r.rest;
        x.insert(x.end(), std::size_t(r.implicit_rest), r.implicit_score);
        const double da = std::abs(auc(r) - oracle::auc(r.probe, x));
        const double dp = std::abs(average_precision(r) - oracle::ap(r.probe, x));
        worst = std::max({worst, da, dp});
        bad += da > 1e-12 || dp > 1e-12;
    }
    return {bad == 0, fmt("1000 tie-laden rankings, %zu beyond 1e-12, max |diff| %.3g", bad, worst)};
}

// 5 ------------------------------------------------------------------------

Verdict naive_fast() { return from(props::naive_fast_equivalence(500, 505), "instances"); }

// 6 ------------------------------------------------------------------------

// Single-link instances: the oracle over the evader's own moves bounds every
// heuristic, and every chosen move touches the evader.
props::Outcome single_link_oracle(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    props::Outcome out;
    while (out.cases < count) {
        const std::size_t n = 5 + rng.below(6);
        const Graph g = oracle::random_graph(n, 0.3 + 0.3 * rng.uniform(), rng);
        if (g.non_edge_count() <= 4 || g.edge_count() == 0)  // X stays nonempty for b <= 3
            continue;
        const Scorer sc = props::random_local(rng);
        const Edge pair = top_ranked_non_edges(g, sc, 1).front();
        const NodeId ev = rng.bernoulli(0.5) ? pair.a : pair.b;
        const auto inst = single_link_instance(g, sc, pair, ev, rng.below(4));
        ++out.cases;
        const auto opt = brute_force_optimum(inst);
        const std::string tag = "single-link case " + std::to_string(out.cases) + ": ";
        for (Heuristic h : {Heuristic::CTR, Heuristic::OTC, Heuristic::Alternating}) {
            const auto plan = run_heuristic(h, inst, {.track_metrics = false}).plan;
            for (const auto& s : plan.steps)
                if (!s.edge.touches(ev))
                    out.fail(tag + "move " + props::pair_str(s.edge) + " does not touch the evader");
            if (opt.value > instance_metric(inst, apply(inst.graph, plan)))
                out.fail(tag + "optimum worse than a heuristic");
        }
        if (opt.value > instance_metric(inst, inst.graph))
            out.fail(tag + "optimum worse than doing nothing");
    }
    return out;
}

Verdict oracle_dominance() {
    const auto a = props::oracle_dominance(200, 606);
    const auto b = single_link_oracle(100, 607);
    return {a.ok() && b.ok(),
            fmt("%zu instances (2 enumeration orders), %zu violations; %zu single-link instances, %zu "
                "violations",
                a.cases, a.violations, b.cases, b.violations) +
                (a.first.empty() ? "" : "; " + a.first) + (b.first.empty() ? "" : "; " + b.first)};
}

// 7 ------------------------------------------------------------------------

Verdict gadget() {
    const std::vector<std::vector<int>> subsets{{}, {0}, {1}, {0, 1}};
    int passed = 0, total = 0;
    std::string first;
    for (auto k : kAllLocalIndices)
        for (const auto& a : subsets) {
            ++total;
            const GadgetSpec spec{proof_constant(k), 5, {{1, 2, 3}, {3, 4, 5}}};
            const auto rep = verify_lemma1(spec, k, a);
            if (rep.passed())
                ++passed;
            else if (first.empty())
                first = std::string(name(k)) + ": " +
                        (rep.counterexamples.empty() ? "?" : rep.counterexamples.front());
        }
    return {passed == total, fmt("%d/%d (index, subset) combinations pass points (a)-(c) and degree audits",
                                 passed, total) +
                                 (first.empty() ? "" : "; first: " + first)};
}

// 8 / 11 -------------------------------------------------------------------

ExperimentConfig fig3_config(Heuristic h) {
    ExperimentConfig cfg;
    cfg.network = NetworkModel{ScaleFree{100, 3}};
    cfg.indices.assign(kAllLocalIndices.begin(), kAllLocalIndices.end());
    cfg.heuristic = h;
    cfg.hidden = HiddenStrategy::RemoveRandomEdges;
    cfg.repetitions = 50;
    cfg.seed = 2024;
    return cfg;
}

std::string fig3_csv(Heuristic h, TrajectoryExperiment* keep = nullptr) {
    const auto cfg = fig3_config(h);
    auto res = run_trajectory_experiment(cfg);
    std::ostringstream out;
    write_trajectory_csv(out, cfg, res);
    if (keep)
        *keep = std::move(res);
    return out.str();
}

std::string fig3_ctr, fig3_otc;  // kept for the determinism check

/// Paired per-repetition change final - initial for one index.
MeanCI paired_change(const std::vector<Trajectory>& reps, bool use_auc) {
    std::vector<double> d;
    for (const auto& t : reps) {
        const auto& a = t.points.front();
        const auto& b = t.points.back();
        d.push_back(use_auc ? b.auc - a.auc : b.ap - a.ap);
    }
    return mean_ci(d);
}

Verdict fig3() {
    const auto t0 = Clock::now();
    TrajectoryExperiment ctr, otc;
    fig3_ctr = fig3_csv(Heuristic::CTR, &ctr);
    fig3_otc = fig3_csv(Heuristic::OTC, &otc);
    int ctr_ok = 0, otc_ok = 0;
    std::string detail;
    for (std::size_t k = 0; k < 9; ++k) {
        const auto c = paired_change(ctr.raw[k], true);
        const auto o = paired_change(otc.raw[k], false);
        ctr_ok += c.mean + c.half_width < 0;
        otc_ok += o.mean + o.half_width < 0;
        detail += fmt(" %s:dAUC=%.4f±%.4f,dAP=%.4f±%.4f", name(kAllLocalIndices[k]).data(), c.mean,
                      c.half_width, o.mean, o.half_width);
    }
    const double t = seconds_since(t0);
    return {ctr_ok == 9 && otc_ok >= 7 && t < 600.0,
            fmt("CTR dAUC<0 (CI excludes 0) %d/9, OTC dAP<0 (CI excludes 0) %d/9 (need 9 and >=7), "
                "%.1f s (< 600 s);",
                ctr_ok, otc_ok, t) +
                detail};
}

Verdict determinism() {
    if (fig3_ctr.empty())
        fig3();
    const bool same = fig3_csv(Heuristic::CTR) == fig3_ctr && fig3_csv(Heuristic::OTC) == fig3_otc;
    return {same, fmt("re-ran the Fig-3 experiments (CTR %zu bytes, OTC %zu bytes): %s", fig3_ctr.size(),
                      fig3_otc.size(), same ? "byte-identical" : "DIFFERENT")};
}

// 9 ------------------------------------------------------------------------

Verdict fig4() {
    const auto t0 = Clock::now();
    SweepConfig cfg;
    cfg.family = "sf";
    cfg.ns = {200, 400, 600, 800, 1000};
    cfg.ds = {2, 4, 6, 8, 10};
    cfg.indices.assign(kAllLocalIndices.begin(), kAllLocalIndices.end());
    cfg.heuristics = {Heuristic::CTR};
    cfg.sizes = {100, 400};
    cfg.repetitions = 10;
    cfg.seed = 909;
    const auto res = run_tolerance_sweep(cfg);

    // Index-averaged marginal curves (the decision rule), plus per-index for the record.
    auto curve = [](const std::vector<SweepMarginal>& ms, std::size_t k, const std::vector<std::size_t>& keys) {
        std::vector<double> ys;
        for (std::size_t key : keys) {
            double s = 0;
            int c = 0;
            for (const auto& m : ms)
                if (m.key == key && (k == 9 || m.index == Scorer(kAllLocalIndices[k]))) {
                    s += std::abs(m.auc_relative);
                    ++c;
                }
            ys.push_back(s / c);
        }
        return ys;
    };
    std::vector<double> xn(cfg.ns.begin(), cfg.ns.end()), xd(cfg.ds.begin(), cfg.ds.end());
    const double rn = spearman(xn, curve(res.by_n, 9, cfg.ns));
    const double rd = spearman(xd, curve(res.by_d, 9, cfg.ds));
    int neg_n = 0, pos_d = 0;
    std::string per;
    for (std::size_t k = 0; k < 9; ++k) {
        const double a = spearman(xn, curve(res.by_n, k, cfg.ns));
        const double b = spearman(xd, curve(res.by_d, k, cfg.ds));
        neg_n += a < 0;
        pos_d += b > 0;
        per += fmt(" %s:%.2f/%.2f", name(kAllLocalIndices[k]).data(), a, b);
    }
    const double t = seconds_since(t0);
    return {rn < 0 && rd > 0 && t < 7200.0,
            fmt("index-averaged |dAUC_rel|: rho(n)=%.3f (need <0), rho(d)=%.3f (need >0); per index "
                "rho(n)<0 %d/9, rho(d)>0 %d/9; %.1f s;",
                rn, rd, neg_n, pos_d, t) +
                per};
}

// 10 -----------------------------------------------------------------------

Verdict runtime() {
    BenchConfig ctr;
    ctr.ns = {100000};
    ctr.heuristics = {Heuristic::CTR};
    ctr.seed = 1010;
    auto t0 = Clock::now();
    const auto ctr_rows = run_runtime_benchmark(ctr);
    const double ctr_total = seconds_since(t0);

    BenchConfig otc;
    otc.ns = {100, 1000, 10000};
    otc.heuristics = {Heuristic::OTC};
    otc.seed = 1010;
    t0 = Clock::now();
    const auto otc_rows = run_runtime_benchmark(otc);
    const double otc_total = seconds_since(t0);

    bool monotone = true;
    std::string grid;
    for (std::size_t i = 0; i < otc_rows.size(); ++i) {
        grid += fmt(" n=%zu:%.3fs", otc_rows[i].n, otc_rows[i].seconds.mean);
        if (i && !(otc_rows[i].seconds.mean > otc_rows[i - 1].seconds.mean))
            monotone = false;
    }
    // End-to-end bounds are checked on wall time including generation.
    return {ctr_total < 60.0 && otc_total < 900.0 && monotone,
            fmt("CTR sf:100000,3 %.2f s end-to-end (core %.4f s, %.0f steps; < 60 s); OTC sf:n,3 total "
                "%.1f s (< 900 s), monotone %s:",
                ctr_total, ctr_rows[0].seconds.mean, ctr_rows[0].steps, otc_total,
                monotone ? "yes" : "no") +
                grid};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"local-index correctness", local_correctness},
        {"monotonicity property (1000 configurations)", theorem2},
        {"factor sign suite", factor_signs},
        {"metric equivalence", metric_equivalence},
        {"naive/fast heuristic equivalence", naive_fast},
        {"oracle dominance", oracle_dominance},
        {"gadget ranking lemma", gadget},
        {"scale-free trajectories (CTR dAUC, OTC dAP)", fig3},
        {"tolerance sweep trends", fig4},
        {"runtime bounds", runtime},
        {"determinism", determinism},
    };
    std::set<int> chosen;
    for (int i = 1; i < argc; ++i)
        chosen.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = int(i) + 1;
        if (!chosen.empty() && !chosen.count(id))
            continue;
        const auto t0 = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("[%s] %2d %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first,
                    seconds_since(t0), v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
