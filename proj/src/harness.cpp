#include "linkhide/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace linkhide {

namespace {

// Runs fn(0..count-1) on a small worker pool. Each call writes only its own
// result slot, so the outcome does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = unsigned(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::string num(double x) {
    if (std::isnan(x))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

// RFC 4180 quoting for fields such as "sf:100,3".
std::string csv_field(const std::string& x) {
    if (x.find_first_of(",\"\n") == std::string::npos)
        return x;
    std::string q = "\"";
    for (char ch : x)
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + '"';
}

std::string rule_text(const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("paper");
}

void require_indices(const std::vector<Scorer>& xs) {
    if (xs.empty())
        throw std::invalid_argument("at least one similarity index is required");
}

void check_global_guard(const std::vector<Scorer>& xs, std::size_t n) {
    for (const auto& x : xs)
        if (is_global(x) && n > kMaxGlobalNodes)
            throw InstanceError("global index " + scorer_name(x) + " requires at most " +
                                std::to_string(kMaxGlobalNodes) + " nodes; network has " +
                                std::to_string(n));
}

struct ModelEcho {
    std::string n;
    std::string d;
};

ModelEcho echo(const NetworkSource& src, std::size_t loaded_nodes) {
    if (const auto* m = std::get_if<NetworkModel>(&src))
        return std::visit(
            [](const auto& x) {
                std::string d;
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, RandomGraph>)
                    d = num(x.d);
                else
                    d = std::to_string(x.d);
                return ModelEcho{std::to_string(x.n), d};
            },
            *m);
    return {std::to_string(loaded_nodes), ""};
}

// Network for one repetition: a fresh draw for models, the shared file graph otherwise.
Graph network_for_rep(const NetworkSource& src, const Graph* loaded, Rng& rng) {
    if (const auto* m = std::get_if<NetworkModel>(&src))
        return generate({*m, rng.next()});
    return *loaded;
}

std::optional<Graph> load_if_file(const NetworkSource& src) {
    if (const auto* p = std::get_if<std::filesystem::path>(&src))
        return load_edge_list(*p).graph;
    return std::nullopt;
}

std::size_t source_nodes(const NetworkSource& src, const std::optional<Graph>& loaded) {
    if (const auto* m = std::get_if<NetworkModel>(&src))
        return model_nodes(*m);
    return loaded->node_count();
}

std::vector<AggregatedRow> aggregate(const std::vector<Trajectory>& reps, std::size_t length) {
    std::vector<AggregatedRow> rows;
    std::vector<double> auc(reps.size()), ap(reps.size());
    for (std::size_t it = 0; it < length; ++it) {
        for (std::size_t r = 0; r < reps.size(); ++r) {
            auc[r] = reps[r].points[it].auc;
            ap[r] = reps[r].points[it].ap;
        }
        rows.push_back({it, mean_ci(auc), mean_ci(ap)});
    }
    return rows;
}

std::vector<Edge> sample_without_replacement(std::vector<Edge> pool, std::size_t count, Rng& rng) {
    for (std::size_t i = 0; i < count; ++i)
        std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view name(HiddenStrategy s) {
    switch (s) {
    case HiddenStrategy::RemoveRandomEdges: return "remove-random-edges";
    case HiddenStrategy::RandomNonEdges: return "random-nonedges";
    case HiddenStrategy::TopRanked: return "top-ranked-nonedges";
    }
    return "?";
}

std::optional<HiddenStrategy> parse_hidden_strategy(std::string_view text) {
    if (text == "remove-random-edges")
        return HiddenStrategy::RemoveRandomEdges;
    if (text == "random-nonedges")
        return HiddenStrategy::RandomNonEdges;
    if (text == "top-ranked-nonedges" || text == "top")
        return HiddenStrategy::TopRanked;
    return std::nullopt;
}

std::string_view name(Heuristic h) {
    switch (h) {
    case Heuristic::CTR: return "ctr";
    case Heuristic::OTC: return "otc";
    case Heuristic::Alternating: return "alt";
    }
    return "?";
}

std::optional<Heuristic> parse_heuristic(std::string_view text) {
    if (text == "ctr")
        return Heuristic::CTR;
    if (text == "otc")
        return Heuristic::OTC;
    if (text == "alt")
        return Heuristic::Alternating;
    return std::nullopt;
}

NetworkSource parse_network(std::string_view text) {
    if (text.starts_with("sf:") || text.starts_with("sw:") || text.starts_with("er:"))
        return parse_model(text);
    return std::filesystem::path(std::string(text));
}

std::string network_string(const NetworkSource& src) {
    if (const auto* m = std::get_if<NetworkModel>(&src))
        return model_string(*m);
    return std::get<std::filesystem::path>(src).string();
}

std::size_t SizeRules::resolve_hidden(std::size_t edges) const {
    const std::size_t h = hidden_size ? *hidden_size : std::max<std::size_t>(10, edges / 100);
    if (h == 0)
        throw InstanceError("hidden-set size must be positive");
    return h;
}

std::size_t SizeRules::resolve_budget(std::size_t hidden) const {
    return budget ? *budget : 4 * hidden;
}

HiddenSelection select_hidden(const Graph& g, HiddenStrategy strategy, std::size_t count, Rng& rng,
                              const Scorer& ranking_index, const GlobalParams& params) {
    if (count == 0)
        throw InstanceError("hidden-set size must be positive");
    HiddenSelection sel{g, {}};
    switch (strategy) {
    case HiddenStrategy::RemoveRandomEdges: {
        if (g.edge_count() < count)
            throw InstanceError("cannot hide " + std::to_string(count) + " edges: network has only " +
                                std::to_string(g.edge_count()));
        sel.hidden = sample_without_replacement(g.edges(), count, rng);
        for (const auto& e : sel.hidden)
            sel.graph.remove_edge(e);
        break;
    }
    case HiddenStrategy::RandomNonEdges: {
        if (g.non_edge_count() < count)
            throw InstanceError("cannot hide " + std::to_string(count) + " non-edges: network has only " +
                                std::to_string(g.non_edge_count()));
        if (g.pair_count() <= 4'000'000) {
            auto range = non_edges(g);
            sel.hidden = sample_without_replacement({range.begin(), range.end()}, count, rng);
        } else {
            // Sparse regime: rejection sampling over node pairs.
            std::set<Edge> chosen;
            const std::uint64_t n = g.node_count();
            while (chosen.size() < count) {
                const auto a = NodeId(rng.below(n));
                const auto b = NodeId(rng.below(n));
                if (a == b || g.has_edge(a, b))
                    continue;
                chosen.insert(Edge(a, b));
            }
            sel.hidden.assign(chosen.begin(), chosen.end());
        }
        break;
    }
    case HiddenStrategy::TopRanked:
        sel.hidden = top_ranked_non_edges(g, ranking_index, count, params);
        std::sort(sel.hidden.begin(), sel.hidden.end());
        break;
    }
    return sel;
}

MeanCI mean_ci(std::span<const double> xs) {
    if (xs.empty())
        throw std::invalid_argument("mean_ci of an empty sample");
    const double n = double(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() == 1)
        return {mean, 0.0};
    double ss = 0.0;
    for (double x : xs)
        ss += (x - mean) * (x - mean);
    const double s = std::sqrt(ss / (n - 1.0));
    return {mean, 1.96 * s / std::sqrt(n)};
}

namespace {
std::vector<double> average_ranks(std::span<const double> v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]])
            ++j;
        const double rank = (double(i) + double(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            r[idx[k]] = rank;
        i = j + 1;
    }
    return r;
}
}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("spearman needs two equal-length samples of size >= 2");
    const auto rx = average_ranks(x), ry = average_ranks(y);
    const double n = double(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0 || syy == 0)
        return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

Trajectory forward_fill(Trajectory t, std::size_t length) {
    if (t.points.empty())
        throw std::invalid_argument("cannot forward-fill an empty trajectory");
    while (t.points.size() < length) {
        auto p = t.points.back();
        ++p.iteration;
        t.points.push_back(p);
    }
    return t;
}

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    require_indices(indices);
    if (repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    if (sizes.hidden_size && *sizes.hidden_size == 0)
        throw std::invalid_argument("hidden-set size must be positive");
    if (const auto* m = std::get_if<NetworkModel>(&network)) {
        GeneratorSpec{*m, seed}.validate();
        check_global_guard(indices, model_nodes(*m));
    }
    params.validate();
}

TrajectoryExperiment run_trajectory_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto loaded = load_if_file(cfg.network);
    check_global_guard(cfg.indices, source_nodes(cfg.network, loaded));
    const Graph* base = loaded ? &*loaded : nullptr;

    std::vector<std::vector<Trajectory>> raw(cfg.indices.size(),
                                             std::vector<Trajectory>(cfg.repetitions));
    parallel_for(cfg.repetitions, cfg.threads, [&](std::size_t rep) {
        Rng rng(substream_seed(cfg.seed, rep));
        const Graph g = network_for_rep(cfg.network, base, rng);
        const std::size_t hs = cfg.sizes.resolve_hidden(g.edge_count());
        auto sel = select_hidden(g, cfg.hidden, hs, rng, cfg.indices.front(), cfg.params);

        EvasionInstance inst;
        inst.graph = std::move(sel.graph);
        inst.scorer = cfg.indices.front();
        inst.hidden = std::move(sel.hidden);
        inst.budget = cfg.sizes.resolve_budget(hs);
        inst.params = cfg.params;
        // The plan does not depend on the index, so run once and replay per index.
        const auto result = run_heuristic(cfg.heuristic, inst, {.track_metrics = false});
        for (std::size_t k = 0; k < cfg.indices.size(); ++k)
            raw[k][rep] = forward_fill(
                replay_trajectory(inst.graph, result.plan, cfg.indices[k], inst.hidden, cfg.params),
                inst.budget + 1);
    });

    TrajectoryExperiment out;
    out.nodes = source_nodes(cfg.network, loaded);
    for (std::size_t k = 0; k < cfg.indices.size(); ++k) {
        std::size_t length = 0;
        for (const auto& t : raw[k])
            length = std::max(length, t.points.size());
        for (auto& t : raw[k])
            t = forward_fill(std::move(t), length);
        out.per_index.push_back({cfg.indices[k], aggregate(raw[k], length)});
    }
    out.raw = std::move(raw);
    return out;
}

void write_trajectory_csv(std::ostream& out, const ExperimentConfig& cfg,
                          const TrajectoryExperiment& result) {
    const auto meta = echo(cfg.network, result.nodes);
    out << "network,n,d,index,heuristic,hidden,hidden_size,budget,reps,seed,"
           "iteration,auc_mean,auc_ci95,ap_mean,ap_ci95\n";
    for (const auto& agg : result.per_index)
        for (const auto& row : agg.rows)
            out << csv_field(network_string(cfg.network)) << ',' << meta.n << ',' << meta.d << ','
                << scorer_name(agg.index) << ',' << name(cfg.heuristic) << ',' << name(cfg.hidden)
                << ',' << rule_text(cfg.sizes.hidden_size) << ',' << rule_text(cfg.sizes.budget)
                << ',' << cfg.repetitions << ',' << cfg.seed << ',' << row.iteration << ','
                << num(row.auc.mean) << ',' << num(row.auc.half_width) << ',' << num(row.ap.mean)
                << ',' << num(row.ap.half_width) << '\n';
}

// ---------------------------------------------------------------------------

void SweepConfig::validate() const {
    if (family != "sf" && family != "sw" && family != "er")
        throw std::invalid_argument("unknown network family '" + family + "'");
    if (ns.empty() || ds.empty())
        throw std::invalid_argument("sweep grids must be nonempty");
    if (heuristics.empty())
        throw std::invalid_argument("at least one heuristic is required");
    require_indices(indices);
    if (repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    for (std::size_t n : ns)
        for (std::size_t d : ds) {
            GeneratorSpec{sweep_model(*this, n, d), seed}.validate();
            check_global_guard(indices, n);
        }
    params.validate();
}

NetworkModel sweep_model(const SweepConfig& cfg, std::size_t n, std::size_t d) {
    if (cfg.family == "sf")
        return ScaleFree{n, d};
    if (cfg.family == "sw")
        return SmallWorld{n, d, cfg.rewiring};
    return RandomGraph{n, double(d)};
}

SweepResult run_tolerance_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const std::size_t cells = cfg.ns.size() * cfg.ds.size();
    const std::size_t H = cfg.heuristics.size(), K = cfg.indices.size();

    struct Endpoints {
        double auc0, auc1, ap0, ap1;
    };
    // [cell][rep][heuristic][index]
    std::vector<std::vector<Endpoints>> rec(cells * cfg.repetitions,
                                            std::vector<Endpoints>(H * K));
    parallel_for(cells * cfg.repetitions, cfg.threads, [&](std::size_t unit) {
        const std::size_t cell = unit / cfg.repetitions, rep = unit % cfg.repetitions;
        const std::size_t n = cfg.ns[cell / cfg.ds.size()], d = cfg.ds[cell % cfg.ds.size()];
        // Same substream as a trajectory experiment on this single cell.
        Rng rng(substream_seed(cfg.seed, rep));
        const Graph g = generate({sweep_model(cfg, n, d), rng.next()});
        const std::size_t hs = cfg.sizes.resolve_hidden(g.edge_count());
        auto sel = select_hidden(g, HiddenStrategy::RemoveRandomEdges, hs, rng);

        EvasionInstance inst;
        inst.graph = std::move(sel.graph);
        inst.scorer = cfg.indices.front();
        inst.hidden = std::move(sel.hidden);
        inst.budget = cfg.sizes.resolve_budget(hs);
        inst.params = cfg.params;

        std::vector<RankingEvaluation> initial;
        for (const auto& idx : cfg.indices)
            initial.push_back(evaluate_hidden(inst.graph, idx, inst.hidden, cfg.params));
        for (std::size_t h = 0; h < H; ++h) {
            const auto plan = run_heuristic(cfg.heuristics[h], inst, {.track_metrics = false}).plan;
            const Graph after = apply(inst.graph, plan);
            for (std::size_t k = 0; k < K; ++k) {
                const auto fin = evaluate_hidden(after, cfg.indices[k], inst.hidden, cfg.params);
                rec[unit][h * K + k] = {initial[k].auc, fin.auc, initial[k].ap, fin.ap};
            }
        }
    });

    SweepResult res;
    for (std::size_t cell = 0; cell < cells; ++cell)
        for (std::size_t h = 0; h < H; ++h)
            for (std::size_t k = 0; k < K; ++k) {
                SweepCell c{cfg.ns[cell / cfg.ds.size()], cfg.ds[cell % cfg.ds.size()],
                            cfg.indices[k], cfg.heuristics[h], 0, 0, 0, 0, 0, 0, 0};
                std::size_t used_auc = 0;
                for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
                    const auto& e = rec[cell * cfg.repetitions + rep][h * K + k];
                    c.auc_initial += e.auc0;
                    c.auc_final += e.auc1;
                    c.ap_initial += e.ap0;
                    c.ap_final += e.ap1;
                    c.ap_relative += (e.ap1 - e.ap0) / e.ap0;  // AP > 0 whenever H is nonempty
                    if (e.auc0 == 0.0) {
                        ++c.skipped_reps;
                    } else {
                        c.auc_relative += (e.auc1 - e.auc0) / e.auc0;
                        ++used_auc;
                    }
                }
                const double r = double(cfg.repetitions);
                c.auc_initial /= r;
                c.auc_final /= r;
                c.ap_initial /= r;
                c.ap_final /= r;
                c.ap_relative /= r;
                c.auc_relative = used_auc ? c.auc_relative / double(used_auc) : std::nan("");
                res.cells.push_back(c);
            }

    auto marginal = [&](bool by_n) {
        std::vector<SweepMarginal> out;
        const auto& keys = by_n ? cfg.ns : cfg.ds;
        for (std::size_t h = 0; h < H; ++h)
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t key : keys) {
                    double auc = 0, ap = 0;
                    std::size_t cnt = 0, cnt_auc = 0;
                    for (const auto& c : res.cells) {
                        if (c.heuristic != cfg.heuristics[h] || c.index != cfg.indices[k] ||
                            (by_n ? c.n : c.d) != key)
                            continue;
                        ap += c.ap_relative;
                        ++cnt;
                        if (!std::isnan(c.auc_relative)) {
                            auc += c.auc_relative;
                            ++cnt_auc;
                        }
                    }
                    out.push_back({cfg.indices[k], cfg.heuristics[h], key,
                                   cnt_auc ? auc / double(cnt_auc) : std::nan(""),
                                   ap / double(cnt)});
                }
        return out;
    };
    res.by_n = marginal(true);
    res.by_d = marginal(false);
    return res;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result) {
    auto common = [&](std::ostream& o, const Scorer& idx, Heuristic h) {
        o << scorer_name(idx) << ',' << name(h) << ',' << rule_text(cfg.sizes.hidden_size) << ','
          << rule_text(cfg.sizes.budget) << ',' << cfg.repetitions << ',' << cfg.seed;
    };
    out << "# cells\n"
           "network,n,d,index,heuristic,hidden_size,budget,reps,seed,auc_initial,auc_final,"
           "auc_rel_change,ap_initial,ap_final,ap_rel_change,skipped_reps\n";
    for (const auto& c : result.cells) {
        out << csv_field(model_string(sweep_model(cfg, c.n, c.d))) << ',' << c.n << ',' << c.d << ',';
        common(out, c.index, c.heuristic);
        out << ',' << num(c.auc_initial) << ',' << num(c.auc_final) << ',' << num(c.auc_relative)
            << ',' << num(c.ap_initial) << ',' << num(c.ap_final) << ',' << num(c.ap_relative)
            << ',' << c.skipped_reps << '\n';
    }
    std::string ds, ns;
    for (auto d : cfg.ds)
        ds += (ds.empty() ? "" : ";") + std::to_string(d);
    for (auto n : cfg.ns)
        ns += (ns.empty() ? "" : ";") + std::to_string(n);
    out << "\n# by_n (averaged over d)\n"
           "family,n,d,index,heuristic,hidden_size,budget,reps,seed,auc_rel_change,ap_rel_change\n";
    for (const auto& m : result.by_n) {
        out << cfg.family << ',' << m.key << ',' << ds << ',';
        common(out, m.index, m.heuristic);
        out << ',' << num(m.auc_relative) << ',' << num(m.ap_relative) << '\n';
    }
    out << "\n# by_d (averaged over n)\n"
           "family,n,d,index,heuristic,hidden_size,budget,reps,seed,auc_rel_change,ap_rel_change\n";
    for (const auto& m : result.by_d) {
        out << cfg.family << ',' << ns << ',' << m.key << ',';
        common(out, m.index, m.heuristic);
        out << ',' << num(m.auc_relative) << ',' << num(m.ap_relative) << '\n';
    }
}

// ---------------------------------------------------------------------------

void SingleLinkConfig::validate() const {
    require_indices(indices);
    if (repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
    if (top_k < 1)
        throw std::invalid_argument("k must be >= 1");
    if (const auto* m = std::get_if<NetworkModel>(&network)) {
        GeneratorSpec{*m, seed}.validate();
        check_global_guard(indices, model_nodes(*m));
    }
    params.validate();
}

EvasionInstance single_link_instance(const Graph& g, const Scorer& scorer, Edge pair,
                                     NodeId evader, std::size_t budget,
                                     const GlobalParams& params) {
    if (!pair.touches(evader))
        throw InstanceError("evader must be an endpoint of the hidden pair");
    std::vector<Edge> add, rem;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        if (u == evader)
            continue;
        const Edge e(evader, u);
        if (g.has_edge(e))
            rem.push_back(e);
        else if (e != pair)
            add.push_back(e);
    }
    EvasionInstance inst;
    inst.graph = g;
    inst.scorer = scorer;
    inst.hidden = {pair};
    inst.budget = budget;
    inst.addable = CandidatePool::only(std::move(add));
    inst.removable = CandidatePool::only(std::move(rem));
    inst.params = params;
    return inst;
}

std::vector<Edge> top_ranked_non_edges(const Graph& g, const Scorer& scorer, std::size_t k,
                                       const GlobalParams& params) {
    if (k > g.non_edge_count())
        throw InstanceError("k = " + std::to_string(k) + " exceeds the non-edge count " +
                            std::to_string(g.non_edge_count()));
    auto by_rank = [](const ScoredPair& x, const ScoredPair& y) {
        return x.score != y.score ? x.score > y.score : x.pair < y.pair;
    };
    std::vector<ScoredPair> scored;
    if (const auto* local = std::get_if<LocalIndexKind>(&scorer)) {
        // Local scores are positive exactly on pairs with a common neighbour;
        // the rest tie at 0 and follow in pair order.
        scored = local_score_nonzero(g, *local);
        std::sort(scored.begin(), scored.end(), by_rank);
        std::vector<Edge> out;
        for (std::size_t i = 0; i < scored.size() && out.size() < k; ++i)
            out.push_back(scored[i].pair);
        if (out.size() < k) {
            std::unordered_set<Edge, EdgeHash> positive;
            for (const auto& s : scored)
                positive.insert(s.pair);
            for (const Edge e : non_edges(g)) {
                if (out.size() == k)
                    break;
                if (!positive.count(e))
                    out.push_back(e);
            }
        }
        return out;
    }
    scored = score_non_edges(g, scorer, params);
    std::partial_sort(scored.begin(), scored.begin() + std::ptrdiff_t(k), scored.end(), by_rank);
    std::vector<Edge> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(scored[i].pair);
    return out;
}

SingleLinkResult run_single_link_scenario(const SingleLinkConfig& cfg) {
    cfg.validate();
    const auto loaded = load_if_file(cfg.network);
    check_global_guard(cfg.indices, source_nodes(cfg.network, loaded));
    const Graph* base = loaded ? &*loaded : nullptr;
    const std::size_t R = cfg.repetitions, K = cfg.indices.size();

    std::vector<Graph> graphs(R);
    std::vector<std::vector<std::vector<Edge>>> tops(R, std::vector<std::vector<Edge>>(K));
    parallel_for(R, cfg.threads, [&](std::size_t rep) {
        Rng rng(substream_seed(cfg.seed, rep));
        graphs[rep] = network_for_rep(cfg.network, base, rng);
    });
    parallel_for(R * K, cfg.threads, [&](std::size_t u) {
        tops[u / K][u % K] =
            top_ranked_non_edges(graphs[u / K], cfg.indices[u % K], cfg.top_k, cfg.params);
    });

    const std::size_t per_rep = K * cfg.top_k;
    // Two runs per hidden pair: the evader is each endpoint in turn.
    std::vector<std::array<SingleLinkRun, 2>> runs(R * per_rep);
    parallel_for(R * per_rep, cfg.threads, [&](std::size_t u) {
        const std::size_t rep = u / per_rep, k = (u % per_rep) / cfg.top_k, i = u % cfg.top_k;
        const Edge pair = tops[rep][k][i];
        for (int side = 0; side < 2; ++side) {
            const NodeId evader = side == 0 ? pair.a : pair.b;
            const auto inst =
                single_link_instance(graphs[rep], cfg.indices[k], pair, evader, cfg.budget, cfg.params);
            auto res = run_heuristic(cfg.heuristic, inst);
            runs[u][std::size_t(side)] = {pair, evader, std::move(res.plan),
                                          forward_fill(std::move(res.trajectory), cfg.budget + 1)};
        }
    });

    SingleLinkResult out;
    out.nodes = source_nodes(cfg.network, loaded);
    out.first_rep_runs.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        // Per repetition: the mean over its 2k runs; then mean and CI across repetitions.
        std::vector<Trajectory> rep_means(R);
        for (std::size_t rep = 0; rep < R; ++rep) {
            Trajectory t;
            for (std::size_t it = 0; it <= cfg.budget; ++it) {
                double auc = 0, ap = 0;
                for (std::size_t i = 0; i < cfg.top_k; ++i)
                    for (const auto& run : runs[rep * per_rep + k * cfg.top_k + i]) {
                        auc += run.trajectory.points[it].auc;
                        ap += run.trajectory.points[it].ap;
                    }
                const double cnt = 2.0 * double(cfg.top_k);
                t.points.push_back({it, auc / cnt, ap / cnt});
            }
            rep_means[rep] = std::move(t);
        }
        out.per_index.push_back({cfg.indices[k], aggregate(rep_means, cfg.budget + 1)});
        for (std::size_t i = 0; i < cfg.top_k; ++i)
            for (auto& run : runs[k * cfg.top_k + i])
                out.first_rep_runs[k].push_back(std::move(run));
    }
    return out;
}

void write_single_link_csv(std::ostream& out, const SingleLinkConfig& cfg,
                           const SingleLinkResult& result) {
    const auto meta = echo(cfg.network, result.nodes);
    out << "network,n,d,index,heuristic,k,budget,reps,seed,iteration,auc_mean,auc_ci95,ap_mean,"
           "ap_ci95\n";
    for (const auto& agg : result.per_index)
        for (const auto& row : agg.rows)
            out << csv_field(network_string(cfg.network)) << ',' << meta.n << ',' << meta.d << ','
                << scorer_name(agg.index) << ',' << name(cfg.heuristic) << ',' << cfg.top_k << ','
                << cfg.budget << ',' << cfg.repetitions << ',' << cfg.seed << ',' << row.iteration
                << ',' << num(row.auc.mean) << ',' << num(row.auc.half_width) << ','
                << num(row.ap.mean) << ',' << num(row.ap.half_width) << '\n';
}

// ---------------------------------------------------------------------------

void BenchConfig::validate() const {
    if (family != "sf" && family != "sw" && family != "er")
        throw std::invalid_argument("unknown network family '" + family + "'");
    if (ns.empty())
        throw std::invalid_argument("benchmark n grid must be nonempty");
    if (heuristics.empty())
        throw std::invalid_argument("at least one heuristic is required");
    if (repetitions < 1)
        throw std::invalid_argument("repetitions must be >= 1");
}

namespace {
NetworkModel bench_model(const BenchConfig& cfg, std::size_t n) {
    if (cfg.family == "sf")
        return ScaleFree{n, cfg.d};
    if (cfg.family == "sw")
        return SmallWorld{n, cfg.d, cfg.rewiring};
    return RandomGraph{n, double(cfg.d)};
}
}  // namespace

std::vector<BenchRow> run_runtime_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<BenchRow> rows;
    // Sequential on purpose: concurrent runs would distort wall-clock timings.
    for (std::size_t n : cfg.ns)
        for (Heuristic h : cfg.heuristics) {
            std::vector<double> secs;
            double steps = 0;
            for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
                Rng rng(substream_seed(cfg.seed, rep));
                const Graph g = generate({bench_model(cfg, n), rng.next()});
                const std::size_t hs = cfg.sizes.resolve_hidden(g.edge_count());
                auto sel = select_hidden(g, HiddenStrategy::RemoveRandomEdges, hs, rng);

                const auto t0 = std::chrono::steady_clock::now();
                EvasionInstance inst;
                inst.graph = std::move(sel.graph);
                inst.hidden = std::move(sel.hidden);
                inst.budget = cfg.sizes.resolve_budget(hs);
                const auto res = run_heuristic(h, inst, {.track_metrics = false});
                const auto t1 = std::chrono::steady_clock::now();
                secs.push_back(std::chrono::duration<double>(t1 - t0).count());
                steps += double(res.plan.steps.size());
            }
            rows.push_back({n, h, mean_ci(secs), steps / double(cfg.repetitions)});
        }
    return rows;
}

void write_bench_csv(std::ostream& out, const BenchConfig& cfg, std::span<const BenchRow> rows) {
    out << "network,n,d,heuristic,hidden_size,budget,reps,seed,seconds_mean,seconds_ci95,steps_mean\n";
    for (const auto& r : rows) {
        out << csv_field(model_string(bench_model(cfg, r.n))) << ',' << r.n << ',' << cfg.d << ',' << name(r.heuristic) << ','
            << rule_text(cfg.sizes.hidden_size) << ',' << rule_text(cfg.sizes.budget) << ','
            << cfg.repetitions << ',' << cfg.seed << ',' << num(r.seconds.mean) << ','
            << num(r.seconds.half_width) << ',' << num(r.steps) << '\n';
    }
}

}  // namespace linkhide
