// Command-line front end for the experiment harness.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "linkhide/harness.hpp"

using namespace linkhide;

namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);)
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<Scorer> parse_indices(const std::string& text) {
    std::vector<Scorer> out;
    for (const auto& tok : split(text)) {
        if (tok == "all" || tok == "all-local")
            for (auto k : kAllLocalIndices)
                out.push_back(k);
        if (tok == "all" || tok == "all-global")
            for (auto k : kAllGlobalIndices)
                out.push_back(k);
        if (tok == "all" || tok == "all-local" || tok == "all-global")
            continue;
        auto s = parse_scorer(tok);
        if (!s)
            throw CLI::ValidationError("--index", "unknown index '" + tok + "'");
        out.push_back(*s);
    }
    if (out.empty())
        throw CLI::ValidationError("--index", "no index given");
    return out;
}

std::vector<Heuristic> parse_heuristics(const std::string& text) {
    std::vector<Heuristic> out;
    for (const auto& tok : split(text)) {
        auto h = parse_heuristic(tok);
        if (!h)
            throw CLI::ValidationError("--heuristic", "unknown heuristic '" + tok + "'");
        out.push_back(*h);
    }
    if (out.empty())
        throw CLI::ValidationError("--heuristic", "no heuristic given");
    return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> out;
    for (const auto& tok : split(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(tok, &used));
            if (used != tok.size())
                throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw CLI::ValidationError(flag, "expected a comma-separated list of integers");
        }
    }
    if (out.empty())
        throw CLI::ValidationError(flag, "empty list");
    return out;
}

std::optional<std::size_t> parse_rule(const std::string& text, const std::string& flag) {
    if (text == "paper")
        return std::nullopt;
    return parse_sizes(text, flag).at(0);
}

/// Rewrites `prog sub ... --config FILE ...` so the file's key=value lines come
/// first as `--key value` flags; with TakeLast, explicit flags then win.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc), file_flags, rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[++i];
        else if (args[i].starts_with("--config="))
            path = args[i].substr(9);
        else {
            rest.push_back(args[i]);
            continue;
        }
        std::ifstream in(path);
        if (!in)
            throw CLI::ValidationError("--config", "cannot open '" + path + "'");
        std::string line;
        for (int no = 1; std::getline(in, line); ++no) {
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            const auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos)
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw CLI::ValidationError("--config", path + ":" + std::to_string(no) +
                                                           ": expected key=value");
            auto trim = [](std::string s) {
                s.erase(0, s.find_first_not_of(" \t\r"));
                s.erase(s.find_last_not_of(" \t\r") + 1);
                return s;
            };
            std::string key = trim(line.substr(0, eq));
            if (key.starts_with("--"))
                key.erase(0, 2);
            file_flags.push_back("--" + key);
            file_flags.push_back(trim(line.substr(eq + 1)));
        }
    }
    std::vector<std::string> out;
    if (!rest.empty() && !rest.front().starts_with("-")) {
        out.push_back(rest.front());
        rest.erase(rest.begin());
    }
    out.insert(out.end(), file_flags.begin(), file_flags.end());
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
}

struct Common {
    std::string network = "sf:100,3";
    std::string index = "all-local";
    std::string heuristic = "ctr";
    std::string hidden = "remove-random-edges";
    std::string hidden_size = "paper";
    std::string budget = "paper";
    std::size_t reps = 50;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 0;
    GlobalParams params;
};

void add_params(CLI::App* app, GlobalParams& p) {
    app->add_option("--katz_beta_rule", p.katz_beta_rule, "Katz beta as a fraction of 1/lambda*");
    app->add_option("--lhn_phi", p.lhn_phi, "LHN global damping phi");
    app->add_option("--rwr_return", p.rwr_return, "random-walk continuation probability c");
    app->add_option("--simrank_decay", p.simrank_decay, "SimRank decay c");
    app->add_option("--simrank_max_iters", p.simrank_max_iters);
    app->add_option("--simrank_tolerance", p.simrank_tolerance);
    app->add_option("--eigen_tolerance", p.eigen_tolerance);
    app->add_option("--eigen_max_iters", p.eigen_max_iters);
}

void add_output(CLI::App* app, Common& c) {
    app->add_option("--out", c.out, "output CSV path (default stdout)");
    app->add_option("--config", "key=value file; explicit flags override it");
}

template <class Fn>
void write_to(const std::string& path, Fn&& fn) {
    if (path.empty() || path == "-") {
        fn(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output '" + path + "'");
    fn(f);
    if (!f)
        throw std::runtime_error("failed writing '" + path + "'");
}

HiddenStrategy hidden_strategy(const std::string& s) {
    auto h = parse_hidden_strategy(s);
    if (!h)
        throw CLI::ValidationError("--hidden", "unknown strategy '" + s + "'");
    return *h;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-prediction evasion experiments"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Common c;

    auto* traj = app.add_subcommand("trajectory", "per-iteration AUC/AP under a heuristic");
    traj->add_option("--network", c.network, "edge-list path or sf:n,d / sw:n,d,p / er:n,d");
    traj->add_option("--index", c.index, "comma list, or all / all-local / all-global");
    traj->add_option("--heuristic", c.heuristic, "ctr | otc | alt");
    traj->add_option("--hidden", c.hidden, "remove-random-edges | random-nonedges | top-ranked-nonedges");
    traj->add_option("--hidden-size", c.hidden_size, "integer or 'paper' (max(10,|E|/100))");
    traj->add_option("--budget", c.budget, "integer or 'paper' (4|H|)");
    traj->add_option("--reps", c.reps);
    traj->add_option("--seed", c.seed);
    traj->add_option("--threads", c.threads, "0 = all cores");
    add_output(traj, c);
    add_params(traj, c.params);

    std::string family = "sf", ns = "200,400,600,800,1000", ds = "2,4,6,8,10";
    double rewiring = 0.25;
    auto* sweep = app.add_subcommand("sweep", "relative AUC/AP change over an (n, d) grid");
    sweep->add_option("--family", family, "sf | sw | er");
    sweep->add_option("--n", ns, "comma list of node counts");
    sweep->add_option("--d", ds, "comma list of degree parameters");
    sweep->add_option("--rewiring", rewiring, "small-world rewiring probability");
    sweep->add_option("--index", c.index);
    sweep->add_option("--heuristic", c.heuristic, "comma list of ctr | otc | alt");
    sweep->add_option("--hidden-size", c.hidden_size);
    sweep->add_option("--budget", c.budget);
    sweep->add_option("--reps", c.reps);
    sweep->add_option("--seed", c.seed);
    sweep->add_option("--threads", c.threads);
    add_output(sweep, c);
    add_params(sweep, c.params);

    std::size_t k = 1000;
    auto* single = app.add_subcommand("single-link", "hide one top-ranked pair from one endpoint");
    single->add_option("--network", c.network);
    single->add_option("--index", c.index);
    single->add_option("--heuristic", c.heuristic);
    single->add_option("--k", k, "number of top-ranked non-edges");
    single->add_option("--budget", c.budget, "integer (default 10)");
    single->add_option("--reps", c.reps);
    single->add_option("--seed", c.seed);
    single->add_option("--threads", c.threads);
    add_output(single, c);
    add_params(single, c.params);

    std::size_t bench_d = 3;
    auto* bench = app.add_subcommand("bench", "wall-clock runtime of the heuristics");
    bench->add_option("--family", family);
    bench->add_option("--n", ns);
    bench->add_option("--d", bench_d);
    bench->add_option("--rewiring", rewiring);
    bench->add_option("--heuristic", c.heuristic);
    bench->add_option("--hidden-size", c.hidden_size);
    bench->add_option("--budget", c.budget);
    bench->add_option("--reps", c.reps);
    bench->add_option("--seed", c.seed);
    add_output(bench, c);

    auto* score = app.add_subcommand("score", "dump every non-edge score for one index");
    score->add_option("--network", c.network);
    score->add_option("--index", c.index)->required();
    score->add_option("--seed", c.seed, "generator seed for model networks");
    add_output(score, c);
    add_params(score, c.params);

    std::string metric = "auc";
    std::uint64_t max_evals = OracleOptions{}.max_evaluations;
    auto* oracle = app.add_subcommand("oracle", "exhaustive optimum on a small instance");
    oracle->add_option("--network", c.network)->required();
    oracle->add_option("--index", c.index)->required();
    oracle->add_option("--metric", metric, "auc | ap");
    oracle->add_option("--hidden", c.hidden);
    oracle->add_option("--hidden-size", c.hidden_size);
    oracle->add_option("--budget", c.budget);
    oracle->add_option("--seed", c.seed);
    oracle->add_option("--max-evaluations", max_evals);
    add_output(oracle, c);
    add_params(oracle, c.params);

    try {
        auto args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*traj) {
            ExperimentConfig cfg;
            cfg.network = parse_network(c.network);
            cfg.indices = parse_indices(c.index);
            cfg.heuristic = parse_heuristics(c.heuristic).at(0);
            cfg.hidden = hidden_strategy(c.hidden);
            cfg.sizes = {parse_rule(c.hidden_size, "--hidden-size"), parse_rule(c.budget, "--budget")};
            cfg.repetitions = c.reps;
            cfg.seed = c.seed;
            cfg.params = c.params;
            cfg.threads = c.threads;
            const auto res = run_trajectory_experiment(cfg);
            write_to(c.out, [&](std::ostream& o) { write_trajectory_csv(o, cfg, res); });
        } else if (*sweep) {
            SweepConfig cfg;
            cfg.family = family;
            cfg.ns = parse_sizes(ns, "--n");
            cfg.ds = parse_sizes(ds, "--d");
            cfg.rewiring = rewiring;
            cfg.indices = parse_indices(c.index);
            cfg.heuristics = parse_heuristics(c.heuristic);
            cfg.sizes = {c.hidden_size == "paper" && sweep->count("--hidden-size") == 0
                             ? std::optional<std::size_t>(100)
                             : parse_rule(c.hidden_size, "--hidden-size"),
                         parse_rule(c.budget, "--budget")};
            cfg.repetitions = sweep->count("--reps") ? c.reps : 10;
            cfg.seed = c.seed;
            cfg.params = c.params;
            cfg.threads = c.threads;
            const auto res = run_tolerance_sweep(cfg);
            write_to(c.out, [&](std::ostream& o) { write_sweep_csv(o, cfg, res); });
        } else if (*single) {
            SingleLinkConfig cfg;
            cfg.network = parse_network(c.network);
            cfg.indices = parse_indices(c.index);
            cfg.heuristic = parse_heuristics(c.heuristic).at(0);
            cfg.top_k = k;
            cfg.budget = c.budget == "paper" ? 10 : parse_sizes(c.budget, "--budget").at(0);
            cfg.repetitions = single->count("--reps") ? c.reps : 10;
            cfg.seed = c.seed;
            cfg.params = c.params;
            cfg.threads = c.threads;
            const auto res = run_single_link_scenario(cfg);
            write_to(c.out, [&](std::ostream& o) { write_single_link_csv(o, cfg, res); });
        } else if (*bench) {
            BenchConfig cfg;
            cfg.family = family;
            cfg.ns = parse_sizes(ns, "--n");
            cfg.d = bench_d;
            cfg.rewiring = rewiring;
            cfg.heuristics = bench->count("--heuristic") ? parse_heuristics(c.heuristic)
                                                         : std::vector{Heuristic::CTR, Heuristic::OTC};
            cfg.sizes = {c.hidden_size == "paper" && bench->count("--hidden-size") == 0
                             ? std::optional<std::size_t>(100)
                             : parse_rule(c.hidden_size, "--hidden-size"),
                         parse_rule(c.budget, "--budget")};
            cfg.repetitions = bench->count("--reps") ? c.reps : 1;
            cfg.seed = c.seed;
            const auto rows = run_runtime_benchmark(cfg);
            write_to(c.out, [&](std::ostream& o) { write_bench_csv(o, cfg, rows); });
        } else if (*score) {
            const auto src = parse_network(c.network);
            const auto scorers = parse_indices(c.index);
            if (scorers.size() != 1)
                throw CLI::ValidationError("--index", "score takes exactly one index");
            LoadedGraph lg;
            if (const auto* m = std::get_if<NetworkModel>(&src))
                lg.graph = generate({*m, c.seed});
            else
                lg = load_edge_list(std::get<std::filesystem::path>(src));
            auto label = [&](NodeId v) {
                return lg.labels.empty() ? std::to_string(v) : lg.labels[v];
            };
            const auto scores = score_non_edges(lg.graph, scorers[0], c.params);
            write_to(c.out, [&](std::ostream& o) {
                o << "a,b,score\n";
                char buf[64];
                for (const auto& s : scores) {
                    std::snprintf(buf, sizeof buf, "%.17g", s.score);
                    o << label(s.pair.a) << ',' << label(s.pair.b) << ',' << buf << '\n';
                }
            });
        } else if (*oracle) {
            const auto src = parse_network(c.network);
            const auto scorers = parse_indices(c.index);
            if (scorers.size() != 1)
                throw CLI::ValidationError("--index", "oracle takes exactly one index");
            Rng rng(substream_seed(c.seed, 0));
            Graph g;
            if (const auto* m = std::get_if<NetworkModel>(&src))
                g = generate({*m, rng.next()});
            else
                g = load_edge_list(std::get<std::filesystem::path>(src)).graph;
            const SizeRules rules{parse_rule(c.hidden_size, "--hidden-size"),
                                  parse_rule(c.budget, "--budget")};
            const std::size_t hs = rules.resolve_hidden(g.edge_count());
            auto sel = select_hidden(g, hidden_strategy(c.hidden), hs, rng, scorers[0], c.params);
            EvasionInstance inst;
            inst.graph = std::move(sel.graph);
            inst.scorer = scorers[0];
            inst.metric = metric == "ap" ? Metric::AP : Metric::AUC;
            if (metric != "ap" && metric != "auc")
                throw CLI::ValidationError("--metric", "expected auc or ap");
            inst.hidden = std::move(sel.hidden);
            inst.budget = rules.resolve_budget(hs);
            inst.params = c.params;
            const auto best = brute_force_optimum(inst, {max_evals, EnumerationOrder::DepthFirst});
            write_to(c.out, [&](std::ostream& o) {
                char buf[64];
                auto v = [&](double x) {
                    std::snprintf(buf, sizeof buf, "%.12g", x);
                    return std::string(buf);
                };
                o << "quantity,value\n";
                o << "index," << scorer_name(inst.scorer) << "\nmetric," << metric << '\n';
                o << "hidden_size," << inst.hidden.size() << "\nbudget," << inst.budget << '\n';
                o << "no_op," << v(instance_metric(inst, inst.graph)) << '\n';
                o << "optimum," << v(best.value) << "\nevaluated," << best.evaluated << '\n';
                for (Heuristic h : {Heuristic::CTR, Heuristic::OTC, Heuristic::Alternating}) {
                    const auto plan = run_heuristic(h, inst, {.track_metrics = false}).plan;
                    o << name(h) << ',' << v(instance_metric(inst, apply(inst.graph, plan))) << '\n';
                }
                for (const auto& s : best.plan.steps)
                    o << "optimum_step," << (s.kind == StepKind::Add ? '+' : '-') << ' ' << s.edge.a
                      << ' ' << s.edge.b << '\n';
            });
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
