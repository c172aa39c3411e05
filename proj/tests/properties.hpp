#pragma once

// Randomized property suites shared by the unit tests (small counts) and the
// acceptance binary (full counts). Each returns the number of cases checked,
// the number of violations and a description of the first violation.

#include <sstream>
#include <string>
#include <vector>

#include "linkhide/evasion.hpp"
#include "linkhide/generators.hpp"
#include "linkhide/local_indices.hpp"
#include "linkhide/random.hpp"
#include "oracles.hpp"

namespace props {

using namespace linkhide;

struct Outcome {
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string first;

    void fail(const std::string& what) {
        if (violations++ == 0)
            first = what;
    }
    bool ok() const { return violations == 0 && cases > 0; }
};

inline std::string pair_str(const Edge& e) {
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

/// A random small graph from one of three families.
inline Graph random_small_graph(Rng& rng, std::size_t max_n = 50) {
    const std::size_t n = 4 + rng.below(max_n - 3);
    switch (rng.below(3)) {
    case 0: return oracle::random_graph(n, 0.05 + 0.4 * rng.uniform(), rng);
    case 1: {
        const std::size_t d = 1 + rng.below(std::min<std::size_t>(4, n - 2));
        return generate({ScaleFree{n, d}, rng.next()});
    }
    default: {
        const std::size_t d = 2 * (1 + rng.below(std::min<std::size_t>(3, (n - 1) / 2)));
        return generate({SmallWorld{n, d, rng.uniform()}, rng.next()});
    }
    }
}

inline NodeId pick(const std::vector<NodeId>& xs, Rng& rng) { return xs[rng.below(xs.size())]; }

// --- Theorem 2 -------------------------------------------------------------

/// (x,w) non-edge of G', v in N(x), v not in N(w); G = G' + (v,w).
/// Checks s_{G'}(x,w) <= s_G(x,w) for every local index.
inline Outcome theorem2(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    while (out.cases < count) {
        const Graph gp = random_small_graph(rng);
        const NodeId n = NodeId(gp.node_count());
        const NodeId x = NodeId(rng.below(n));
        if (gp.degree(x) == 0)
            continue;
        const NodeId v = pick(gp.neighbors(x), rng);
        const NodeId w = NodeId(rng.below(n));
        if (w == x || w == v || gp.has_edge(x, w) || gp.has_edge(v, w))
            continue;
        Graph g = gp;
        g.add_edge(Edge(v, w));
        ++out.cases;
        for (auto k : kAllLocalIndices) {
            const double before = local_score(gp, Edge(x, w), k);
            const double after = local_score(g, Edge(x, w), k);
            if (!(before <= after))
                out.fail(std::string(name(k)) + ": x=" + std::to_string(x) + " w=" +
                         std::to_string(w) + " v=" + std::to_string(v) + " s_G'=" +
                         std::to_string(before) + " > s_G=" + std::to_string(after));
        }
    }
    return out;
}

// --- Factor / type sign suites ----------------------------------------------

enum class Type { One, Two, Three };

/// Expected sign of s_after - s_before for adding (v,w).
enum class Sign { Up, Down, Same };

inline const char* sign_name(Sign s) { return s == Sign::Up ? "up" : s == Sign::Down ? "down" : "same"; }

/// Prediction for a pure Type 2 pair (x,w), where w gains a neighbour.
/// Endpoint-degree-sensitive indices fall, except that HPI/HDI only move when
/// d(w) is the binding term of min/max.
inline Sign type2_prediction(LocalIndexKind k, std::size_t dx, std::size_t dw_before) {
    if (!factor_profile(k).sensitive_to_endpoint_degree)
        return Sign::Same;
    if (k == LocalIndexKind::HPI)
        return dw_before < dx ? Sign::Down : Sign::Same;
    if (k == LocalIndexKind::HDI)
        return dw_before >= dx ? Sign::Down : Sign::Same;
    return Sign::Down;
}

/// Builds `count` cases of the given type for one index and checks the sign.
/// Type 1: x in N(v) \ N(w), N(x,w) empty           -> up for every index.
/// Type 2: N(x,w) nonempty, v not in N(x)             -> per type2_prediction.
/// Type 3: x,y in N(w), v not in N(x) u N(y)          -> down iff common-neighbour-degree sensitive.
inline Outcome factor_suite(Type type, LocalIndexKind k, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    while (out.cases < count) {
        const Graph g = random_small_graph(rng, 30);
        const NodeId n = NodeId(g.node_count());
        const NodeId v = NodeId(rng.below(n)), w = NodeId(rng.below(n));
        if (v == w || g.has_edge(v, w))
            continue;
        Edge target;
        Sign expect = Sign::Same;
        if (type == Type::One) {
            if (g.degree(v) == 0)
                continue;
            const NodeId x = pick(g.neighbors(v), rng);
            if (x == w || g.has_edge(x, w) || g.common_neighbor_count(x, w) != 0)
                continue;
            target = Edge(x, w);
            expect = Sign::Up;
        } else if (type == Type::Two) {
            const NodeId x = NodeId(rng.below(n));
            if (x == w || x == v || g.has_edge(x, w) || g.has_edge(x, v) ||
                g.common_neighbor_count(x, w) == 0)
                continue;
            target = Edge(x, w);
            expect = type2_prediction(k, g.degree(x), g.degree(w));
        } else {
            if (g.degree(w) < 2)
                continue;
            const NodeId x = pick(g.neighbors(w), rng), y = pick(g.neighbors(w), rng);
            if (x == y || x == v || y == v || g.has_edge(x, y) || g.has_edge(v, x) ||
                g.has_edge(v, y))
                continue;
            target = Edge(x, y);
            expect = factor_profile(k).sensitive_to_common_neighbor_degree ? Sign::Down : Sign::Same;
        }
        Graph after = g;
        after.add_edge(Edge(v, w));
        ++out.cases;
        const double s0 = local_score(g, target, k), s1 = local_score(after, target, k);
        const bool holds = expect == Sign::Up     ? s1 > s0
                           : expect == Sign::Down ? s1 < s0
                                                  : s1 == s0;
        if (!holds) {
            std::ostringstream os;
            os << name(k) << ": add " << pair_str(Edge(v, w)) << " target " << pair_str(target)
               << " expected " << sign_name(expect) << " but " << s0 << " -> " << s1;
            out.fail(os.str());
        }
        if (type == Type::One && !(s0 == 0.0 && s1 > 0.0))
            out.fail(std::string(name(k)) + ": type 1 pair not lifted from zero");
    }
    return out;
}

// --- Random evasion instances -------------------------------------------------

/// Hidden pairs mixing removed edges (so closed triads exist) and plain non-edges.
inline std::pair<Graph, std::vector<Edge>> graph_with_hidden(Graph g, std::size_t h, Rng& rng) {
    std::vector<Edge> hidden;
    for (std::size_t guard = 0; hidden.size() < h && guard < 1000; ++guard) {
        if (rng.bernoulli(0.7) && g.edge_count() > 1) {
            const auto es = g.edges();
            const Edge e = es[rng.below(es.size())];
            g.remove_edge(e);
            hidden.push_back(e);
        } else {
            const auto ne = oracle::all_non_edges(g);
            if (ne.empty())
                continue;
            const Edge e = ne[rng.below(ne.size())];
            if (std::find(hidden.begin(), hidden.end(), e) == hidden.end())
                hidden.push_back(e);
        }
    }
    return {std::move(g), std::move(hidden)};
}

inline Scorer random_local(Rng& rng) { return kAllLocalIndices[rng.below(9)]; }

/// Random instance for the naive/fast equivalence suite: n <= 60, |H| <= 8, b <= 12.
inline EvasionInstance equivalence_instance(Rng& rng) {
    for (;;) {
        Graph base = random_small_graph(rng, 60);
        auto [g, hidden] = graph_with_hidden(std::move(base), 1 + rng.below(8), rng);
        // keep a non-hidden non-edge even after b = 12 additions, so metrics stay defined
        if (hidden.empty() || g.non_edge_count() <= hidden.size() + 12)
            continue;
        EvasionInstance inst;
        inst.graph = std::move(g);
        inst.hidden = std::move(hidden);
        inst.scorer = random_local(rng);
        inst.budget = rng.below(13);
        if (rng.bernoulli(0.3)) {
            std::vector<Edge> add, rem;
            for (Edge e : oracle::all_non_edges(inst.graph))
                if (rng.bernoulli(0.5) &&
                    std::find(inst.hidden.begin(), inst.hidden.end(), e) == inst.hidden.end())
                    add.push_back(e);
            for (Edge e : inst.graph.edges())
                if (rng.bernoulli(0.5))
                    rem.push_back(e);
            inst.addable = CandidatePool::only(add);
            inst.removable = CandidatePool::only(rem);
        }
        return inst;
    }
}

inline Outcome naive_fast_equivalence(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    while (out.cases < count) {
        const auto inst = equivalence_instance(rng);
        ++out.cases;
        const auto c1 = run_ctr(inst), c2 = run_ctr_pq(inst);
        if (!(c1.plan == c2.plan) || !(c1.trajectory == c2.trajectory))
            out.fail("CTR naive/queue mismatch on case " + std::to_string(out.cases));
        const auto o1 = run_otc(inst), o2 = run_otc_fast(inst);
        if (!(o1.plan == o2.plan) || !(o1.trajectory == o2.trajectory))
            out.fail("OTC naive/fast mismatch on case " + std::to_string(out.cases));
    }
    return out;
}

/// n <= 10, |Â| + |R̂| <= 14, b <= 3.
inline EvasionInstance oracle_instance(Rng& rng) {
    for (;;) {
        const std::size_t n = 5 + rng.below(6);
        Graph base = oracle::random_graph(n, 0.25 + 0.35 * rng.uniform(), rng);
        auto [g, hidden] = graph_with_hidden(std::move(base), 1 + rng.below(3), rng);
        if (hidden.empty() || g.non_edge_count() <= hidden.size() + 3)
            continue;
        EvasionInstance inst;
        inst.graph = std::move(g);
        inst.hidden = std::move(hidden);
        const auto r = rng.below(10);
        inst.scorer = r < 8 ? random_local(rng) : Scorer(kAllGlobalIndices[rng.below(7)]);
        inst.metric = rng.bernoulli(0.5) ? Metric::AUC : Metric::AP;
        inst.budget = rng.below(4);
        std::vector<Edge> moves;
        for (Edge e : oracle::all_non_edges(inst.graph))
            if (std::find(inst.hidden.begin(), inst.hidden.end(), e) == inst.hidden.end())
                moves.push_back(e);
        for (Edge e : inst.graph.edges())
            moves.push_back(e);
        for (std::size_t i = 0; i < moves.size(); ++i)
            std::swap(moves[i], moves[i + rng.below(moves.size() - i)]);
        moves.resize(std::min<std::size_t>(moves.size(), 1 + rng.below(14)));
        std::vector<Edge> add, rem;
        for (Edge e : moves)
            (inst.graph.has_edge(e) ? rem : add).push_back(e);
        inst.addable = CandidatePool::only(add);
        inst.removable = CandidatePool::only(rem);
        return inst;
    }
}

inline Outcome oracle_dominance(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    Outcome out;
    while (out.cases < count) {
        const auto inst = oracle_instance(rng);
        std::optional<OracleResult> dfs, bysize;
        try {
            dfs = brute_force_optimum(inst, {2'000'000, EnumerationOrder::DepthFirst});
            bysize = brute_force_optimum(inst, {2'000'000, EnumerationOrder::BySize});
        } catch (const LinearAlgebraError&) {
            continue;  // e.g. Katz on a graph the moves left edgeless
        }
        ++out.cases;
        const std::string tag = "case " + std::to_string(out.cases) + ": ";
        const std::size_t moves = inst.addable.pairs().size() + inst.removable.pairs().size();
        if (dfs->value != bysize->value || !(dfs->plan == bysize->plan))
            out.fail(tag + "enumeration orders disagree");
        if (dfs->evaluated != search_space_size(moves, inst.budget) ||
            bysize->evaluated != dfs->evaluated)
            out.fail(tag + "evaluation count differs from the search-space size");
        check_feasible(inst, dfs->plan);
        if (instance_metric(inst, apply(inst.graph, dfs->plan)) != dfs->value)
            out.fail(tag + "reported value does not match its plan");
        const double noop = instance_metric(inst, inst.graph);
        if (dfs->value > noop)
            out.fail(tag + "optimum worse than doing nothing");
        for (Heuristic h : {Heuristic::CTR, Heuristic::OTC, Heuristic::Alternating}) {
            const auto plan = run_heuristic(h, inst, {.track_metrics = false}).plan;
            check_feasible(inst, plan);
            if (dfs->value > instance_metric(inst, apply(inst.graph, plan)))
                out.fail(tag + "optimum worse than a heuristic");
        }
    }
    return out;
}

}  // namespace props
