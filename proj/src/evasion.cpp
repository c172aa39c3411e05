#include "linkhide/evasion.hpp"

#include <algorithm>
#include <numeric>
#include <climits>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace linkhide {

CandidatePool CandidatePool::only(std::vector<Edge> pairs) {
    CandidatePool p;
    p.all_ = false;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    p.pairs_ = std::move(pairs);
    return p;
}

bool CandidatePool::allows(const Edge& e) const {
    return all_ || std::binary_search(pairs_.begin(), pairs_.end(), e);
}

namespace {

std::string pair_text(const Edge& e) {
    return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

std::vector<Edge> sorted_hidden(const EvasionInstance& inst) {
    std::vector<Edge> h = inst.hidden;
    std::sort(h.begin(), h.end());
    return h;
}

/// Sorted H plus, per endpoint, the partners it is hidden from.
class HiddenIndex {
public:
    explicit HiddenIndex(const EvasionInstance& inst) : pairs_(sorted_hidden(inst)) {
        for (const auto& e : pairs_) {
            partners_[e.a].push_back(e.b);
            partners_[e.b].push_back(e.a);
        }
    }

    bool contains(const Edge& e) const { return std::binary_search(pairs_.begin(), pairs_.end(), e); }
    bool is_endpoint(NodeId v) const { return partners_.contains(v); }

    const std::vector<NodeId>& partners(NodeId v) const {
        static const std::vector<NodeId> none;
        auto it = partners_.find(v);
        return it == partners_.end() ? none : it->second;
    }

    const std::vector<Edge>& pairs() const { return pairs_; }

    std::vector<NodeId> endpoints() const {
        std::vector<NodeId> out;
        for (const auto& [v, _] : partners_)
            out.push_back(v);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<Edge> pairs_;
    std::unordered_map<NodeId, std::vector<NodeId>> partners_;
};

std::ptrdiff_t find_index(const std::vector<Edge>& sorted, const Edge& e) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), e);
    return (it != sorted.end() && *it == e) ? it - sorted.begin() : -1;
}

// R' : removable edges with an endpoint in some hidden pair.
std::vector<Edge> ctr_candidates(const EvasionInstance& inst, const HiddenIndex& hidden) {
    std::vector<Edge> out;
    if (inst.removable.is_all()) {
        for (NodeId h : hidden.endpoints())
            for (NodeId u : inst.graph.neighbors(h))
                out.emplace_back(h, u);
    } else {
        for (const auto& e : inst.removable.pairs())
            if (hidden.is_endpoint(e.a) || hidden.is_endpoint(e.b))
                out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// A' : addable non-edges with an endpoint in some hidden pair.
std::vector<Edge> otc_candidates(const EvasionInstance& inst, const HiddenIndex& hidden) {
    std::vector<Edge> out;
    const auto& g = inst.graph;
    if (inst.addable.is_all()) {
        for (NodeId h : hidden.endpoints())
            for (NodeId u = 0; u < g.node_count(); ++u) {
                if (u == h)
                    continue;
                Edge e(h, u);
                if (!g.has_edge(e) && !hidden.contains(e))
                    out.push_back(e);
            }
    } else {
        for (const auto& e : inst.addable.pairs())
            if (hidden.is_endpoint(e.a) || hidden.is_endpoint(e.b))
                out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Adds 1 to the score of both triad edges for every closed triad (x, v, w)
// whose third side (x, w) is hidden.
template <typename Score>
void count_closed_triads(const Graph& g, const HiddenIndex& hidden,
                         const std::vector<Edge>& candidates, std::vector<Score>& sigma) {
    for (const auto& h : hidden.pairs())
        for (NodeId v : g.common_neighbors(h.a, h.b)) {
            if (auto i = find_index(candidates, Edge(v, h.b)); i >= 0)
                ++sigma[std::size_t(i)];
            if (auto i = find_index(candidates, Edge(v, h.a)); i >= 0)
                ++sigma[std::size_t(i)];
        }
}

// Adding (v, w) would make v or w a new common neighbour of a hidden pair.
bool otc_blocked(const Graph& g, const HiddenIndex& hidden, NodeId v, NodeId w) {
    for (NodeId u : hidden.partners(w))
        if (g.has_edge(v, u))
            return true;
    for (NodeId u : hidden.partners(v))
        if (g.has_edge(w, u))
            return true;
    return false;
}

// Size of the symmetric difference of the two neighbourhoods.
long long otc_gain(const Graph& g, NodeId v, NodeId w) {
    return (long long)(g.degree(v) + g.degree(w)) - 2 * (long long)g.common_neighbor_count(v, w);
}

constexpr long long kBlocked = LLONG_MIN;

class CtrNaive {
public:
    explicit CtrNaive(const EvasionInstance& inst)
        : hidden_(inst), candidates_(ctr_candidates(inst, hidden_)) {}

    std::optional<Step> step(Graph& g) {
        std::vector<long long> sigma(candidates_.size(), 0);
        count_closed_triads(g, hidden_, candidates_, sigma);
        std::size_t best = candidates_.size();
        for (std::size_t i = 0; i < candidates_.size(); ++i)
            if (sigma[i] > 0 && (best == candidates_.size() || sigma[i] > sigma[best]))
                best = i;
        if (best == candidates_.size())
            return std::nullopt;
        g.remove_edge(candidates_[best]);
        return Step{StepKind::Remove, candidates_[best]};
    }

private:
    HiddenIndex hidden_;
    std::vector<Edge> candidates_;
};

class CtrQueue {
public:
    CtrQueue(const EvasionInstance& inst, const Graph& g)
        : hidden_(inst), candidates_(ctr_candidates(inst, hidden_)), sigma_(candidates_.size(), 0) {
        count_closed_triads(g, hidden_, candidates_, sigma_);
        for (std::size_t i = 0; i < candidates_.size(); ++i)
            if (sigma_[i] > 0)
                queue_.emplace(-sigma_[i], i);
    }

    std::optional<Step> step(Graph& g) {
        if (queue_.empty())
            return std::nullopt;
        const std::size_t best = queue_.begin()->second;
        const Edge e = candidates_[best];
        g.remove_edge(e);
        set(best, 0);
        // Triads (z, w*, v*) with (z, v*) hidden lose their edge (w*, v*), so the
        // other triad edge (z, w*) gains one triad less; and symmetrically.
        for (auto [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}})
            for (NodeId z : hidden_.partners(from))
                if (g.has_edge(z, to))
                    if (auto i = find_index(candidates_, Edge(z, to)); i >= 0)
                        set(std::size_t(i), sigma_[std::size_t(i)] - 1);
        return Step{StepKind::Remove, e};
    }

private:
    void set(std::size_t i, long long value) {
        if (sigma_[i] > 0)
            queue_.erase({-sigma_[i], i});
        sigma_[i] = value;
        if (value > 0)
            queue_.emplace(-value, i);
    }

    HiddenIndex hidden_;
    std::vector<Edge> candidates_;
    std::vector<long long> sigma_;
    std::set<std::pair<long long, std::size_t>> queue_;  // (-score, index) so begin() is the argmax
};

class OtcNaive {
public:
    explicit OtcNaive(const EvasionInstance& inst)
        : hidden_(inst), candidates_(otc_candidates(inst, hidden_)) {}

    std::optional<Step> step(Graph& g) {
        long long best_score = kBlocked;
        std::size_t best = candidates_.size();
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
            const Edge& c = candidates_[i];
            if (g.has_edge(c) || otc_blocked(g, hidden_, c.a, c.b))
                continue;
            const long long s = otc_gain(g, c.a, c.b);
            if (s > best_score) {
                best_score = s;
                best = i;
            }
        }
        if (best == candidates_.size())
            return std::nullopt;
        g.add_edge(candidates_[best]);
        return Step{StepKind::Add, candidates_[best]};
    }

private:
    HiddenIndex hidden_;
    std::vector<Edge> candidates_;
};

class OtcFast {
public:
    OtcFast(const EvasionInstance& inst, const Graph& g)
        : hidden_(inst), candidates_(otc_candidates(inst, hidden_)),
          sigma_(candidates_.size(), kBlocked), used_(candidates_.size(), 0) {
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
            const Edge& c = candidates_[i];
            incident_[c.a].emplace_back(c.b, i);
            incident_[c.b].emplace_back(c.a, i);
            if (!otc_blocked(g, hidden_, c.a, c.b)) {
                sigma_[i] = otc_gain(g, c.a, c.b);
                queue_.emplace(-sigma_[i], i);
            }
        }
    }

    std::optional<Step> step(Graph& g) {
        if (queue_.empty())
            return std::nullopt;
        const std::size_t best = queue_.begin()->second;
        const Edge e = candidates_[best];
        g.add_edge(e);
        queue_.erase(queue_.begin());
        used_[best] = 1;
        for (auto [center, other] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            auto it = incident_.find(center);
            if (it == incident_.end())
                continue;
            for (auto [u, i] : it->second) {
                if (used_[i] || sigma_[i] == kBlocked)
                    continue;
                queue_.erase({-sigma_[i], i});
                if (hidden_.contains(Edge(u, other))) {
                    sigma_[i] = kBlocked;
                    continue;
                }
                sigma_[i] += g.has_edge(u, other) ? -1 : 1;
                queue_.emplace(-sigma_[i], i);
            }
        }
        return Step{StepKind::Add, e};
    }

private:
    HiddenIndex hidden_;
    std::vector<Edge> candidates_;
    std::vector<long long> sigma_;
    std::vector<char> used_;
    std::unordered_map<NodeId, std::vector<std::pair<NodeId, std::size_t>>> incident_;
    std::set<std::pair<long long, std::size_t>> queue_;
};

TrajectoryPoint measure(const EvasionInstance& inst, const Graph& g, std::size_t iteration) {
    auto r = evaluate_hidden(g, inst.scorer, inst.hidden, inst.params);
    return {iteration, r.auc, r.ap};
}

template <typename StepFn>
HeuristicResult drive(const EvasionInstance& inst, const RunOptions& opts, Graph& g, StepFn&& step) {
    HeuristicResult out;
    if (opts.track_metrics)
        out.trajectory.points.push_back(measure(inst, g, 0));
    for (std::size_t i = 1; i <= inst.budget; ++i) {
        auto s = step(g, i);
        if (!s)
            break;
        out.plan.steps.push_back(*s);
        if (opts.track_metrics)
            out.trajectory.points.push_back(measure(inst, g, i));
    }
    return out;
}

}  // namespace

void EvasionInstance::validate() const {
    if (hidden.empty())
        throw InstanceError("hidden set H is empty");
    const auto h = sorted_hidden(*this);
    if (std::adjacent_find(h.begin(), h.end()) != h.end())
        throw InstanceError("hidden set H has a duplicate pair");
    for (const auto& e : h) {
        if (e.a == e.b || e.b >= graph.node_count())
            throw InstanceError("hidden pair " + pair_text(e) + " is not a valid node pair");
        if (graph.has_edge(e))
            throw InstanceError("hidden pair " + pair_text(e) + " is an edge, not a non-edge");
    }
    if (!addable.is_all())
        for (const auto& e : addable.pairs()) {
            if (e.a == e.b || e.b >= graph.node_count() || graph.has_edge(e))
                throw InstanceError("addable pair " + pair_text(e) + " is not a non-edge");
            if (std::binary_search(h.begin(), h.end(), e))
                throw InstanceError("addable pair " + pair_text(e) + " is hidden");
        }
    if (!removable.is_all())
        for (const auto& e : removable.pairs())
            if (e.b >= graph.node_count() || !graph.has_edge(e))
                throw InstanceError("removable pair " + pair_text(e) + " is not an edge");
}

std::vector<Edge> EvasionInstance::addable_pairs() const {
    if (!addable.is_all())
        return addable.pairs();
    const auto h = sorted_hidden(*this);
    std::vector<Edge> out;
    for (Edge e : non_edges(graph))
        if (!std::binary_search(h.begin(), h.end(), e))
            out.push_back(e);
    return out;
}

std::vector<Edge> EvasionInstance::removable_edges() const {
    return removable.is_all() ? graph.edges() : removable.pairs();
}

void apply(Graph& g, const Step& step) {
    if (step.kind == StepKind::Add)
        g.add_edge(step.edge);
    else
        g.remove_edge(step.edge);
}

Graph apply(Graph g, const ModificationPlan& plan) {
    for (const auto& s : plan.steps)
        apply(g, s);
    return g;
}

void check_feasible(const EvasionInstance& inst, const ModificationPlan& plan) {
    if (plan.steps.size() > inst.budget)
        throw InstanceError("plan exceeds the budget");
    const auto h = sorted_hidden(inst);
    std::vector<Edge> touched;
    for (const auto& s : plan.steps) {
        touched.push_back(s.edge);
        if (s.kind == StepKind::Add) {
            if (inst.graph.has_edge(s.edge) || !inst.addable.allows(s.edge) ||
                std::binary_search(h.begin(), h.end(), s.edge))
                throw InstanceError("added pair " + pair_text(s.edge) + " is not in the addable set");
        } else {
            if (!inst.graph.has_edge(s.edge) || !inst.removable.allows(s.edge))
                throw InstanceError("removed pair " + pair_text(s.edge) +
                                    " is not in the removable set");
        }
    }
    std::sort(touched.begin(), touched.end());
    if (std::adjacent_find(touched.begin(), touched.end()) != touched.end())
        throw InstanceError("plan modifies the same pair twice");
}

void write_plan(std::ostream& out, const ModificationPlan& plan) {
    for (const auto& s : plan.steps)
        out << (s.kind == StepKind::Add ? '+' : '-') << ' ' << s.edge.a << ' ' << s.edge.b << '\n';
}

ModificationPlan read_plan(std::istream& in) {
    ModificationPlan plan;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::istringstream fields(line);
        std::string op;
        long long a = -1, b = -1;
        std::string extra;
        if (!(fields >> op >> a >> b) || (op != "+" && op != "-") || a < 0 || b < 0 || a == b ||
            a > UINT32_MAX || b > UINT32_MAX || (fields >> extra))
            throw ParseError("expected '+ a b' or '- a b'", lineno);
        plan.steps.push_back(
            {op == "+" ? StepKind::Add : StepKind::Remove, Edge(NodeId(a), NodeId(b))});
    }
    return plan;
}

Trajectory replay_trajectory(const Graph& g, const ModificationPlan& plan, const Scorer& scorer,
                             std::span<const Edge> hidden, const GlobalParams& params) {
    Trajectory t;
    Graph work = g;
    auto point = [&](std::size_t i) {
        auto r = evaluate_hidden(work, scorer, hidden, params);
        t.points.push_back({i, r.auc, r.ap});
    };
    point(0);
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        apply(work, plan.steps[i]);
        point(i + 1);
    }
    return t;
}

HeuristicResult run_ctr(const EvasionInstance& inst, const RunOptions& opts) {
    inst.validate();
    Graph g = inst.graph;
    CtrNaive ctr(inst);
    return drive(inst, opts, g, [&](Graph& w, std::size_t) { return ctr.step(w); });
}

HeuristicResult run_ctr_pq(const EvasionInstance& inst, const RunOptions& opts) {
    inst.validate();
    Graph g = inst.graph;
    CtrQueue ctr(inst, g);
    return drive(inst, opts, g, [&](Graph& w, std::size_t) { return ctr.step(w); });
}

HeuristicResult run_otc(const EvasionInstance& inst, const RunOptions& opts) {
    inst.validate();
    Graph g = inst.graph;
    OtcNaive otc(inst);
    return drive(inst, opts, g, [&](Graph& w, std::size_t) { return otc.step(w); });
}

HeuristicResult run_otc_fast(const EvasionInstance& inst, const RunOptions& opts) {
    inst.validate();
    Graph g = inst.graph;
    OtcFast otc(inst, g);
    return drive(inst, opts, g, [&](Graph& w, std::size_t) { return otc.step(w); });
}

HeuristicResult run_alternating(const EvasionInstance& inst, const RunOptions& opts) {
    inst.validate();
    Graph g = inst.graph;
    // Both sides must see the other's mutations, so they rescore from scratch.
    OtcNaive otc(inst);
    CtrNaive ctr(inst);
    return drive(inst, opts, g, [&](Graph& w, std::size_t i) -> std::optional<Step> {
        const bool otc_turn = i % 2 == 1;
        auto first = otc_turn ? otc.step(w) : ctr.step(w);
        if (first)
            return first;
        return otc_turn ? ctr.step(w) : otc.step(w);
    });
}

HeuristicResult run_heuristic(Heuristic h, const EvasionInstance& inst, const RunOptions& opts) {
    switch (h) {
    case Heuristic::CTR:
        return run_ctr_pq(inst, opts);
    case Heuristic::OTC:
        return run_otc_fast(inst, opts);
    case Heuristic::Alternating:
        return run_alternating(inst, opts);
    }
    throw std::invalid_argument("unknown heuristic");
}

// ---------------------------------------------------------------------------

std::uint64_t search_space_size(std::size_t moves, std::size_t budget) {
    constexpr std::uint64_t kSaturated = UINT64_MAX;
    std::uint64_t total = 0;
    std::uint64_t binom = 1;  // C(moves, k)
    for (std::size_t k = 0; k <= std::min(budget, moves); ++k) {
        if (k > 0) {
            // binom * (moves - k + 1) / k exactly: k / gcd(binom, k) divides (moves - k + 1)
            const std::uint64_t g = std::gcd(binom, std::uint64_t(k));
            const std::uint64_t x = binom / g, y = (moves - k + 1) / (k / g);
            if (y != 0 && x > kSaturated / y)
                return kSaturated;
            binom = x * y;
        }
        if (total > kSaturated - binom)
            return kSaturated;
        total += binom;
    }
    return total;
}

double instance_metric(const EvasionInstance& inst, const Graph& g) {
    return metric_value(rank_hidden(g, inst.scorer, inst.hidden, inst.params), inst.metric);
}

OracleResult brute_force_optimum(const EvasionInstance& inst, const OracleOptions& opts) {
    inst.validate();
    if (is_global(inst.scorer) && inst.graph.node_count() > 200)
        throw SearchSpaceError("exhaustive search with global indices is limited to 200 nodes");

    std::vector<Step> moves;
    for (const auto& e : inst.addable_pairs())
        moves.push_back({StepKind::Add, e});
    for (const auto& e : inst.removable_edges())
        moves.push_back({StepKind::Remove, e});
    std::sort(moves.begin(), moves.end(),
              [](const Step& x, const Step& y) { return x.edge < y.edge; });

    const std::size_t depth = std::min(inst.budget, moves.size());
    const std::uint64_t space = search_space_size(moves.size(), depth);
    if (space > opts.max_evaluations)
        throw SearchSpaceError("search space of " + std::to_string(space) +
                               " plans exceeds the cap of " + std::to_string(opts.max_evaluations) +
                               "; use the heuristics instead");

    OracleResult out;
    std::vector<std::size_t> best_choice;
    bool have_best = false;
    std::vector<std::size_t> chosen;

    auto consider = [&](const Graph& g) {
        const double value = instance_metric(inst, g);
        ++out.evaluated;
        if (!have_best || value < out.value || (value == out.value && chosen < best_choice)) {
            have_best = true;
            out.value = value;
            best_choice = chosen;
        }
    };

    if (opts.order == EnumerationOrder::DepthFirst) {
        Graph g = inst.graph;
        auto recurse = [&](auto& self, std::size_t start) -> void {
            consider(g);
            if (chosen.size() == depth)
                return;
            for (std::size_t i = start; i < moves.size(); ++i) {
                apply(g, moves[i]);
                chosen.push_back(i);
                self(self, i + 1);
                chosen.pop_back();
                apply(g, Step{moves[i].kind == StepKind::Add ? StepKind::Remove : StepKind::Add,
                              moves[i].edge});
            }
        };
        recurse(recurse, 0);
    } else {
        for (std::size_t k = 0; k <= depth; ++k) {
            chosen.resize(k);
            for (std::size_t i = 0; i < k; ++i)
                chosen[i] = i;
            while (true) {
                Graph g = inst.graph;
                for (std::size_t i : chosen)
                    apply(g, moves[i]);
                consider(g);
                // next k-combination in lexicographic order
                std::size_t pos = k;
                while (pos > 0 && chosen[pos - 1] == moves.size() - k + pos - 1)
                    --pos;
                if (pos == 0)
                    break;
                ++chosen[pos - 1];
                for (std::size_t i = pos; i < k; ++i)
                    chosen[i] = chosen[i - 1] + 1;
            }
        }
    }

    for (std::size_t i : best_choice)
        out.plan.steps.push_back(moves[i]);
    return out;
}

}  // namespace linkhide
