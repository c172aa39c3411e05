#include "linkhide/local_indices.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace linkhide {

namespace {

constexpr std::array<std::string_view, 9> kNames = {"cn",  "salton", "jaccard", "sorensen", "hpi",
                                                    "hdi", "lhn",    "aa",      "ra"};

// Score from the already-intersected common neighbourhood.
double score_from(const Graph& g, NodeId v, NodeId w, const std::vector<NodeId>& common,
                  LocalIndexKind kind) {
    const double cn = double(common.size());
    if (common.empty())
        return 0.0;
    const double dv = double(g.degree(v));
    const double dw = double(g.degree(w));
    switch (kind) {
    case LocalIndexKind::CN:
        return cn;
    case LocalIndexKind::Salton:
        return cn / std::sqrt(dv * dw);
    case LocalIndexKind::Jaccard:
        return cn / (dv + dw - cn);
    case LocalIndexKind::Sorensen:
        return 2.0 * cn / (dv + dw);
    case LocalIndexKind::HPI:
        return cn / std::min(dv, dw);
    case LocalIndexKind::HDI:
        return cn / std::max(dv, dw);
    case LocalIndexKind::LHN:
        return cn / (dv * dw);
    case LocalIndexKind::AA: {
        double s = 0.0;
        for (NodeId u : common) {
            // u is adjacent to both endpoints, so d(u) >= 2 and the log is positive.
            assert(g.degree(u) >= 2);
            s += 1.0 / std::log(double(g.degree(u)));
        }
        return s;
    }
    case LocalIndexKind::RA: {
        double s = 0.0;
        for (NodeId u : common)
            s += 1.0 / double(g.degree(u));
        return s;
    }
    }
    return 0.0;
}

}  // namespace

std::string_view name(LocalIndexKind kind) { return kNames[std::size_t(kind)]; }

std::optional<LocalIndexKind> parse_local_index(std::string_view text) {
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == text)
            return LocalIndexKind(i);
    return std::nullopt;
}

FactorProfile factor_profile(LocalIndexKind kind) {
    switch (kind) {
    case LocalIndexKind::CN:
        return {true, false, false};
    case LocalIndexKind::AA:
    case LocalIndexKind::RA:
        return {true, false, true};
    default:
        return {true, true, false};
    }
}

double local_score(const Graph& g, const Edge& e, LocalIndexKind kind) {
    if (e.a == e.b)
        throw SelfLoopError("local_score on a self pair");
    if (g.has_edge(e))
        throw GraphError("local_score: (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                         ") is an edge, not a non-edge");
    return score_from(g, e.a, e.b, g.common_neighbors(e.a, e.b), kind);
}

std::vector<ScoredPair> local_score_all(const Graph& g, LocalIndexKind kind) {
    std::vector<ScoredPair> out;
    out.reserve(std::size_t(g.non_edge_count()));
    for (Edge e : non_edges(g))
        out.push_back({e, score_from(g, e.a, e.b, g.common_neighbors(e.a, e.b), kind)});
    return out;
}

std::vector<ScoredPair> local_score_nonzero(const Graph& g, LocalIndexKind kind) {
    const auto n = NodeId(g.node_count());
    std::vector<ScoredPair> out;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> touched;
    for (NodeId v = 0; v < n; ++v) {
        touched.clear();
        for (NodeId u : g.neighbors(v))
            for (NodeId w : g.neighbors(u))
                if (w > v && !seen[w]) {
                    seen[w] = 1;
                    touched.push_back(w);
                }
        std::sort(touched.begin(), touched.end());
        for (NodeId w : touched) {
            seen[w] = 0;
            if (g.has_edge(v, w))
                continue;
            out.push_back({Edge(v, w), score_from(g, v, w, g.common_neighbors(v, w), kind)});
        }
    }
    return out;
}

}  // namespace linkhide
