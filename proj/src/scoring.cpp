#include "linkhide/scoring.hpp"

#include <algorithm>
#include <cctype>

namespace linkhide {

std::string scorer_name(const Scorer& s) {
    return std::visit([](auto kind) { return std::string(name(kind)); }, s);
}

std::optional<Scorer> parse_scorer(std::string_view text) {
    std::string lower(text);  // "CN" and "cn" both name common neighbours
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    if (auto k = parse_local_index(lower))
        return Scorer(*k);
    if (auto k = parse_global_index(lower))
        return Scorer(*k);
    return std::nullopt;
}

namespace {

void require_global_size(const Graph& g) {
    if (g.node_count() > kMaxGlobalNodes)
        throw std::invalid_argument("global indices are limited to " +
                                    std::to_string(kMaxGlobalNodes) + " nodes (graph has " +
                                    std::to_string(g.node_count()) + ")");
}

}  // namespace

std::vector<ScoredPair> score_non_edges(const Graph& g, const Scorer& scorer,
                                        const GlobalParams& params) {
    if (auto local = std::get_if<LocalIndexKind>(&scorer))
        return local_score_all(g, *local);
    require_global_size(g);
    return matrix_to_nonedge_scores(global_similarity<double>(g, std::get<GlobalIndexKind>(scorer), params), g);
}

ScoredRanking rank_hidden(const Graph& g, const Scorer& scorer, std::span<const Edge> hidden,
                          const GlobalParams& params) {
    std::vector<Edge> h(hidden.begin(), hidden.end());
    std::sort(h.begin(), h.end());
    for (const auto& e : h)
        if (e.a == e.b || g.has_edge(e))
            throw MetricError("hidden pair (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                              ") is not a non-edge");

    if (auto global = std::get_if<GlobalIndexKind>(&scorer)) {
        require_global_size(g);
        const auto s = global_similarity<double>(g, *global, params);
        return make_ranking(matrix_to_nonedge_scores(s, g), h);
    }

    const auto kind = std::get<LocalIndexKind>(scorer);
    ScoredRanking out;
    out.probe.reserve(h.size());
    for (const auto& e : h)
        out.probe.push_back(local_score(g, e, kind));
    std::uint64_t explicit_rest = 0;
    for (const auto& sp : local_score_nonzero(g, kind)) {
        if (std::binary_search(h.begin(), h.end(), sp.pair))
            continue;
        out.rest.push_back(sp.score);
        ++explicit_rest;
    }
    out.implicit_rest = g.non_edge_count() - h.size() - explicit_rest;
    out.implicit_score = 0.0;
    return out;
}

}  // namespace linkhide
