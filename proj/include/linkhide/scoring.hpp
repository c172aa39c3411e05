#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "linkhide/global_indices.hpp"
#include "linkhide/local_indices.hpp"
#include "linkhide/metrics.hpp"

namespace linkhide {

/// Any of the sixteen similarity indices.
using Scorer = std::variant<LocalIndexKind, GlobalIndexKind>;

std::string scorer_name(const Scorer& s);
std::optional<Scorer> parse_scorer(std::string_view name);
inline bool is_global(const Scorer& s) { return std::holds_alternative<GlobalIndexKind>(s); }

/// Every non-edge with its score, ascending by pair.
std::vector<ScoredPair> score_non_edges(const Graph& g, const Scorer& scorer,
                                        const GlobalParams& params = {});

/// Ranking of `hidden` against the rest of Ē on graph g. Local scorers avoid
/// touching non-edges without common neighbours (they are folded into an
/// implicit zero block); global scorers require g.node_count() <= kMaxGlobalNodes.
ScoredRanking rank_hidden(const Graph& g, const Scorer& scorer, std::span<const Edge> hidden,
                          const GlobalParams& params = {});

inline RankingEvaluation evaluate_hidden(const Graph& g, const Scorer& scorer,
                                         std::span<const Edge> hidden,
                                         const GlobalParams& params = {}) {
    return evaluate(rank_hidden(g, scorer, hidden, params));
}

}  // namespace linkhide
