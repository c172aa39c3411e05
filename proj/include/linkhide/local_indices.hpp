#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "linkhide/graph.hpp"

namespace linkhide {

enum class LocalIndexKind { CN, Salton, Jaccard, Sorensen, HPI, HDI, LHN, AA, RA };

inline constexpr std::array<LocalIndexKind, 9> kAllLocalIndices = {
    LocalIndexKind::CN,  LocalIndexKind::Salton, LocalIndexKind::Jaccard,
    LocalIndexKind::Sorensen, LocalIndexKind::HPI, LocalIndexKind::HDI,
    LocalIndexKind::LHN, LocalIndexKind::AA,     LocalIndexKind::RA};

std::string_view name(LocalIndexKind kind);
std::optional<LocalIndexKind> parse_local_index(std::string_view name);

/// Which structural factors move a local score.
struct FactorProfile {
    bool increases_with_common_neighbors = true;
    bool sensitive_to_endpoint_degree = false;
    bool sensitive_to_common_neighbor_degree = false;

    friend bool operator==(const FactorProfile&, const FactorProfile&) = default;
};

FactorProfile factor_profile(LocalIndexKind kind);

/// Score of non-edge e. Zero whenever the endpoints share no neighbour.
/// Throws GraphError if e is an edge of g.
double local_score(const Graph& g, const Edge& e, LocalIndexKind kind);

struct ScoredPair {
    Edge pair;
    double score;
};

/// Scores for every non-edge, ascending by pair.
std::vector<ScoredPair> local_score_all(const Graph& g, LocalIndexKind kind);

/// Scores for the non-edges with at least one common neighbour, ascending by pair.
/// Every other non-edge scores exactly 0.
std::vector<ScoredPair> local_score_nonzero(const Graph& g, LocalIndexKind kind);

}  // namespace linkhide
