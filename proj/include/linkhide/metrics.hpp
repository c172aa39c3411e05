#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linkhide/graph.hpp"
#include "linkhide/local_indices.hpp"

namespace linkhide {

class MetricError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Scores of the probe set Q and of the remaining non-edges X = Ē \ Q.
///
/// X may carry an implicit block of `implicit_rest` non-edges that all score
/// `implicit_score`. Local indices use this for the (usually vast) set of
/// non-edges without common neighbours, which score exactly zero.
struct ScoredRanking {
    std::vector<double> probe;
    std::vector<double> rest;
    std::uint64_t implicit_rest = 0;
    double implicit_score = 0.0;

    std::uint64_t rest_size() const { return rest.size() + implicit_rest; }
};

struct RankingEvaluation {
    double auc = 0.0;
    double ap = 0.0;
};

enum class Metric { AUC, AP };

/// Tie-aware AUC: P(s(q) > s(x)) + P(s(q) = s(x)) / 2 over Q × X.
double auc(const ScoredRanking& r);

/// Tie-aware average precision with the half-weight tie terms.
double average_precision(const ScoredRanking& r);

inline RankingEvaluation evaluate(const ScoredRanking& r) { return {auc(r), average_precision(r)}; }

inline double metric_value(const ScoredRanking& r, Metric m) {
    return m == Metric::AUC ? auc(r) : average_precision(r);
}

/// Splits a complete non-edge score list into probe and rest.
/// Every hidden pair must appear in `scores`.
ScoredRanking make_ranking(std::span<const ScoredPair> scores, std::span<const Edge> probe);

struct CurvePoint {
    double x;
    double y;
};

/// Points after each prefix sigma_k of the ranking, k = 1..|Ē|. The order
/// refines the score order by ascending normalized pair, so tied blocks are
/// traversed deterministically.
struct Curve {
    std::vector<CurvePoint> points;
    bool tie_broken = false;  ///< some tie class straddled Q and X
};

Curve roc_points(std::span<const ScoredPair> scores, std::span<const Edge> probe);
Curve pr_points(std::span<const ScoredPair> scores, std::span<const Edge> probe);

/// Two-column CSV with header "x,y".
void write_curve_csv(std::ostream& out, const Curve& curve);

}  // namespace linkhide
