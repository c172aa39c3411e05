#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "linkhide/graph.hpp"
#include "linkhide/metrics.hpp"
#include "linkhide/scoring.hpp"

namespace linkhide {

class InstanceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Either "every eligible pair" or an explicit sorted list.
class CandidatePool {
public:
    static CandidatePool all() { return CandidatePool(); }
    static CandidatePool only(std::vector<Edge> pairs);

    bool is_all() const { return all_; }
    const std::vector<Edge>& pairs() const { return pairs_; }
    bool allows(const Edge& e) const;

private:
    CandidatePool() = default;
    bool all_ = true;
    std::vector<Edge> pairs_;
};

/// The evader's problem: graph, scorer, metric, hidden non-edges H, budget b,
/// addable pairs Â (all = Ē \ H) and removable edges R̂ (all = E).
struct EvasionInstance {
    Graph graph;
    Scorer scorer = LocalIndexKind::CN;
    Metric metric = Metric::AUC;
    std::vector<Edge> hidden;
    std::size_t budget = 0;
    CandidatePool addable = CandidatePool::all();
    CandidatePool removable = CandidatePool::all();
    GlobalParams params;

    /// Throws InstanceError when H is empty or not within Ē, Â meets H or E,
    /// or R̂ is not within E.
    void validate() const;

    /// Â and R̂ materialized against the instance graph, ascending.
    std::vector<Edge> addable_pairs() const;
    std::vector<Edge> removable_edges() const;
};

enum class StepKind { Add, Remove };

struct Step {
    StepKind kind;
    Edge edge;
    friend bool operator==(const Step&, const Step&) = default;
};

struct ModificationPlan {
    std::vector<Step> steps;
    friend bool operator==(const ModificationPlan&, const ModificationPlan&) = default;
};

void apply(Graph& g, const Step& step);
Graph apply(Graph g, const ModificationPlan& plan);

/// Throws InstanceError unless the plan fits the budget, draws adds from Â and
/// removes from R̂, and never repeats a pair.
void check_feasible(const EvasionInstance& inst, const ModificationPlan& plan);

/// One step per line: "+ a b" or "- a b".
void write_plan(std::ostream& out, const ModificationPlan& plan);
ModificationPlan read_plan(std::istream& in);

struct TrajectoryPoint {
    std::size_t iteration;
    double auc;
    double ap;
    friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Metrics of H on the unmodified graph, then after each step of the plan.
Trajectory replay_trajectory(const Graph& g, const ModificationPlan& plan, const Scorer& scorer,
                             std::span<const Edge> hidden, const GlobalParams& params = {});

struct RunOptions {
    /// When false the trajectory is left empty (plan only).
    bool track_metrics = true;
};

struct HeuristicResult {
    ModificationPlan plan;
    Trajectory trajectory;
};

/// Closed-triad removal, scores recomputed from scratch every iteration.
HeuristicResult run_ctr(const EvasionInstance& inst, const RunOptions& opts = {});
/// Closed-triad removal with incremental score updates and a priority queue.
HeuristicResult run_ctr_pq(const EvasionInstance& inst, const RunOptions& opts = {});
/// Open-triad creation, scores recomputed from scratch every iteration.
HeuristicResult run_otc(const EvasionInstance& inst, const RunOptions& opts = {});
/// Open-triad creation with incremental score updates.
HeuristicResult run_otc_fast(const EvasionInstance& inst, const RunOptions& opts = {});
/// Alternates OTC and CTR steps (OTC first); a stalled side yields its turn.
HeuristicResult run_alternating(const EvasionInstance& inst, const RunOptions& opts = {});

enum class Heuristic { CTR, OTC, Alternating };

/// Dispatches to the fast variant of each heuristic.
HeuristicResult run_heuristic(Heuristic h, const EvasionInstance& inst,
                              const RunOptions& opts = {});

// ---------------------------------------------------------------------------
// Exhaustive optimum

class SearchSpaceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class EnumerationOrder {
    DepthFirst,  ///< lexicographic subsets, incremental apply/undo
    BySize,      ///< all subsets of size 0, then 1, ..., rebuilt from scratch
};

struct OracleOptions {
    std::uint64_t max_evaluations = 2'000'000;
    EnumerationOrder order = EnumerationOrder::DepthFirst;
};

struct OracleResult {
    ModificationPlan plan;  ///< steps ascending by pair
    double value = 0.0;
    std::uint64_t evaluated = 0;
};

/// Σ_{k<=b} C(|Â|+|R̂|, k), saturating.
std::uint64_t search_space_size(std::size_t moves, std::size_t budget);

/// Minimizes the instance metric over every feasible (A, R). Ties go to the
/// lexicographically smallest plan. Throws SearchSpaceError past the cap.
OracleResult brute_force_optimum(const EvasionInstance& inst, const OracleOptions& opts = {});

/// Metric of H on g under the instance's scorer.
double instance_metric(const EvasionInstance& inst, const Graph& g);

}  // namespace linkhide
