#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "linkhide/evasion.hpp"
#include "linkhide/generators.hpp"
#include "linkhide/random.hpp"
#include "linkhide/scoring.hpp"

namespace linkhide {

enum class HiddenStrategy { RemoveRandomEdges, RandomNonEdges, TopRanked };

std::string_view name(HiddenStrategy s);
std::optional<HiddenStrategy> parse_hidden_strategy(std::string_view text);
std::string_view name(Heuristic h);
std::optional<Heuristic> parse_heuristic(std::string_view text);

/// Either a generated model (re-drawn per repetition) or a fixed edge-list file.
using NetworkSource = std::variant<NetworkModel, std::filesystem::path>;

/// "sf:..", "sw:..", "er:.." are models; anything else is a file path.
NetworkSource parse_network(std::string_view text);
std::string network_string(const NetworkSource& src);

/// nullopt means the paper rule: |H| = max(10, |E|/100), b = 4|H|.
struct SizeRules {
    std::optional<std::size_t> hidden_size;
    std::optional<std::size_t> budget;

    std::size_t resolve_hidden(std::size_t edges) const;
    std::size_t resolve_budget(std::size_t hidden) const;
};

/// The observed graph after hiding, and the hidden pairs.
struct HiddenSelection {
    Graph graph;
    std::vector<Edge> hidden;
};

/// remove-random-edges deletes the sampled edges from the graph; the other
/// strategies leave it unchanged. top-ranked uses `ranking_index`.
HiddenSelection select_hidden(const Graph& g, HiddenStrategy strategy, std::size_t count, Rng& rng,
                              const Scorer& ranking_index = LocalIndexKind::CN,
                              const GlobalParams& params = {});

/// Mean and 95% normal-approximation half-width (1.96 s / sqrt(n)); zero width for n = 1.
struct MeanCI {
    double mean = 0.0;
    double half_width = 0.0;
};
MeanCI mean_ci(std::span<const double> xs);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

/// Pads a trajectory to `length` points by repeating its last point.
Trajectory forward_fill(Trajectory t, std::size_t length);

// ---------------------------------------------------------------------------

struct ExperimentConfig {
    NetworkSource network = NetworkModel{ScaleFree{100, 3}};
    std::vector<Scorer> indices;
    Heuristic heuristic = Heuristic::CTR;
    HiddenStrategy hidden = HiddenStrategy::RemoveRandomEdges;
    SizeRules sizes;
    std::size_t repetitions = 50;
    std::uint64_t seed = 0;
    GlobalParams params;
    unsigned threads = 0;  ///< 0 = hardware concurrency

    void validate() const;
};

struct AggregatedRow {
    std::size_t iteration;
    MeanCI auc;
    MeanCI ap;
};

struct AggregatedTrajectory {
    Scorer index;
    std::vector<AggregatedRow> rows;
};

struct TrajectoryExperiment {
    std::vector<AggregatedTrajectory> per_index;
    /// Raw per-repetition trajectories, [index][rep], forward-filled.
    std::vector<std::vector<Trajectory>> raw;
    std::size_t nodes = 0;
};

TrajectoryExperiment run_trajectory_experiment(const ExperimentConfig& cfg);
void write_trajectory_csv(std::ostream& out, const ExperimentConfig& cfg,
                          const TrajectoryExperiment& result);

// ---------------------------------------------------------------------------

struct SweepConfig {
    std::string family = "sf";  ///< sf | sw | er
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ds;
    double rewiring = 0.25;  ///< only for sw
    std::vector<Scorer> indices;
    std::vector<Heuristic> heuristics = {Heuristic::CTR};
    SizeRules sizes{100, 400};
    std::size_t repetitions = 10;
    std::uint64_t seed = 0;
    GlobalParams params;
    unsigned threads = 0;

    void validate() const;
};

struct SweepCell {
    std::size_t n;
    std::size_t d;
    Scorer index;
    Heuristic heuristic;
    double auc_initial;        ///< mean over repetitions
    double auc_final;
    double auc_relative;       ///< mean of (final - initial) / initial
    double ap_initial;
    double ap_final;
    double ap_relative;
    std::size_t skipped_reps;  ///< repetitions with initial AUC of 0 (relative change undefined)
};

struct SweepMarginal {
    Scorer index;
    Heuristic heuristic;
    std::size_t key;  ///< n or d
    double auc_relative;
    double ap_relative;
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<SweepMarginal> by_n;  ///< averaged over d
    std::vector<SweepMarginal> by_d;  ///< averaged over n
};

NetworkModel sweep_model(const SweepConfig& cfg, std::size_t n, std::size_t d);
SweepResult run_tolerance_sweep(const SweepConfig& cfg);
void write_sweep_csv(std::ostream& out, const SweepConfig& cfg, const SweepResult& result);

// ---------------------------------------------------------------------------

struct SingleLinkConfig {
    NetworkSource network = NetworkModel{ScaleFree{1000, 3}};
    std::vector<Scorer> indices;
    Heuristic heuristic = Heuristic::CTR;
    std::size_t top_k = 1000;
    std::size_t budget = 10;
    std::size_t repetitions = 10;
    std::uint64_t seed = 0;
    GlobalParams params;
    unsigned threads = 0;

    void validate() const;
};

/// One run of the single-link scenario, kept for structural checks.
struct SingleLinkRun {
    Edge hidden;
    NodeId evader;
    ModificationPlan plan;
    Trajectory trajectory;
};

/// Builds the evader-restricted instance for hiding `pair` from `evader`'s side.
EvasionInstance single_link_instance(const Graph& g, const Scorer& scorer, Edge pair,
                                     NodeId evader, std::size_t budget,
                                     const GlobalParams& params = {});

/// The top-k non-edges of g under the scorer, by descending score then pair.
std::vector<Edge> top_ranked_non_edges(const Graph& g, const Scorer& scorer, std::size_t k,
                                       const GlobalParams& params = {});

struct SingleLinkResult {
    std::vector<AggregatedTrajectory> per_index;
    /// Runs of the first repetition, per index.
    std::vector<std::vector<SingleLinkRun>> first_rep_runs;
    std::size_t nodes = 0;
};

SingleLinkResult run_single_link_scenario(const SingleLinkConfig& cfg);
void write_single_link_csv(std::ostream& out, const SingleLinkConfig& cfg,
                           const SingleLinkResult& result);

// ---------------------------------------------------------------------------

struct BenchConfig {
    std::string family = "sf";
    std::vector<std::size_t> ns;
    std::size_t d = 3;
    double rewiring = 0.25;
    std::vector<Heuristic> heuristics = {Heuristic::CTR, Heuristic::OTC};
    SizeRules sizes{100, 400};
    std::size_t repetitions = 1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct BenchRow {
    std::size_t n;
    Heuristic heuristic;
    MeanCI seconds;
    double steps;
};

/// Wall-clock seconds to build the instance and run the heuristic (graph
/// generation and hidden-set selection excluded), plan only.
std::vector<BenchRow> run_runtime_benchmark(const BenchConfig& cfg);
void write_bench_csv(std::ostream& out, const BenchConfig& cfg, std::span<const BenchRow> rows);

}  // namespace linkhide
