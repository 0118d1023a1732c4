#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qlp/scores.hpp"

namespace qlp {

/// Thrown when AUC is requested without positives or without negatives.
class UndefinedMetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unordered node-pair set.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::span<const Edge> edges);

  void insert(NodeId a, NodeId b) { keys_.insert(edge_key(a, b)); }
  bool contains(NodeId a, NodeId b) const { return keys_.contains(edge_key(a, b)); }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }

 private:
  std::unordered_set<std::uint64_t> keys_;
};

/// Random partition of a graph's edges (in canonical order) into folds.
struct FoldPlan {
  std::size_t fold_count = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint32_t> assignment;  // fold id per edge of g.edges()

  std::vector<Edge> fold_edges(const Graph& g, std::size_t fold) const;
  std::vector<std::size_t> fold_sizes() const;
  /// FNV-1a 64 over (fold_count, seed, assignment) as 16 hex digits.
  std::string digest() const;
};

/// Shuffles the edge indices with the seed and deals them round-robin, so
/// fold sizes differ by at most one. Throws std::invalid_argument when
/// folds < 2 or the graph has fewer edges than folds.
FoldPlan kfold_split(const Graph& g, std::size_t folds, std::uint64_t seed);

struct RankedPrediction {
  NodeId i = 0;  // i < j
  NodeId j = 0;
  double score = 0.0;
};

/// Candidate pairs (non-adjacent in the training graph, i != j) sorted by
/// descending score, ties broken by ascending (i, j).
struct RankedPredictions {
  std::vector<RankedPrediction> entries;
  std::size_t cutoff = 0;
};

inline constexpr std::size_t kNoCutoff = static_cast<std::size_t>(-1);

/// floor(0.05 * N * k_av), the plotting window for precision curves.
std::size_t standard_cutoff(const Graph& g);

RankedPredictions rank_predictions(const ScoreMatrix& scores, const Graph& train,
                                   std::size_t cutoff = kNoCutoff);

/// curve[r] = |top (r+1) ∩ test| / (r+1).
std::vector<double> cumulative_precision(const RankedPredictions& ranked, const EdgeSet& test);

struct AucMetrics {
  double roc = 0.0;
  double pr = 0.0;
};

/// Over all candidate pairs of train: positives are those in test, the rest
/// negatives. ROC uses the Mann-Whitney statistic with midranks; PR is the
/// step-wise average precision, tied scores forming one threshold.
AucMetrics auc_metrics(const ScoreMatrix& scores, const Graph& train, const EdgeSet& test);

enum class TuneObjective { precision_area, auc_roc, auc_pr };

std::string_view to_string(TuneObjective o);
TuneObjective parse_objective(std::string_view name);

struct TuningResult {
  MethodSpec base;
  TuneObjective objective = TuneObjective::precision_area;
  std::vector<double> grid;
  std::vector<double> values;  // objective per grid point
  double best = 0.0;
  std::size_t holdout_edges = 0;
  std::size_t cutoff = 0;
};

/// Removes round(holdout_fraction * M) random edges of train as validation
/// positives, scores the remainder at every grid value, and returns the
/// argmax of the objective; ties go to the smaller parameter.
/// precision_area is the sum of the cumulative precision curve up to cutoff.
TuningResult tune_on_holdout(const Graph& train, const MethodSpec& base, std::span<const double> grid,
                             double holdout_fraction, std::uint64_t seed, std::size_t cutoff,
                             TuneObjective objective = TuneObjective::precision_area);

/// Inner holdout on the training graph of the first fold of
/// kfold_split(g, folds, seed): 10% validation edges, standard cutoff of g.
TuningResult tune_hyperparameter(const Graph& g, const MethodSpec& base, std::span<const double> grid,
                                 std::uint64_t seed,
                                 TuneObjective objective = TuneObjective::precision_area,
                                 std::size_t folds = 10);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t test_edges = 0;
  AucMetrics auc;
  std::vector<double> precision;
};

struct EvalReport {
  MethodSpec spec;
  std::size_t fold_count = 0;
  std::uint64_t seed = 0;
  std::size_t cutoff = 0;
  std::string plan_digest;
  std::vector<FoldResult> folds;
  std::vector<double> precision_mean;
  std::vector<double> precision_std;
  double auc_roc_mean = 0.0;
  double auc_roc_std = 0.0;
  double auc_pr_mean = 0.0;
  double auc_pr_std = 0.0;
  std::optional<TuningResult> tuning;
};

/// Train on g minus each fold, test on the fold. Standard deviations are
/// population (divide by fold count). Mean curves span the shortest fold
/// curve.
EvalReport cross_validate(const Graph& g, const MethodSpec& spec, const FoldPlan& plan,
                          std::size_t cutoff);

struct HeldoutResult {
  MethodSpec spec;
  std::vector<double> precision;
  std::size_t test_edges_used = 0;
  std::size_t test_edges_dropped = 0;   // endpoint label unknown to train
  std::size_t test_edges_in_train = 0;  // already training edges; never ranked
  std::optional<TuningResult> tuning;
};

struct HeldoutTuning {
  std::vector<double> grid;
  std::uint64_t seed = 0;
  double holdout_fraction = 0.5;
};

/// Scores train and checks its top_n candidates against test pairs given by
/// label. With tuning, the parameter is first chosen by tune_on_holdout on
/// train with cutoff top_n.
HeldoutResult heldout_validate(const Graph& train,
                               std::span<const std::pair<std::string, std::string>> test_pairs,
                               const MethodSpec& spec, std::size_t top_n = 500,
                               const std::optional<HeldoutTuning>& tuning = std::nullopt);

}  // namespace qlp
