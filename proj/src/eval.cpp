#include "qlp/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "qlp/evolution.hpp"
#include "qlp/random.hpp"

namespace qlp {

EdgeSet::EdgeSet(std::span<const Edge> edges) {
  keys_.reserve(edges.size() * 2);
  for (const Edge& e : edges) insert(e.u, e.v);
}

std::vector<Edge> FoldPlan::fold_edges(const Graph& g, std::size_t fold) const {
  if (assignment.size() != g.edge_count()) throw std::invalid_argument("fold plan does not match graph");
  std::vector<Edge> out;
  const auto edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (assignment[e] == fold) out.push_back(edges[e]);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::fold_sizes() const {
  std::vector<std::size_t> sizes(fold_count, 0);
  for (auto f : assignment) ++sizes[f];
  return sizes;
}

std::string FoldPlan::digest() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      h ^= (word >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(fold_count);
  mix(seed);
  for (auto f : assignment) mix(f);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FoldPlan kfold_split(const Graph& g, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least two folds");
  if (g.edge_count() < folds) throw std::invalid_argument("fewer edges than folds");
  std::vector<std::uint32_t> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0u);
  std::mt19937_64 rng(derive_seed(seed, 0xf01d));
  shuffle_in_place(std::span<std::uint32_t>(order), rng);

  FoldPlan plan;
  plan.fold_count = folds;
  plan.seed = seed;
  plan.assignment.resize(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    plan.assignment[order[pos]] = static_cast<std::uint32_t>(pos % folds);
  }
  return plan;
}

std::size_t standard_cutoff(const Graph& g) {
  return static_cast<std::size_t>(
      std::floor(0.05 * static_cast<double>(g.node_count()) * g.mean_degree()));
}

namespace {

// Visits every candidate pair (i < j, not a training edge) in row order.
template <class Fn>
void for_each_candidate(const Graph& train, Fn&& fn) {
  const std::size_t n = train.node_count();
  std::vector<NodeId> mark(n, static_cast<NodeId>(-1));
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId w : train.neighbors(i)) mark[w] = i;
    for (NodeId j = i + 1; j < n; ++j) {
      if (mark[j] != i) fn(i, j);
    }
  }
}

void check_dimensions(const ScoreMatrix& scores, const Graph& train) {
  if (scores.size() != train.node_count()) {
    throw std::invalid_argument("score matrix does not match the training graph");
  }
}

bool ranks_before(const RankedPrediction& a, const RankedPrediction& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

double mean_of(std::span<const double> xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double population_std(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size()));
}

}  // namespace

RankedPredictions rank_predictions(const ScoreMatrix& scores, const Graph& train, std::size_t cutoff) {
  check_dimensions(scores, train);
  std::vector<RankedPrediction> all;
  for_each_candidate(train, [&](NodeId i, NodeId j) {
    const double s = scores(i, j);
    if (!std::isfinite(s)) throw NumericError("non-finite score in ranking");
    all.push_back({i, j, s});
  });
  const std::size_t keep = std::min(cutoff, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), ranks_before);
  all.resize(keep);
  return {std::move(all), cutoff};
}

std::vector<double> cumulative_precision(const RankedPredictions& ranked, const EdgeSet& test) {
  std::vector<double> curve(ranked.entries.size());
  std::size_t hits = 0;
  for (std::size_t r = 0; r < curve.size(); ++r) {
    if (test.contains(ranked.entries[r].i, ranked.entries[r].j)) ++hits;
    curve[r] = static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return curve;
}

AucMetrics auc_metrics(const ScoreMatrix& scores, const Graph& train, const EdgeSet& test) {
  check_dimensions(scores, train);
  struct Item {
    double score;
    bool positive;
  };
  std::vector<Item> items;
  std::size_t positives = 0;
  for_each_candidate(train, [&](NodeId i, NodeId j) {
    const bool pos = test.contains(i, j);
    positives += pos ? 1 : 0;
    items.push_back({scores(i, j), pos});
  });
  const std::size_t negatives = items.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw UndefinedMetricError("AUC needs at least one positive and one negative candidate");
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.score < b.score; });

  // ascending pass: midrank sum of positives
  double positive_rank_sum = 0.0;
  for (std::size_t begin = 0; begin < items.size();) {
    std::size_t end = begin;
    std::size_t pos_in_group = 0;
    while (end < items.size() && items[end].score == items[begin].score) {
      pos_in_group += items[end].positive ? 1 : 0;
      ++end;
    }
    // ranks begin+1 .. end
    const double midrank = 0.5 * (static_cast<double>(begin + 1) + static_cast<double>(end));
    positive_rank_sum += midrank * static_cast<double>(pos_in_group);
    begin = end;
  }
  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  AucMetrics m;
  m.roc = (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);

  // descending pass: average precision with tied scores as one threshold
  std::size_t tp = 0, seen = 0;
  double ap = 0.0;
  for (std::size_t end = items.size(); end > 0;) {
    std::size_t begin = end;
    std::size_t pos_in_group = 0;
    while (begin > 0 && items[begin - 1].score == items[end - 1].score) {
      --begin;
      pos_in_group += items[begin].positive ? 1 : 0;
    }
    tp += pos_in_group;
    seen += end - begin;
    if (pos_in_group > 0) {
      ap += (static_cast<double>(pos_in_group) / np) *
            (static_cast<double>(tp) / static_cast<double>(seen));
    }
    end = begin;
  }
  m.pr = ap;
  return m;
}

std::string_view to_string(TuneObjective o) {
  switch (o) {
    case TuneObjective::precision_area: return "precision-area";
    case TuneObjective::auc_roc: return "auc-roc";
    case TuneObjective::auc_pr: return "auc-pr";
  }
  return "?";
}

TuneObjective parse_objective(std::string_view name) {
  for (auto o : {TuneObjective::precision_area, TuneObjective::auc_roc, TuneObjective::auc_pr}) {
    if (to_string(o) == name) return o;
  }
  throw std::invalid_argument("unknown tuning objective '" + std::string(name) + "'");
}

TuningResult tune_on_holdout(const Graph& train, const MethodSpec& base, std::span<const double> grid,
                             double holdout_fraction, std::uint64_t seed, std::size_t cutoff,
                             TuneObjective objective) {
  if (grid.empty()) throw std::invalid_argument("empty tuning grid");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw std::invalid_argument("holdout fraction must lie in (0, 1)");
  }
  TuningResult result;
  result.base = base;
  result.objective = objective;
  result.grid.assign(grid.begin(), grid.end());
  result.cutoff = cutoff;

  // grid sorted ascending so ties resolve to the smaller parameter
  std::sort(result.grid.begin(), result.grid.end());
  result.grid.erase(std::unique(result.grid.begin(), result.grid.end()), result.grid.end());

  std::vector<Edge> edges(train.edges().begin(), train.edges().end());
  std::mt19937_64 rng(derive_seed(seed, 0x401d));
  shuffle_in_place(std::span<Edge>(edges), rng);
  auto holdout_count = static_cast<std::size_t>(
      std::llround(holdout_fraction * static_cast<double>(edges.size())));
  holdout_count = std::clamp<std::size_t>(holdout_count, 1, edges.size());
  edges.resize(holdout_count);
  result.holdout_edges = holdout_count;

  const Graph inner = train.without_edges(edges);
  const EdgeSet validation(edges);

  std::optional<Spectrum> spectrum;
  if (is_qlp(base.method)) spectrum = decompose(inner);

  double best_value = -std::numeric_limits<double>::infinity();
  for (double param : result.grid) {
    const MethodSpec spec = base.with_parameter(param);
    const ScoreMatrix s =
        spectrum ? qlp_score(*spectrum, param,
                             base.method == Method::qlp_even ? Parity::even : Parity::odd)
                 : score(inner, spec);
    double value = 0.0;
    switch (objective) {
      case TuneObjective::precision_area: {
        const auto curve = cumulative_precision(rank_predictions(s, inner, cutoff), validation);
        value = std::accumulate(curve.begin(), curve.end(), 0.0);
        break;
      }
      case TuneObjective::auc_roc: value = auc_metrics(s, inner, validation).roc; break;
      case TuneObjective::auc_pr: value = auc_metrics(s, inner, validation).pr; break;
    }
    result.values.push_back(value);
    if (value > best_value) {
      best_value = value;
      result.best = param;
    }
  }
  return result;
}

TuningResult tune_hyperparameter(const Graph& g, const MethodSpec& base, std::span<const double> grid,
                                 std::uint64_t seed, TuneObjective objective, std::size_t folds) {
  const FoldPlan plan = kfold_split(g, folds, seed);
  const Graph train = g.without_edges(plan.fold_edges(g, 0));
  return tune_on_holdout(train, base, grid, 0.1, seed, standard_cutoff(g), objective);
}

EvalReport cross_validate(const Graph& g, const MethodSpec& spec, const FoldPlan& plan,
                          std::size_t cutoff) {
  spec.validate();
  EvalReport report;
  report.spec = spec;
  report.fold_count = plan.fold_count;
  report.seed = plan.seed;
  report.cutoff = cutoff;
  report.plan_digest = plan.digest();

  std::vector<double> roc, pr;
  for (std::size_t f = 0; f < plan.fold_count; ++f) {
    const auto test_edges = plan.fold_edges(g, f);
    const Graph train = g.without_edges(test_edges);
    const EdgeSet test(test_edges);
    const ScoreMatrix s = score(train, spec);

    FoldResult fr;
    fr.fold = f;
    fr.test_edges = test_edges.size();
    fr.precision = cumulative_precision(rank_predictions(s, train, cutoff), test);
    fr.auc = auc_metrics(s, train, test);
    roc.push_back(fr.auc.roc);
    pr.push_back(fr.auc.pr);
    report.folds.push_back(std::move(fr));
  }

  std::size_t length = kNoCutoff;
  for (const auto& fr : report.folds) length = std::min(length, fr.precision.size());
  if (report.folds.empty()) length = 0;
  std::vector<double> column(report.folds.size());
  for (std::size_t r = 0; r < length; ++r) {
    for (std::size_t f = 0; f < report.folds.size(); ++f) column[f] = report.folds[f].precision[r];
    report.precision_mean.push_back(mean_of(column));
    report.precision_std.push_back(population_std(column));
  }
  report.auc_roc_mean = mean_of(roc);
  report.auc_roc_std = population_std(roc);
  report.auc_pr_mean = mean_of(pr);
  report.auc_pr_std = population_std(pr);
  return report;
}

HeldoutResult heldout_validate(const Graph& train,
                               std::span<const std::pair<std::string, std::string>> test_pairs,
                               const MethodSpec& spec, std::size_t top_n,
                               const std::optional<HeldoutTuning>& tuning) {
  HeldoutResult result;
  result.spec = spec;
  EdgeSet test;
  for (const auto& [a, b] : test_pairs) {
    const auto u = train.find_label(a);
    const auto v = train.find_label(b);
    if (!u || !v || *u == *v) {
      ++result.test_edges_dropped;
      continue;
    }
    if (train.has_edge(*u, *v)) {
      ++result.test_edges_in_train;
      continue;
    }
    test.insert(*u, *v);
  }
  result.test_edges_used = test.size();

  if (tuning && has_parameter(spec.method)) {
    result.tuning = tune_on_holdout(train, spec, tuning->grid, tuning->holdout_fraction, tuning->seed, top_n);
    result.spec = spec.with_parameter(result.tuning->best);
  }
  const ScoreMatrix s = score(train, result.spec);
  result.precision = cumulative_precision(rank_predictions(s, train, top_n), test);
  return result;
}

}  // namespace qlp
