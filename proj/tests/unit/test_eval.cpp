#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "qlp/baselines.hpp"
#include "qlp/evolution.hpp"
#include "support.hpp"

using namespace qlp;
using namespace qlp::test;

namespace {

ScoreMatrix from_values(Matrix values) {
  ScoreMatrix s;
  s.values = std::move(values);
  return s;
}

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng, int levels) {
  // few distinct levels so that ties are common
  std::uniform_int_distribution<int> pick(0, levels - 1);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = pick(rng) * 0.25;
  return m;
}

// Re(exp(-iAt))_{xy}^2 on the path 0-1-2-3-4 from its sine eigenbasis.
double p5_even(int x, int y, double t) {
  double re = 0;
  for (int k = 1; k <= 5; ++k) {
    const double lambda = 2 * std::cos(k * std::numbers::pi / 6);
    re += (2.0 / 6) * std::sin(k * std::numbers::pi * (x + 1) / 6) * std::sin(k * std::numbers::pi * (y + 1) / 6) *
          std::cos(lambda * t);
  }
  return re * re;
}

bool p5_end_pair_wins(double t) {
  const double ends = p5_even(0, 4, t);
  for (auto [x, y] : {std::pair{0, 2}, {1, 3}, {2, 4}, {0, 3}, {1, 4}})
    if (p5_even(x, y, t) >= ends) return false;
  return true;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("one edge per fold when folds equal edges") {
  const Graph g = path_graph(11);
  const auto plan = kfold_split(g, 10, 3);
  CHECK(plan.fold_sizes() == std::vector<std::size_t>(10, 1));
}

TEST_CASE("fold sizes for 6444 edges are 644 or 645") {
  // stand-in with the Messel edge count: 700 nodes, 6444 edges
  std::mt19937_64 rng(1);
  std::set<std::pair<NodeId, NodeId>> chosen;
  std::uniform_int_distribution<NodeId> node(0, 699);
  while (chosen.size() < 6444) {
    NodeId a = node(rng), b = node(rng);
    if (a != b) chosen.insert(std::minmax(a, b));
  }
  std::vector<Edge> edges;
  for (auto [a, b] : chosen) edges.push_back({a, b});
  const Graph g(700, std::move(edges));
  const auto sizes = kfold_split(g, 10, 42).fold_sizes();
  CHECK(std::count(sizes.begin(), sizes.end(), 645) == 4);
  CHECK(std::count(sizes.begin(), sizes.end(), 644) == 6);
}

TEST_CASE("fold plans are deterministic and exhaustive") {
  const Graph g = random_graph(40, 0.15, 2);
  const auto a = kfold_split(g, 10, 77);
  const auto b = kfold_split(g, 10, 77);
  CHECK(a.assignment == b.assignment);
  CHECK(a.digest() == b.digest());
  CHECK(a.digest() != kfold_split(g, 10, 78).digest());

  std::vector<int> seen(g.edge_count(), 0);
  std::size_t total = 0;
  for (std::size_t f = 0; f < 10; ++f) {
    for (const Edge& e : a.fold_edges(g, f)) {
      const auto it = std::lower_bound(g.edges().begin(), g.edges().end(), e);
      ++seen[static_cast<std::size_t>(it - g.edges().begin())];
      ++total;
    }
  }
  CHECK(total == g.edge_count());
  CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  CHECK_THROWS_AS(kfold_split(g, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(kfold_split(path_graph(3), 5, 0), std::invalid_argument);
}

TEST_CASE("ranking order and tie-break") {
  const Graph g = path_graph(4);  // candidates (0,2) (0,3) (1,3)
  Matrix m = Matrix::Zero(4, 4);
  m(0, 3) = m(3, 0) = 2.0;
  m(0, 2) = m(2, 0) = 1.0;
  m(1, 3) = m(3, 1) = 1.0;
  const auto r = rank_predictions(from_values(m), g);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].i == 0);
  CHECK(r.entries[0].j == 3);
  CHECK(r.entries[1].i == 0);
  CHECK(r.entries[1].j == 2);
  CHECK(r.entries[2].i == 1);
  CHECK(r.entries[2].j == 3);

  const auto zero = rank_predictions(from_values(Matrix::Zero(4, 4)), g, 2);
  REQUIRE(zero.entries.size() == 2);
  CHECK(zero.entries[0].j == 2);
  CHECK(zero.entries[1].j == 3);
}

TEST_CASE("ranking never contains training edges or self pairs") {
  const Graph g = random_graph(20, 0.3, 4);
  const auto r = rank_predictions(ra_l2(g), g);
  const std::size_t n = g.node_count();
  CHECK(r.entries.size() == n * (n - 1) / 2 - g.edge_count());
  for (const auto& e : r.entries) {
    REQUIRE(e.i < e.j);
    REQUIRE_FALSE(g.has_edge(e.i, e.j));
  }
  for (std::size_t k = 1; k < r.entries.size(); ++k) {
    const auto& a = r.entries[k - 1];
    const auto& b = r.entries[k];
    REQUIRE((a.score > b.score || (a.score == b.score && std::pair(a.i, a.j) < std::pair(b.i, b.j))));
  }
}

TEST_CASE("non-finite scores are rejected") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 2) = m(2, 0) = std::nan("");
  CHECK_THROWS_AS(rank_predictions(from_values(m), path_graph(3)), NumericError);
}

TEST_CASE("standard cutoff") {
  // N = 100, k_av = 2 * 150 / 100 = 3  ->  floor(0.05 * 300) = 15
  std::vector<Edge> edges;
  for (NodeId v = 0; v < 100; ++v) {
    edges.push_back(make_edge(v, (v + 1) % 100));
    if (v < 50) edges.push_back({v, v + 50});
  }
  const Graph g(100, std::move(edges));
  REQUIRE(g.edge_count() == 150);
  CHECK(standard_cutoff(g) == 15);
}

TEST_CASE("precision of 0.8 at rank 9") {
  RankedPredictions r;
  EdgeSet test;
  for (NodeId k = 0; k < 10; ++k) {
    r.entries.push_back({k, static_cast<NodeId>(k + 100), 1.0});
    if (k != 3 && k != 6) test.insert(k, k + 100);
  }
  const auto curve = cumulative_precision(r, test);
  CHECK(curve[9] == doctest::Approx(0.8));
  CHECK(cumulative_precision(r, EdgeSet{}) == std::vector<double>(10, 0.0));
  EdgeSet all;
  for (const auto& e : r.entries) all.insert(e.i, e.j);
  CHECK(cumulative_precision(r, all) == std::vector<double>(10, 1.0));
}

TEST_CASE("hit counts along the curve are nondecreasing integers") {
  const Graph g = random_graph(30, 0.2, 8);
  const auto plan = kfold_split(g, 5, 1);
  const auto test_edges = plan.fold_edges(g, 0);
  const Graph train = g.without_edges(test_edges);
  const auto curve = cumulative_precision(rank_predictions(l3(train), train), EdgeSet(test_edges));
  double prev = 0;
  for (std::size_t r = 0; r < curve.size(); ++r) {
    const double hits = curve[r] * static_cast<double>(r + 1);
    REQUIRE(std::abs(hits - std::round(hits)) < 1e-9);
    REQUIRE(hits >= prev - 1e-9);
    prev = hits;
  }
}

TEST_CASE("AUC edge cases") {
  const Graph g = path_graph(4);
  EdgeSet test;
  test.insert(0, 3);
  Matrix perfect = Matrix::Zero(4, 4);
  perfect(0, 3) = perfect(3, 0) = 1.0;
  const auto m = auc_metrics(from_values(perfect), g, test);
  CHECK(m.roc == 1.0);
  CHECK(m.pr == 1.0);

  const auto flat = auc_metrics(from_values(Matrix::Constant(4, 4, 0.3)), g, test);
  CHECK(flat.roc == 0.5);
  CHECK(flat.pr == doctest::Approx(1.0 / 3));  // one threshold: precision 1/3 at full recall

  CHECK_THROWS_AS(auc_metrics(from_values(perfect), g, EdgeSet{}), UndefinedMetricError);
  EdgeSet every;
  for (auto [a, b] : {std::pair{0, 2}, {0, 3}, {1, 3}}) every.insert(a, b);
  CHECK_THROWS_AS(auc_metrics(from_values(perfect), g, every), UndefinedMetricError);
}

TEST_CASE("AUC-PR steps through precision at each positive") {
  // candidates of the empty graph on 4 nodes: 6 pairs
  const Graph g(4, {});
  Matrix m = Matrix::Zero(4, 4);
  const double s[6] = {6, 5, 4, 3, 2, 1};
  const std::pair<NodeId, NodeId> pairs[6] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) m(pairs[k].first, pairs[k].second) = m(pairs[k].second, pairs[k].first) = s[k];
  EdgeSet test;
  test.insert(0, 1);  // rank 1
  test.insert(0, 3);  // rank 3
  const auto a = auc_metrics(from_values(m), g, test);
  CHECK(a.pr == doctest::Approx(0.5 * (1.0 + 2.0 / 3)));
  CHECK(a.roc == doctest::Approx(7.0 / 8));
}

TEST_CASE("AUC-ROC matches exhaustive pair comparison") {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t n = 5 + instance % 8;
    const Graph g = random_graph(n, 0.3, 500 + instance);
    EdgeSet test;
    std::bernoulli_distribution coin(0.3);
    std::size_t candidates = 0, positives = 0;
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) {
        if (g.has_edge(i, j)) continue;
        ++candidates;
        if (coin(rng)) {
          test.insert(i, j);
          ++positives;
        }
      }
    if (positives == 0 || positives == candidates) continue;
    const Matrix m = random_symmetric(n, rng, 1 + instance % 5);
    const auto got = auc_metrics(from_values(m), g, test);
    REQUIRE(std::abs(got.roc - exhaustive_auc(m, g, test)) <= 1e-12);
    REQUIRE(got.pr >= 0.0);
    REQUIRE(got.pr <= 1.0);
  }
}

TEST_CASE("ranking metrics are invariant under increasing transforms") {
  const Graph g = random_graph(25, 0.2, 31);
  const auto plan = kfold_split(g, 5, 9);
  const auto test_edges = plan.fold_edges(g, 2);
  const Graph train = g.without_edges(test_edges);
  const EdgeSet test(test_edges);
  const ScoreMatrix base = ra_l2(train);
  const ScoreMatrix mapped = from_values(base.values.unaryExpr([](double x) { return std::exp(3 * x) - 7; }));
  const auto r1 = rank_predictions(base, train);
  const auto r2 = rank_predictions(mapped, train);
  REQUIRE(r1.entries.size() == r2.entries.size());
  for (std::size_t k = 0; k < r1.entries.size(); ++k) {
    REQUIRE(r1.entries[k].i == r2.entries[k].i);
    REQUIRE(r1.entries[k].j == r2.entries[k].j);
  }
  CHECK(cumulative_precision(r1, test) == cumulative_precision(r2, test));
  const auto a1 = auc_metrics(base, train, test);
  const auto a2 = auc_metrics(mapped, train, test);
  CHECK(a1.roc == a2.roc);
  CHECK(a1.pr == a2.pr);
}

TEST_CASE("cross validation report") {
  const Graph g = random_graph(40, 0.15, 12);
  const auto plan = kfold_split(g, 10, 5);
  const auto report = cross_validate(g, {.method = Method::ra_l2}, plan, 20);
  REQUIRE(report.folds.size() == 10);
  CHECK(report.precision_mean.size() == 20);
  CHECK(report.plan_digest == plan.digest());
  double mean = 0;
  for (const auto& f : report.folds) {
    CHECK(f.auc.roc >= 0.0);
    CHECK(f.auc.roc <= 1.0);
    mean += f.auc.roc / 10;
  }
  CHECK(report.auc_roc_mean == doctest::Approx(mean));
  double var = 0;
  for (const auto& f : report.folds) var += (f.auc.roc - mean) * (f.auc.roc - mean) / 10;
  CHECK(report.auc_roc_std == doctest::Approx(std::sqrt(var)));
}

TEST_CASE("tuning with a single grid point") {
  const Graph g = random_graph(30, 0.2, 3);
  const std::vector<double> grid{0.7};
  CHECK(tune_hyperparameter(g, {.method = Method::qlp_odd}, grid, 1).best == 0.7);
  CHECK_THROWS_AS(tune_hyperparameter(g, {.method = Method::qlp_odd}, std::vector<double>{}, 1),
                  std::invalid_argument);
}

TEST_CASE("tuning ties go to the smaller parameter") {
  // the holdout removes 1 of 10 edges of K5, leaving one candidate pair that
  // is always the validation edge, so every alpha scores the same
  const Graph g = complete_graph(5);
  const std::vector<double> grid{0.5, 0.1, 0.3};
  const auto r = tune_on_holdout(g, {.method = Method::lo}, grid, 0.1, 4, 1);
  CHECK(r.grid == std::vector<double>{0.1, 0.3, 0.5});
  CHECK(r.values[0] == r.values[1]);
  CHECK(r.values[1] == r.values[2]);
  CHECK(r.best == 0.1);
}

TEST_CASE("planted optimum: the tuner finds the time where the removed pair ranks first") {
  // C5 is edge-transitive, so whichever edge the holdout removes the inner
  // graph is P5 and the validation pair is its end-to-end pair.
  REQUIRE_FALSE(p5_end_pair_wins(0.5));
  REQUIRE_FALSE(p5_end_pair_wins(1.0));
  REQUIRE(p5_end_pair_wins(2.6));
  const std::vector<double> grid{0.5, 1.0, 2.6};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = tune_on_holdout(cycle_graph(5), {.method = Method::qlp_even}, grid, 0.1, seed, 1);
    CHECK(r.holdout_edges == 1);
    CHECK(r.best == 2.6);
    CHECK(r.values == std::vector<double>{0.0, 0.0, 1.0});
  }
}

TEST_CASE("held-out validation") {
  const Graph train = parse("a b\nb c\nc d\nd e\n");
  const std::vector<std::pair<std::string, std::string>> inside{{"a", "b"}, {"c", "d"}};
  const auto zero = heldout_validate(train, inside, {.method = Method::ra_l2}, 500);
  CHECK(zero.test_edges_in_train == 2);
  CHECK(zero.test_edges_used == 0);
  CHECK(zero.precision.size() == 6);  // all 6 candidates, fewer than top_n
  CHECK(std::all_of(zero.precision.begin(), zero.precision.end(), [](double p) { return p == 0.0; }));

  const std::vector<std::pair<std::string, std::string>> mixed{{"a", "c"}, {"a", "zz"}, {"e", "c"}};
  const auto r = heldout_validate(train, mixed, {.method = Method::ra_l2}, 2);
  CHECK(r.test_edges_dropped == 1);
  CHECK(r.test_edges_used == 2);
  REQUIRE(r.precision.size() == 2);
  CHECK(r.precision[1] == doctest::Approx(0.5));  // top two RA pairs: (a,c) and (b,d)
}

TEST_CASE("objective names") {
  CHECK(parse_objective("auc-pr") == TuneObjective::auc_pr);
  CHECK(to_string(TuneObjective::precision_area) == "precision-area");
  CHECK_THROWS_AS(parse_objective("f1"), std::invalid_argument);
}

}  // TEST_SUITE
