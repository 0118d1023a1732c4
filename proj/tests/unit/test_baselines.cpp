#include <doctest.h>

#include <cmath>

#include "qlp/baselines.hpp"
#include "support.hpp"

using namespace qlp;
using namespace qlp::test;

namespace {

// Direct transcription of the CH-L2 rule for one pair.
double ch_l2_pair(const Graph& g, NodeId i, NodeId j) {
  std::vector<NodeId> lc;
  for (NodeId z : g.neighbors(i))
    if (g.has_edge(z, j)) lc.push_back(z);
  double total = 0;
  for (NodeId z : lc) {
    int in = 0, out = 0;
    for (NodeId w : g.neighbors(z)) {
      if (std::find(lc.begin(), lc.end(), w) != lc.end()) ++in;
      else if (w != i && w != j) ++out;
    }
    total += (1.0 + in) / (1.0 + out);
  }
  return total;
}

// Direct transcription of the CH-L3 rule for one pair.
double ch_l3_pair(const Graph& g, NodeId i, NodeId j) {
  std::vector<std::pair<NodeId, NodeId>> paths;
  std::vector<NodeId> lc;
  for (NodeId k : g.neighbors(i)) {
    if (k == j) continue;
    for (NodeId l : g.neighbors(k)) {
      if (l == i || !g.has_edge(l, j)) continue;
      paths.emplace_back(k, l);
      lc.push_back(k);
      lc.push_back(l);
    }
  }
  auto in_lc = [&](NodeId w) { return std::find(lc.begin(), lc.end(), w) != lc.end(); };
  auto weight = [&](NodeId z) {
    int in = 0, out = 0;
    for (NodeId w : g.neighbors(z)) {
      if (in_lc(w)) ++in;
      else if (w != i && w != j) ++out;
    }
    return std::sqrt((1.0 + in) / (1.0 + out));
  };
  double total = 0;
  for (auto [k, l] : paths) total += weight(k) * weight(l);
  return total;
}

void check_symmetric_finite(const ScoreMatrix& s) {
  CHECK(s.values.allFinite());
  CHECK(max_abs_diff(s.values, s.values.transpose()) == 0.0);
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("RA-L2 examples") {
  CHECK(ra_l2(path_graph(3))(0, 2) == doctest::Approx(0.5));
  CHECK(ra_l2(complete_graph(2))(0, 1) == 0.0);
  // 0 and 1 share 2 (degree 2) and 3 (degree 3; also linked to 4)
  const Graph g = make_graph(5, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {3, 4}});
  CHECK(ra_l2(g)(0, 1) == doctest::Approx(0.5 + 1.0 / 3));
}

TEST_CASE("L3 examples") {
  CHECK(l3(path_graph(4))(0, 3) == doctest::Approx(0.5));
  CHECK(l3(cycle_graph(4))(0, 2) == 0.0);
}

TEST_CASE("unnormalized RA-L2 and L3 count walks") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = random_graph(10 + seed * 2, 0.2, seed + 300);
    CHECK(ra_l2(g, Normalization::none).values == count_walks(g, 2).cast<double>());
    CHECK(l3(g, Normalization::none).values == count_walks(g, 3).cast<double>());
  }
}

TEST_CASE("LO on K2") {
  CHECK(lo(complete_graph(2), 1.0)(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lo(complete_graph(2), 3.0)(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(lo(complete_graph(2), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(lo(complete_graph(2), -1.0), std::invalid_argument);
}

TEST_CASE("LO matches its Neumann series for large alpha") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = random_graph(20, 0.2, seed + 50);
    const double norm = spectral_norm(g);
    const double alpha = 4 * norm * norm;
    const Matrix a = adjacency_dense(g);
    const Matrix a2 = a * a;
    Matrix term = a * a2 / alpha;
    Matrix sum = term;
    for (int k = 1; k < 200 && term.cwiseAbs().maxCoeff() > 1e-18; ++k) {
      term = -(term * a2) / alpha;
      sum += term;
    }
    CHECK(max_abs_diff(lo(g, alpha).values, sum) <= 1e-8);
    // leading term dominates once alpha is huge
    const double big = 1e6 * norm * norm;
    CHECK(max_abs_diff(lo(g, big).values * big, a * a2) < 1e-3);
  }
}

TEST_CASE("CH-L2 examples") {
  CHECK(ch_l2(path_graph(3))(0, 2) == doctest::Approx(1.0));
  // i=0, j=1 with common neighbours 2 and 3 joined to each other
  const Graph linked = make_graph(4, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}});
  CHECK(ch_l2(linked)(0, 1) == doctest::Approx(4.0));
  // lone common neighbour 2 carrying a pendant 3
  const Graph pendant = make_graph(4, {{0, 2}, {1, 2}, {2, 3}});
  CHECK(ch_l2(pendant)(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("CH-L3 examples") {
  CHECK(ch_l3(path_graph(4))(0, 3) == doctest::Approx(2.0));
  CHECK(ch_l3(cycle_graph(4))(0, 2) == 0.0);
}

TEST_CASE("CH-L3 without external edges is a weighted 3-path count") {
  // 0 and 5 joined through the 4-cycle 1-2-4-3; intermediates have no other links.
  const Graph g = make_graph(6, {{0, 1}, {0, 3}, {1, 2}, {3, 4}, {2, 5}, {4, 5}, {1, 4}});
  // paths 0-1-2-5, 0-3-4-5, 0-1-4-5; LC = {1,2,3,4}
  // d_int: 1 -> {2,4} = 2, 2 -> {1} = 1, 3 -> {4} = 1, 4 -> {3,1} = 2
  const double expected = std::sqrt(3.0 * 2) + std::sqrt(2.0 * 3) + std::sqrt(3.0 * 3);
  CHECK(ch_l3(g)(0, 5) == doctest::Approx(expected));
}

TEST_CASE("CH scores match direct transcriptions") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = random_graph(18, 0.25, seed + 900);
    const auto c2 = ch_l2(g);
    const auto c3 = ch_l3(g);
    for (NodeId i = 0; i < g.node_count(); ++i)
      for (NodeId j = i + 1; j < g.node_count(); ++j) {
        REQUIRE(c2(i, j) == doctest::Approx(ch_l2_pair(g, i, j)).epsilon(1e-12));
        REQUIRE(c3(i, j) == doctest::Approx(ch_l3_pair(g, i, j)).epsilon(1e-12));
      }
  }
}

TEST_CASE("baselines are symmetric and finite") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_graph(25, 0.15, seed + 70);
    for (const auto& s : {ra_l2(g), l3(g), lo(g, 0.02), ch_l2(g), ch_l3(g)}) check_symmetric_finite(s);
    CHECK(ra_l2(g).values.minCoeff() >= 0.0);
    CHECK(l3(g).values.minCoeff() >= 0.0);
    CHECK(ch_l2(g).values.minCoeff() >= 0.0);
    CHECK(ch_l3(g).values.minCoeff() >= 0.0);
  }
}

TEST_CASE("bipartite parity for path-based scores") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_tree(20, seed + 3);
    const auto parts = *bipartition(g);
    const auto r = ra_l2(g), c2 = ch_l2(g), t3 = l3(g), c3 = ch_l3(g), o = lo(g, 0.5);
    for (NodeId i = 0; i < g.node_count(); ++i)
      for (NodeId j = i + 1; j < g.node_count(); ++j) {
        if (parts[i] == parts[j]) {
          REQUIRE(t3(i, j) == 0.0);
          REQUIRE(c3(i, j) == 0.0);
          REQUIRE(std::abs(o(i, j)) < 1e-12);
        } else {
          REQUIRE(r(i, j) == 0.0);
          REQUIRE(c2(i, j) == 0.0);
        }
      }
  }
}

TEST_CASE("score dispatcher") {
  const Graph g = path_graph(4);
  CHECK(score(g, {.method = Method::ra_l2}).values == ra_l2(g).values);
  CHECK(score(g, {.method = Method::lo, .alpha = 0.3}).values == lo(g, 0.3).values);
  CHECK(parse_method("ch-l3") == Method::ch_l3);
  CHECK(to_string(Method::qlp_even) == "qlp-even");
  CHECK_THROWS_AS(parse_method("katz"), std::invalid_argument);
  CHECK(has_parameter(Method::lo));
  CHECK_FALSE(has_parameter(Method::l3));
}

}  // TEST_SUITE
