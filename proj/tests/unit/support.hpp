#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qlp/eval.hpp"
#include "qlp/graph.hpp"
#include "qlp/linalg.hpp"

namespace qlp::test {

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  std::vector<Edge> list;
  for (auto [a, b] : edges) list.push_back(make_edge(a, b));
  return Graph(n, std::move(list));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> list;
  for (NodeId v = 0; v + 1 < n; ++v) list.push_back({v, v + 1});
  return Graph(n, std::move(list));
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> list;
  for (NodeId v = 0; v < n; ++v) list.push_back(make_edge(v, static_cast<NodeId>((v + 1) % n)));
  return Graph(n, std::move(list));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> list;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) list.push_back({a, b});
  return Graph(n, std::move(list));
}

// Erdos-Renyi G(n, p) with at least one edge.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> list;
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (coin(rng)) list.push_back({a, b});
  if (list.empty()) list.push_back({0, 1});
  return Graph(n, std::move(list));
}

// Random labelled tree: node v attaches to a uniformly chosen earlier node.
inline Graph random_tree(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> list;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> pick(0, v - 1);
    list.push_back(make_edge(pick(rng), v));
  }
  return Graph(n, std::move(list));
}

inline Graph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in).graph;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Matrix dense_power(const Graph& g, int k) {
  const Matrix a = adjacency_dense(g);
  Matrix p = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) p = p * a;
  return p;
}

// P(score+ > score-) + P(=)/2 over every (positive, negative) candidate pair.
inline double exhaustive_auc(const Matrix& scores, const Graph& train, const EdgeSet& test) {
  std::vector<double> pos, neg;
  for (NodeId i = 0; i < train.node_count(); ++i)
    for (NodeId j = i + 1; j < train.node_count(); ++j) {
      if (train.has_edge(i, j)) continue;
      (test.contains(i, j) ? pos : neg).push_back(scores(i, j));
    }
  double wins = 0;
  for (double p : pos)
    for (double q : neg) wins += p > q ? 1.0 : (p == q ? 0.5 : 0.0);
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

}  // namespace qlp::test
