#include "qlp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Cholesky>

namespace qlp {

namespace {

ScoreMatrix make_scores(Method m, Matrix values) {
  ScoreMatrix s;
  s.spec.method = m;
  s.values = std::move(values);
  return s;
}

// Generation-stamped membership flags, reset in O(1) between uses.
class StampSet {
 public:
  explicit StampSet(std::size_t n) : stamp_(n, 0) {}
  void next() { ++current_; }
  void insert(NodeId v) { stamp_[v] = current_; }
  bool contains(NodeId v) const { return stamp_[v] == current_; }

 private:
  std::vector<std::uint64_t> stamp_;
  std::uint64_t current_ = 1;
};

}  // namespace

ScoreMatrix ra_l2(const Graph& g, Normalization norm) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Matrix p = Matrix::Zero(n, n);
  for (NodeId z = 0; z < n; ++z) {
    const auto nb = g.neighbors(z);
    if (nb.empty()) continue;
    const double w = norm == Normalization::degree ? 1.0 / static_cast<double>(nb.size()) : 1.0;
    for (NodeId a : nb) {
      for (NodeId b : nb) p(a, b) += w;
    }
  }
  return make_scores(Method::ra_l2, std::move(p));
}

ScoreMatrix l3(const Graph& g, Normalization norm) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  const SparseMatrix a = adjacency_sparse(g);
  SparseMatrix middle = a;
  if (norm == Normalization::degree) {
    Vector inv_sqrt(n);
    for (NodeId v = 0; v < n; ++v) {
      const auto k = g.degree(v);
      inv_sqrt(v) = k ? 1.0 / std::sqrt(static_cast<double>(k)) : 0.0;
    }
    middle = inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
  }
  const Matrix dense_a = adjacency_dense(g);
  const Matrix right = middle * dense_a;
  Matrix p = a * right;
  symmetrize(p);
  return make_scores(Method::l3, std::move(p));
}

ScoreMatrix lo(const Graph& g, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("LO requires alpha > 0");
  const SparseMatrix a = adjacency_sparse(g);
  const Matrix a2 = a * adjacency_dense(g);
  Matrix system = a2;
  system.diagonal().array() += alpha;
  const Eigen::LLT<Matrix> chol(system);
  if (chol.info() != Eigen::Success) throw NumericError("LO: Cholesky factorization failed");
  const Matrix x = chol.solve(a2);
  Matrix p = a * x;
  if (!p.allFinite()) throw NumericError("LO: non-finite scores");
  symmetrize(p);
  auto s = make_scores(Method::lo, std::move(p));
  s.spec.alpha = alpha;
  return s;
}

ScoreMatrix ch_l2(const Graph& g) {
  const std::size_t n = g.node_count();
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  StampSet in_gi(n), in_lc(n);
  // position of z inside neighbors(i), valid while z is in_gi
  std::vector<std::size_t> slot(n, 0);
  std::vector<std::vector<NodeId>> triangle_nb;  // Γ(z) ∩ Γ(i) per z in Γ(i)
  std::vector<std::pair<NodeId, NodeId>> reach;  // (j, z) with z common to i and j

  for (NodeId i = 0; i < n; ++i) {
    const auto gi = g.neighbors(i);
    if (gi.size() == 0) continue;
    in_gi.next();
    for (std::size_t s = 0; s < gi.size(); ++s) {
      in_gi.insert(gi[s]);
      slot[gi[s]] = s;
    }
    triangle_nb.assign(gi.size(), {});
    reach.clear();
    for (std::size_t s = 0; s < gi.size(); ++s) {
      const NodeId z = gi[s];
      for (NodeId w : g.neighbors(z)) {
        if (in_gi.contains(w)) triangle_nb[s].push_back(w);
        if (w > i) reach.emplace_back(w, z);
      }
    }
    std::stable_sort(reach.begin(), reach.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    for (std::size_t begin = 0; begin < reach.size();) {
      const NodeId j = reach[begin].first;
      std::size_t end = begin;
      in_lc.next();
      while (end < reach.size() && reach[end].first == j) in_lc.insert(reach[end++].second);
      double total = 0.0;
      for (std::size_t r = begin; r < end; ++r) {
        const NodeId z = reach[r].second;
        std::size_t internal = 0;
        for (NodeId w : triangle_nb[slot[z]]) internal += in_lc.contains(w) ? 1 : 0;
        // i and j are neighbors of z and never members of LC
        const std::size_t external = g.degree(z) - internal - 2;
        total += (1.0 + static_cast<double>(internal)) / (1.0 + static_cast<double>(external));
      }
      p(i, j) = total;
      p(j, i) = total;
      begin = end;
    }
  }
  return make_scores(Method::ch_l2, std::move(p));
}

ScoreMatrix ch_l3(const Graph& g) {
  const std::size_t n = g.node_count();
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  StampSet in_lc(n), in_gj(n);
  std::vector<double> weight(n, 0.0);
  std::vector<NodeId> members;

  struct Path {
    NodeId j, k, l;
  };
  std::vector<Path> paths;

  for (NodeId i = 0; i < n; ++i) {
    paths.clear();
    for (NodeId k : g.neighbors(i)) {
      for (NodeId l : g.neighbors(k)) {
        if (l == i) continue;
        for (NodeId j : g.neighbors(l)) {
          if (j > i && j != k) paths.push_back({j, k, l});
        }
      }
    }
    std::stable_sort(paths.begin(), paths.end(),
                     [](const Path& x, const Path& y) { return x.j < y.j; });

    for (std::size_t begin = 0; begin < paths.size();) {
      const NodeId j = paths[begin].j;
      std::size_t end = begin;
      in_lc.next();
      members.clear();
      while (end < paths.size() && paths[end].j == j) {
        for (NodeId z : {paths[end].k, paths[end].l}) {
          if (!in_lc.contains(z)) {
            in_lc.insert(z);
            members.push_back(z);
          }
        }
        ++end;
      }
      in_gj.next();
      for (NodeId w : g.neighbors(j)) in_gj.insert(w);
      for (NodeId z : members) {
        std::size_t internal = 0;
        for (NodeId w : g.neighbors(z)) internal += in_lc.contains(w) ? 1 : 0;
        std::size_t external = g.degree(z) - internal;
        if (g.has_edge(z, i)) --external;
        if (in_gj.contains(z)) --external;
        weight[z] = std::sqrt((1.0 + static_cast<double>(internal)) /
                              (1.0 + static_cast<double>(external)));
      }
      double total = 0.0;
      for (std::size_t r = begin; r < end; ++r) total += weight[paths[r].k] * weight[paths[r].l];
      p(i, j) = total;
      p(j, i) = total;
      begin = end;
    }
  }
  return make_scores(Method::ch_l3, std::move(p));
}

}  // namespace qlp
