#include "qlp/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace qlp {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges,
             std::shared_ptr<const LabelTable> labels)
    : labels_(std::move(labels)) {
  if (node_count > std::numeric_limits<NodeId>::max()) {
    throw GraphError("node count exceeds id range");
  }
  if (labels_ && labels_->names.size() != node_count) {
    throw GraphError("label table size does not match node count");
  }
  for (Edge& e : edges) {
    if (e.u == e.v) throw GraphError("self-loop on node " + std::to_string(e.u));
    if (e.u >= node_count || e.v >= node_count) {
      throw GraphError("edge endpoint out of range");
    }
    e = make_edge(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  targets_.resize(2 * edges_.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    targets_[fill[e.u]++] = e.v;
    targets_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    std::sort(targets_.begin() + offsets_[v], targets_.begin() + offsets_[v + 1]);
  }
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a == b) return false;
  // search the shorter list
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> k(node_count());
  for (std::size_t v = 0; v < k.size(); ++v) k[v] = degree(static_cast<NodeId>(v));
  return k;
}

double Graph::mean_degree() const {
  return node_count() == 0 ? 0.0
                           : 2.0 * static_cast<double>(edge_count()) / static_cast<double>(node_count());
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

std::string Graph::label(NodeId v) const {
  return labels_ ? labels_->names.at(v) : std::to_string(v);
}

std::optional<NodeId> Graph::find_label(std::string_view name) const {
  if (labels_) {
    auto it = labels_->index.find(std::string(name));
    if (it == labels_->index.end()) return std::nullopt;
    return it->second;
  }
  NodeId v = 0;
  std::istringstream is{std::string(name)};
  if (!(is >> v) || !is.eof() || v >= node_count()) return std::nullopt;
  return v;
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
  std::unordered_set<std::uint64_t> drop;
  drop.reserve(removed.size() * 2);
  for (const Edge& e : removed) drop.insert(edge_key(e.u, e.v));
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!drop.contains(edge_key(e.u, e.v))) kept.push_back(e);
  }
  return Graph(node_count(), std::move(kept), labels_);
}

LoadResult load_edge_list(std::istream& in, const LoadOptions& options) {
  auto table = std::make_shared<LabelTable>();
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  LoadResult result;

  auto intern = [&](const std::string& name) {
    auto [it, inserted] = table->index.try_emplace(name, static_cast<NodeId>(table->names.size()));
    if (inserted) table->names.push_back(name);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (options.skip_comments && (line[first] == '#' || line[first] == '%')) continue;

    std::istringstream fields(line);
    std::string a, b;
    if (!(fields >> a >> b)) {
      throw ParseError(line_no, "expected two node labels, got '" + line + "'");
    }
    if (a == b) {
      if (!options.deduplicate) throw ParseError(line_no, "self-loop on '" + a + "'");
      ++result.self_loops_dropped;
      continue;
    }
    const NodeId u = intern(a);
    const NodeId v = intern(b);
    if (!seen.insert(edge_key(u, v)).second) {
      if (!options.deduplicate) throw ParseError(line_no, "duplicate edge '" + a + " " + b + "'");
      ++result.duplicates_dropped;
      continue;
    }
    edges.push_back(make_edge(u, v));
  }
  if (edges.empty()) throw GraphError("edge list contains no edges");

  const std::size_t n = table->names.size();
  result.graph = Graph(n, std::move(edges), std::move(table));
  return result;
}

LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) out << g.label(e.u) << ' ' << g.label(e.v) << '\n';
}

bool equivalent(const Graph& a, const Graph& b) {
  if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<NodeId> to_b(a.node_count());
  for (NodeId v = 0; v < a.node_count(); ++v) {
    auto mapped = b.find_label(a.label(v));
    if (!mapped) return false;
    to_b[v] = *mapped;
  }
  for (const Edge& e : a.edges()) {
    if (!b.has_edge(to_b[e.u], to_b[e.v])) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

// Component id per node; ids assigned in order of smallest member.
std::vector<std::size_t> component_ids(const Graph& g, std::size_t& count) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> comp(n, kUnreached);
  std::vector<NodeId> stack;
  count = 0;
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] != kUnreached) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (NodeId w : g.neighbors(v)) {
        if (comp[w] == kUnreached) {
          comp[w] = count;
          stack.push_back(w);
        }
      }
    }
    ++count;
  }
  return comp;
}

}  // namespace

std::vector<NodeId> largest_component(const Graph& g) {
  std::size_t count = 0;
  const auto comp = component_ids(g, count);
  std::vector<std::size_t> sizes(count, 0);
  for (std::size_t c : comp) ++sizes[c];
  const auto best = static_cast<std::size_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<NodeId> nodes;
  nodes.reserve(count ? sizes[best] : 0);
  for (NodeId v = 0; v < comp.size(); ++v) {
    if (comp[v] == best) nodes.push_back(v);
  }
  return nodes;
}

NetworkStats compute_stats(const Graph& g) {
  NetworkStats s;
  const std::size_t n = g.node_count();
  s.node_count = n;
  s.edge_count = g.edge_count();
  s.mean_degree = g.mean_degree();
  s.max_degree = g.max_degree();
  s.density = n < 2 ? 0.0
                    : 2.0 * static_cast<double>(s.edge_count) /
                          (static_cast<double>(n) * static_cast<double>(n - 1));

  double k2 = 0.0, k3 = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const double k = static_cast<double>(g.degree(v));
    k2 += k * k;
    k3 += k * k * k;
  }
  s.degree_moment2 = n ? k2 / static_cast<double>(n) : 0.0;
  s.degree_moment3 = n ? k3 / static_cast<double>(n) : 0.0;

  // local clustering via neighbor marking
  std::vector<NodeId> mark(n, std::numeric_limits<NodeId>::max());
  double clustering_sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const auto nb = g.neighbors(v);
    if (nb.size() < 2) continue;
    for (NodeId w : nb) mark[w] = v;
    std::size_t links = 0;
    for (NodeId w : nb) {
      for (NodeId x : g.neighbors(w)) {
        if (x > w && mark[x] == v) ++links;
      }
    }
    const double k = static_cast<double>(nb.size());
    clustering_sum += 2.0 * static_cast<double>(links) / (k * (k - 1.0));
  }
  s.clustering = n ? clustering_sum / static_cast<double>(n) : 0.0;

  // all-pairs BFS inside the largest component
  const auto lcc = largest_component(g);
  s.largest_component_size = lcc.size();
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<NodeId> frontier;
  std::uint64_t distance_sum = 0;
  std::size_t diameter = 0;
  for (NodeId src : lcc) {
    std::fill(dist.begin(), dist.end(), kUnreached);
    frontier.assign(1, src);
    dist[src] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      const NodeId v = frontier[head];
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          frontier.push_back(w);
        }
      }
    }
    for (NodeId v : frontier) {
      if (v > src) distance_sum += dist[v];
      diameter = std::max(diameter, dist[v]);
    }
  }
  s.diameter = diameter;
  const double pairs = static_cast<double>(lcc.size()) * static_cast<double>(lcc.size() - 1) / 2.0;
  s.mean_distance = pairs > 0 ? static_cast<double>(distance_sum) / pairs : 0.0;
  return s;
}

namespace {

void enumerate_walks(const Graph& g, NodeId at, int remaining, std::int64_t* row) {
  if (remaining == 0) {
    ++row[at];
    return;
  }
  for (NodeId next : g.neighbors(at)) enumerate_walks(g, next, remaining - 1, row);
}

}  // namespace

WalkMatrix count_walks(const Graph& g, int length) {
  if (length < 0) throw std::invalid_argument("walk length must be non-negative");
  if (length > 5) throw std::invalid_argument("walk enumeration limited to length <= 5");
  const auto n = static_cast<Eigen::Index>(g.node_count());
  // row-major scratch so each source fills a contiguous row
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n * n), 0);
  for (NodeId i = 0; i < n; ++i) {
    enumerate_walks(g, i, length, counts.data() + static_cast<std::size_t>(i) * n);
  }
  WalkMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = counts[static_cast<std::size_t>(i * n + j)];
  }
  return out;
}

std::optional<std::vector<std::uint8_t>> bipartition(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint8_t kNone = 2;
  std::vector<std::uint8_t> part(n, kNone);
  std::queue<NodeId> queue;
  for (NodeId s = 0; s < n; ++s) {
    if (part[s] != kNone) continue;
    part[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const NodeId v = queue.front();
      queue.pop();
      for (NodeId w : g.neighbors(v)) {
        if (part[w] == kNone) {
          part[w] = static_cast<std::uint8_t>(1 - part[v]);
          queue.push(w);
        } else if (part[w] == part[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return part;
}

}  // namespace qlp
