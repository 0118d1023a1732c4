#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace qlp {

using NodeId = std::uint32_t;

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Packs an unordered pair into a single 64-bit key.
inline std::uint64_t edge_key(NodeId a, NodeId b) {
  const Edge e = make_edge(a, b);
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Original-label table shared by a graph and every graph derived from it.
struct LabelTable {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> index;
};

/// Undirected simple graph with contiguous ids 0..N-1 and CSR adjacency.
///
/// Neighbor lists are sorted ascending. Graphs are immutable once built; edge
/// removal produces a new graph over the same node set and label table.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Edges are canonicalized (u < v), sorted and
  /// deduplicated. Throws GraphError on self-loops or out-of-range ids.
  Graph(std::size_t node_count, std::vector<Edge> edges,
        std::shared_ptr<const LabelTable> labels = nullptr);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool has_edge(NodeId a, NodeId b) const;

  /// Edges in ascending (u, v) order.
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::vector<std::size_t> degrees() const;
  double mean_degree() const;
  std::size_t max_degree() const;

  /// Label of node v; the decimal id when the graph carries no label table.
  std::string label(NodeId v) const;
  std::optional<NodeId> find_label(std::string_view name) const;
  const std::shared_ptr<const LabelTable>& labels() const noexcept { return labels_; }

  /// Same node set and labels, with the given edges removed.
  Graph without_edges(std::span<const Edge> removed) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<Edge> edges_;
  std::shared_ptr<const LabelTable> labels_;
};

struct LoadOptions {
  bool skip_comments = true;
  bool deduplicate = true;
};

struct LoadResult {
  Graph graph;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

/// Reads a whitespace-separated edge list. Lines starting with `#` or `%` are
/// comments; tokens past the second on a line are ignored. Labels are mapped
/// to ids in order of first appearance. Reversed duplicates ("b a" after
/// "a b") count as duplicates, so directed inputs are symmetrized.
///
/// With `deduplicate` off, a duplicate edge or self-loop is a ParseError.
LoadResult load_edge_list(std::istream& in, const LoadOptions& options = {});
LoadResult load_edge_list_file(const std::string& path, const LoadOptions& options = {});

/// Writes one "label_u label_v" line per edge in canonical order.
void write_edge_list(const Graph& g, std::ostream& out);

/// True when both graphs have the same labelled node set and edge set.
bool equivalent(const Graph& a, const Graph& b);

struct NetworkStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
  double density = 0.0;
  std::size_t diameter = 0;          // d_max over the largest component
  double mean_distance = 0.0;        // d_av over unordered pairs of the largest component
  double clustering = 0.0;           // mean local clustering, 0 for degree < 2
  double degree_moment2 = 0.0;
  double degree_moment3 = 0.0;
  std::size_t largest_component_size = 0;
};

NetworkStats compute_stats(const Graph& g);

/// Nodes of the largest connected component, ascending. Ties go to the
/// component containing the smallest id.
std::vector<NodeId> largest_component(const Graph& g);

using WalkMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Walk counts by explicit depth-first enumeration of every walk of the
/// given length. Test oracle; exponential in length. length 0 yields the
/// identity. Throws std::invalid_argument for length > 5.
WalkMatrix count_walks(const Graph& g, int length);

/// Part index (0 or 1) per node when g has no odd cycle. In each connected
/// component the smallest id lands in part 0.
std::optional<std::vector<std::uint8_t>> bipartition(const Graph& g);

}  // namespace qlp
