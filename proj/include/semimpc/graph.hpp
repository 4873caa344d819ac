#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semimpc {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Raised by load_graph; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Edges are stored canonically as (u, v) with u < v, sorted
/// lexicographically. Vertex ids double as the labels used by the node
/// assignment (0-based).
class Graph {
 public:
  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or endpoints >= n.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  std::size_t max_degree() const noexcept;
  /// Sorted ascending.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
  bool has_edge(VertexId u, VertexId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
};

Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string to_edge_list(const Graph& g);

enum class GraphKind { path, cycle, complete, gnp, star };

GraphKind parse_graph_kind(std::string_view name);

struct GraphSpec {
  GraphKind kind = GraphKind::path;
  std::size_t n = 1;
  double probability = 0.0;  // gnp only
  std::uint64_t seed = 0;    // gnp only
};

/// Deterministic for a fixed spec. Throws std::invalid_argument on bad params.
Graph gen_graph(const GraphSpec& spec);

/// Component labelling: label[v] = smallest vertex id in v's component.
using Labels = std::vector<VertexId>;

Labels components_union_find(const Graph& g);
Labels components_bfs(const Graph& g);
/// Runs both implementations and throws std::logic_error if they disagree.
Labels components_oracle(const Graph& g);

}  // namespace semimpc
