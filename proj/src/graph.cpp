#include "semimpc/graph.hpp"

#include "semimpc/rng.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <sstream>

namespace semimpc {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  for (auto& [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw std::invalid_argument("duplicate edge " + std::to_string(dup->first) + " " +
                                std::to_string(dup->second));
  }
  adjacency_.resize(n_);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& list : adjacency_) best = std::max(best, list.size());
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u >= n_ || v >= n_) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

namespace {

std::vector<std::uint64_t> parse_line(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> values;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || ptr == line.data() + i) {
      throw ParseError(line_no, "malformed line: '" + std::string(line) + "'");
    }
    i = static_cast<std::size_t>(ptr - line.data());
    if (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
      throw ParseError(line_no, "malformed line: '" + std::string(line) + "'");
    }
    values.push_back(value);
  }
  return values;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  // Trailing blank lines are tolerated; nothing else may be blank.
  while (!lines.empty() && blank(lines.back())) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "missing header 'n m'");

  auto header = parse_line(lines[0], 1);
  if (header.size() != 2) throw ParseError(1, "header must be 'n m'");
  const std::uint64_t n = header[0];
  const std::uint64_t m = header[1];
  if (lines.size() - 1 != m) {
    // Point at the first missing line, or the first surplus one.
    const std::size_t at = lines.size() - 1 < m ? lines.size() + 1 : m + 2;
    throw ParseError(at, "edge count mismatch: header says " + std::to_string(m) + ", found " +
                             std::to_string(lines.size() - 1));
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  std::vector<std::pair<Edge, std::size_t>> seen;
  seen.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto values = parse_line(lines[i], i + 1);
    if (values.size() != 2) throw ParseError(i + 1, "expected 'u v'");
    auto [u, v] = std::pair{values[0], values[1]};
    if (u >= n || v >= n) {
      throw ParseError(i + 1, "endpoint out of range (n = " + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(i + 1, "self-loop at vertex " + std::to_string(u));
    Edge e{static_cast<VertexId>(std::min(u, v)), static_cast<VertexId>(std::max(u, v))};
    edges.push_back(e);
    seen.emplace_back(e, i + 1);
  }
  std::stable_sort(seen.begin(), seen.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < seen.size(); ++i) {
    if (seen[i].first == seen[i - 1].first) {
      throw ParseError(seen[i].second, "duplicate edge " + std::to_string(seen[i].first.first) +
                                           " " + std::to_string(seen[i].first.second));
    }
  }
  return Graph(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

std::string to_edge_list(const Graph& g) {
  std::string out = std::to_string(g.n()) + " " + std::to_string(g.m()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "complete") return GraphKind::complete;
  if (name == "gnp") return GraphKind::gnp;
  if (name == "star") return GraphKind::star;
  throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

Graph gen_graph(const GraphSpec& spec) {
  const std::size_t n = spec.n;
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::vector<Edge> edges;
  switch (spec.kind) {
    case GraphKind::path:
      for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      break;
    case GraphKind::cycle:
      if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
      for (std::size_t v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
      edges.emplace_back(0, n - 1);
      break;
    case GraphKind::complete:
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
      break;
    case GraphKind::star:
      for (std::size_t v = 1; v < n; ++v) edges.emplace_back(0, v);
      break;
    case GraphKind::gnp: {
      if (!(spec.probability >= 0.0 && spec.probability <= 1.0)) {
        throw std::invalid_argument("probability out of range");
      }
      Rng rng(spec.seed);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
          if (rng.uniform() < spec.probability) edges.emplace_back(u, v);
      break;
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

VertexId find_root(std::vector<VertexId>& parent, VertexId v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

Labels components_union_find(const Graph& g) {
  std::vector<VertexId> parent(g.n());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  for (const auto& [u, v] : g.edges()) {
    auto a = find_root(parent, u);
    auto b = find_root(parent, v);
    // Root is always the smaller id, so the root is the component minimum.
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  }
  Labels labels(g.n());
  for (VertexId v = 0; v < g.n(); ++v) labels[v] = find_root(parent, v);
  return labels;
}

Labels components_bfs(const Graph& g) {
  constexpr VertexId unset = UINT32_MAX;
  Labels labels(g.n(), unset);
  std::deque<VertexId> queue;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (labels[s] != unset) continue;
    labels[s] = s;
    queue.push_back(s);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      for (auto w : g.neighbors(v)) {
        if (labels[w] == unset) {
          labels[w] = s;
          queue.push_back(w);
        }
      }
    }
  }
  return labels;
}

Labels components_oracle(const Graph& g) {
  auto by_union_find = components_union_find(g);
  if (by_union_find != components_bfs(g)) {
    throw std::logic_error("union-find and BFS component labelings disagree");
  }
  return by_union_find;
}

}  // namespace semimpc
