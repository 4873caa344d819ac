#pragma once

#include "semimpc/graph.hpp"
#include "semimpc/program.hpp"

#include <memory>
#include <string_view>
#include <vector>

namespace semimpc {

/// Congested-clique Borůvka connectivity. Every node keeps the full label
/// array. A phase is two rounds: members report their smallest neighbouring
/// foreign label to their leader (the component minimum), then each leader
/// with a candidate broadcasts it to everyone, and all nodes merge the same
/// components locally. Halts once a phase brings no merge.
/// Output: the node's component label (one word).
class BoruvkaConnectivity final : public NodeProgram {
 public:
  std::string_view name() const override { return "boruvka"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override;
};

/// CONGEST min-label flooding. Round 1 broadcasts the own id; later a node
/// rebroadcasts only when its label dropped and votes to halt otherwise.
/// Output: the node's component label (one word).
class FloodComponents final : public NodeProgram {
 public:
  std::string_view name() const override { return "flood"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override;
};

/// Semi-MPC connectivity by pairwise forest merging. Round 1 reduces each
/// machine's edges to a spanning forest; in merge round j machine a with
/// a mod 2^(j+1) = 2^j ships its forest as an n-word parent array to
/// a - 2^j. Uses 1 + ceil(log2 p) rounds. Machine 0 outputs all n labels;
/// the others output nothing.
class ForestMergeConnectivity final : public NodeProgram {
 public:
  std::string_view name() const override { return "forest-merge"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override;
};

/// Spanning forest of `edges` as a parent array rooted at each tree's
/// smallest vertex (parent[root] = root).
std::vector<VertexId> spanning_forest(std::size_t n, const std::vector<Edge>& edges);

/// Edges (v, parent[v]) of a parent array.
std::vector<Edge> forest_edges(const std::vector<VertexId>& parent);

/// Labels implied by a parent array rooted at tree minima.
Labels forest_labels(const std::vector<VertexId>& parent);

std::unique_ptr<NodeProgram> make_algorithm(std::string_view name);

}  // namespace semimpc
