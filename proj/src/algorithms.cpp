#include "semimpc/algorithms.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace semimpc {

namespace {

VertexId find_root(std::vector<VertexId>& parent, VertexId v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

// Links the two roots under the smaller id; false if already joined.
bool link(std::vector<VertexId>& parent, VertexId a, VertexId b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a == b) return false;
  if (a < b) parent[b] = a;
  else parent[a] = b;
  return true;
}

class BoruvkaNode final : public Participant {
 public:
  explicit BoruvkaNode(const LocalInput& input)
      : self_(input.self), neighbors_(input.words.begin(), input.words.end()),
        labels_(input.participants) {
    std::iota(labels_.begin(), labels_.end(), VertexId{0});
  }

  Step on_round(std::span<const Message> inbox) override {
    ++step_;
    Step step;
    if (step_ % 2 == 1) {
      if (step_ > 1) {
        // Every merging leader broadcast its pick, self included.
        if (inbox.empty()) {
          step.vote_halt = true;
          return step;
        }
        std::vector<VertexId> parent(labels_.size());
        std::iota(parent.begin(), parent.end(), VertexId{0});
        for (const auto& msg : inbox) link(parent, msg.src, static_cast<VertexId>(msg.payload[0]));
        for (auto& label : labels_) label = find_root(parent, label);
      }
      const VertexId own = labels_[self_];
      std::optional<VertexId> pick;
      for (auto v : neighbors_) {
        const VertexId other = labels_[v];
        if (other != own && (!pick || other < *pick)) pick = other;
      }
      if (pick) step.outbox.push_back({own, {*pick}});
    } else if (labels_[self_] == self_ && !inbox.empty()) {
      Word pick = inbox.front().payload[0];
      for (const auto& msg : inbox) pick = std::min(pick, msg.payload[0]);
      for (ParticipantId v = 0; v < labels_.size(); ++v) step.outbox.push_back({v, {pick}});
    }
    return step;
  }

  std::vector<Word> output() const override { return {labels_[self_]}; }

  std::size_t space_words() const override { return labels_.size() + neighbors_.size() + 2; }

 private:
  VertexId self_;
  std::vector<VertexId> neighbors_;
  std::vector<VertexId> labels_;
  std::size_t step_ = 0;
};

class FloodNode final : public Participant {
 public:
  explicit FloodNode(const LocalInput& input)
      : label_(input.self), neighbors_(input.words.begin(), input.words.end()) {}

  Step on_round(std::span<const Message> inbox) override {
    Step step;
    bool changed = first_;
    first_ = false;
    for (const auto& msg : inbox) {
      if (msg.payload[0] < label_) {
        label_ = static_cast<VertexId>(msg.payload[0]);
        changed = true;
      }
    }
    if (changed) {
      for (auto v : neighbors_) step.outbox.push_back({v, {label_}});
    } else {
      step.vote_halt = true;
    }
    return step;
  }

  std::vector<Word> output() const override { return {label_}; }

  std::size_t space_words() const override { return neighbors_.size() + 2; }

 private:
  VertexId label_;
  std::vector<VertexId> neighbors_;
  bool first_ = true;
};

class ForestMergeMachine final : public Participant {
 public:
  explicit ForestMergeMachine(const LocalInput& input)
      : self_(input.self), n_(input.vertices), machines_(input.participants),
        merge_rounds_(std::bit_width(machines_ > 0 ? machines_ - 1 : 0)), input_(input.words) {}

  Step on_round(std::span<const Message> inbox) override {
    ++step_;
    Step step;
    if (step_ == 1) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i + 1 < input_.size(); i += 2) {
        edges.emplace_back(static_cast<VertexId>(input_[i]), static_cast<VertexId>(input_[i + 1]));
      }
      forest_ = spanning_forest(n_, edges);
      input_.clear();
      input_.shrink_to_fit();
      return step;
    }
    if (!inbox.empty()) {
      auto edges = forest_edges(forest_);
      for (const auto& msg : inbox) {
        std::vector<VertexId> parent(msg.payload.begin(), msg.payload.end());
        auto more = forest_edges(parent);
        edges.insert(edges.end(), more.begin(), more.end());
      }
      forest_ = spanning_forest(n_, edges);
    }
    const std::size_t round = step_ - 2;
    if (round >= merge_rounds_) {
      step.vote_halt = true;
      return step;
    }
    const std::size_t stride = std::size_t{1} << round;
    if (!forest_.empty() && self_ % (2 * stride) == stride) {
      step.outbox.push_back({static_cast<ParticipantId>(self_ - stride),
                             std::vector<Word>(forest_.begin(), forest_.end())});
      forest_.clear();
    }
    return step;
  }

  std::vector<Word> output() const override {
    if (self_ != 0) return {};
    auto labels = forest_labels(forest_);
    return {labels.begin(), labels.end()};
  }

  std::size_t space_words() const override { return input_.size() + forest_.size() + 1; }

 private:
  ParticipantId self_;
  std::size_t n_;
  std::size_t machines_;
  std::size_t merge_rounds_;
  std::vector<Word> input_;
  std::vector<VertexId> forest_;
  std::size_t step_ = 0;
};

}  // namespace

std::unique_ptr<Participant> BoruvkaConnectivity::spawn(const LocalInput& input) const {
  return std::make_unique<BoruvkaNode>(input);
}

std::unique_ptr<Participant> FloodComponents::spawn(const LocalInput& input) const {
  return std::make_unique<FloodNode>(input);
}

std::unique_ptr<Participant> ForestMergeConnectivity::spawn(const LocalInput& input) const {
  if (input.vertices == 0) throw std::invalid_argument("forest merge needs the vertex count");
  return std::make_unique<ForestMergeMachine>(input);
}

std::vector<VertexId> spanning_forest(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<VertexId> uf(n);
  std::iota(uf.begin(), uf.end(), VertexId{0});
  std::vector<std::vector<VertexId>> tree(n);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("forest edge endpoint out of range");
    if (link(uf, u, v)) {
      tree[u].push_back(v);
      tree[v].push_back(u);
    }
  }
  constexpr VertexId unset = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> parent(n, unset);
  std::deque<VertexId> queue;
  for (VertexId root = 0; root < n; ++root) {
    if (parent[root] != unset) continue;
    parent[root] = root;
    queue.push_back(root);
    while (!queue.empty()) {
      auto v = queue.front();
      queue.pop_front();
      std::sort(tree[v].begin(), tree[v].end());
      for (auto w : tree[v]) {
        if (parent[w] == unset) {
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
  }
  return parent;
}

std::vector<Edge> forest_edges(const std::vector<VertexId>& parent) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v < parent.size(); ++v) {
    if (parent[v] != v) edges.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
  }
  return edges;
}

Labels forest_labels(const std::vector<VertexId>& parent) {
  Labels labels(parent.size());
  for (VertexId v = 0; v < parent.size(); ++v) {
    VertexId r = v;
    while (parent[r] != r) r = parent[r];
    labels[v] = r;
  }
  return labels;
}

std::unique_ptr<NodeProgram> make_algorithm(std::string_view name) {
  if (name == "boruvka") return std::make_unique<BoruvkaConnectivity>();
  if (name == "flood") return std::make_unique<FloodComponents>();
  if (name == "forest-merge") return std::make_unique<ForestMergeConnectivity>();
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

}  // namespace semimpc
