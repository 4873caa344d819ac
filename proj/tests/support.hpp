#pragma once

#include "semimpc/engine.hpp"
#include "semimpc/graph.hpp"
#include "semimpc/rng.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace testing {

using namespace semimpc;

// G(n, p) with p drawn per graph; may be disconnected.
inline Graph random_graph(Rng& rng, std::size_t n_max) {
  const std::size_t n = 1 + rng.below(n_max);
  const double p = rng.uniform() * 0.3;
  return gen_graph({GraphKind::gnp, n, p, rng.below(UINT64_MAX)});
}

// Random labelled tree plus extra edges.
inline Graph random_connected_graph(Rng& rng, std::size_t n, std::size_t extra) {
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  rng.shuffle(order);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) {
    edges.emplace_back(order[i], order[rng.below(i)]);
  }
  for (std::size_t i = 0; i < extra && n >= 2; ++i) {
    VertexId u = static_cast<VertexId>(rng.below(n));
    VertexId v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, std::move(edges));
}

inline std::vector<Word> as_words(const Labels& labels) {
  return {labels.begin(), labels.end()};
}

// Per-vertex outputs of a graph-model run, one label each.
inline Labels labels_of(const RunResult& run) {
  Labels out;
  for (const auto& row : run.outputs) out.push_back(row.empty() ? UINT32_MAX : static_cast<VertexId>(row[0]));
  return out;
}

// Machine 0 of a forest-merge run holds all labels.
inline Labels machine_labels(const RunResult& run) {
  const auto& row = run.outputs.at(0);
  return {row.begin(), row.end()};
}

inline std::string temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "semimpc-tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Sends a fixed list of messages in round 1, then halts.
class ScriptedProgram final : public NodeProgram {
 public:
  struct Item {
    ParticipantId src;
    ParticipantId dst;
    std::size_t words;
  };
  explicit ScriptedProgram(std::vector<Item> items) : items_(std::move(items)) {}
  std::string_view name() const override { return "scripted"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    return std::make_unique<Node>(input, items_);
  }

 private:
  class Node final : public Participant {
   public:
    Node(const LocalInput& input, const std::vector<Item>& items) : input_(input) {
      for (const auto& it : items)
        if (it.src == input.self) mine_.push_back(it);
    }
    Step on_round(std::span<const Message> inbox) override {
      Step step;
      received_ += payload_words(inbox);
      if (++round_ == 1) {
        for (const auto& it : mine_) step.outbox.push_back({it.dst, std::vector<Word>(it.words, 1)});
      }
      step.vote_halt = true;
      return step;
    }
    std::vector<Word> output() const override { return {received_}; }
    std::size_t space_words() const override { return input_.words.size() + received_; }

   private:
    LocalInput input_;
    std::vector<Item> mine_;
    std::size_t round_ = 0;
    std::size_t received_ = 0;
  };
  std::vector<Item> items_;
};

// Flooding for exactly R communication rounds, regardless of convergence.
class FixedRoundFlood final : public NodeProgram {
 public:
  explicit FixedRoundFlood(std::size_t rounds) : rounds_(rounds) {}
  std::string_view name() const override { return "fixed-flood"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    return std::make_unique<Node>(input, rounds_);
  }

 private:
  class Node final : public Participant {
   public:
    Node(const LocalInput& input, std::size_t rounds)
        : neighbors_(input.words), label_(input.self), rounds_(rounds) {}
    Step on_round(std::span<const Message> inbox) override {
      for (const auto& m : inbox) label_ = std::min<Word>(label_, m.payload[0]);
      Step step;
      if (round_++ < rounds_) {
        for (auto w : neighbors_) step.outbox.push_back({static_cast<ParticipantId>(w), {label_}});
      }
      step.vote_halt = true;
      return step;
    }
    std::vector<Word> output() const override { return {label_}; }
    std::size_t space_words() const override { return neighbors_.size() + 1; }

   private:
    std::vector<Word> neighbors_;
    Word label_;
    std::size_t rounds_;
    std::size_t round_ = 0;
  };
  std::size_t rounds_;
};

}  // namespace testing
