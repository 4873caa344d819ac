#include "semimpc/routing.hpp"

#include "semimpc/graph.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace semimpc {

namespace {
constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();
}

std::size_t BipartiteMultigraph::max_degree() const {
  std::vector<std::size_t> deg(left + right, 0);
  for (const auto& [u, v] : edges) {
    if (u < left) ++deg[u];
    if (v < right) ++deg[left + v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Coloring edge_color_bipartite(const BipartiteMultigraph& mg, std::size_t max_colors) {
  for (const auto& [u, v] : mg.edges) {
    if (u >= mg.left || v >= mg.right) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") leaves its side; input is not bipartite");
    }
  }
  const std::size_t delta = mg.max_degree();
  if (delta > max_colors) {
    throw std::invalid_argument("max degree " + std::to_string(delta) + " exceeds " +
                                std::to_string(max_colors) + " colours");
  }

  const std::size_t vertices = mg.left + mg.right;
  // at[v * delta + c]: edge of colour c at vertex v
  std::vector<std::uint32_t> at(vertices * delta, none);
  Coloring color(mg.edges.size(), none);
  auto slot = [&](std::size_t v, std::uint32_t c) -> std::uint32_t& { return at[v * delta + c]; };
  auto free_color = [&](std::size_t v) {
    std::uint32_t c = 0;
    while (slot(v, c) != none) ++c;
    return c;
  };
  auto other_end = [&](std::uint32_t e, std::size_t v) -> std::size_t {
    const std::size_t l = mg.edges[e].first;
    const std::size_t r = mg.left + mg.edges[e].second;
    return v == l ? r : l;
  };

  std::vector<std::uint32_t> path;
  for (std::uint32_t e = 0; e < mg.edges.size(); ++e) {
    const std::size_t u = mg.edges[e].first;
    const std::size_t w = mg.left + mg.edges[e].second;
    const std::uint32_t a = free_color(u);
    const std::uint32_t b = free_color(w);
    if (slot(w, a) != none) {
      // Flip the a/b alternating path leaving w along colour a. In a
      // bipartite graph it cannot end at u, so afterwards a is free at both.
      path.clear();
      std::size_t x = w;
      std::uint32_t c = a;
      while (slot(x, c) != none) {
        const std::uint32_t f = slot(x, c);
        path.push_back(f);
        x = other_end(f, x);
        c = c == a ? b : a;
      }
      for (auto f : path) {
        slot(mg.left + mg.edges[f].second, color[f]) = none;
        slot(mg.edges[f].first, color[f]) = none;
      }
      for (auto f : path) {
        color[f] = color[f] == a ? b : a;
        slot(mg.left + mg.edges[f].second, color[f]) = f;
        slot(mg.edges[f].first, color[f]) = f;
      }
      if (slot(u, a) != none || slot(w, a) != none) {
        throw std::logic_error("alternating path flip failed to free a colour");
      }
    }
    color[e] = a;
    slot(u, a) = e;
    slot(w, a) = e;
  }
  return color;
}

std::size_t colors_used(const Coloring& coloring) {
  std::vector<std::uint32_t> sorted(coloring);
  std::sort(sorted.begin(), sorted.end());
  return static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

std::size_t DemandMatrix::row_sum(std::size_t src) const {
  std::size_t total = 0;
  for (std::size_t d = 0; d < n_; ++d) total += at(src, d);
  return total;
}

std::size_t DemandMatrix::col_sum(std::size_t dst) const {
  std::size_t total = 0;
  for (std::size_t s = 0; s < n_; ++s) total += at(s, dst);
  return total;
}

std::size_t DemandMatrix::max_line_sum() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < n_; ++i) best = std::max({best, row_sum(i), col_sum(i)});
  return best;
}

std::size_t DemandMatrix::total() const {
  std::size_t total = 0;
  for (auto c : counts_) total += c;
  return total;
}

std::array<std::vector<std::vector<std::pair<ParticipantId, ParticipantId>>>, 2>
Schedule::phases() const {
  std::array<std::vector<std::vector<std::pair<ParticipantId, ParticipantId>>>, 2> out;
  out[0].resize(phase_rounds[0]);
  out[1].resize(phase_rounds[1]);
  for (const auto& w : assignment) {
    out[0].at(w.round_a).emplace_back(w.src, w.intermediate);
    out[1].at(w.round_b).emplace_back(w.intermediate, w.dst);
  }
  return out;
}

Schedule plan_routing(const DemandMatrix& demand, const Constants& constants) {
  const std::size_t n = demand.n();
  const double limit = constants.c_traffic * static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (static_cast<double>(demand.row_sum(i)) > limit ||
        static_cast<double>(demand.col_sum(i)) > limit) {
      throw std::invalid_argument("demand precondition violated at node " + std::to_string(i) +
                                  ": row/column sum exceeds c_traffic * n");
    }
  }

  Schedule schedule;
  schedule.n = n;
  BipartiteMultigraph mg{n, n, {}};
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t d = 0; d < n; ++d) {
      for (std::size_t q = 0; q < demand.at(s, d); ++q) {
        mg.edges.emplace_back(s, d);
        schedule.assignment.push_back({static_cast<ParticipantId>(s),
                                       static_cast<ParticipantId>(d),
                                       static_cast<std::uint32_t>(q), 0, 0, 0, 0});
      }
    }
  }
  if (mg.edges.empty()) return schedule;

  const auto coloring = edge_color_bipartite(mg, demand.max_line_sum());
  schedule.colors = colors_used(coloring);
  std::uint32_t top = 0;
  for (std::size_t i = 0; i < coloring.size(); ++i) {
    const std::uint32_t k = coloring[i];
    auto& w = schedule.assignment[i];
    w.color = k;
    w.intermediate = static_cast<ParticipantId>(k % n);
    w.round_a = static_cast<std::uint32_t>(k / n);
    w.round_b = w.round_a;
    top = std::max(top, k);
  }
  const std::size_t per_phase = top / n + 1;
  schedule.phase_rounds = {per_phase, per_phase};
  return schedule;
}

namespace {

class RoutingProgram final : public NodeProgram {
 public:
  RoutingProgram(const Schedule& schedule, std::span<const Word> payloads)
      : schedule_(schedule), payloads_(payloads) {}

  std::string_view name() const override { return "routing"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override;

 private:
  const Schedule& schedule_;
  std::span<const Word> payloads_;
};

class RoutingNode final : public Participant {
 public:
  RoutingNode(ParticipantId self, const Schedule& schedule, std::span<const Word> payloads)
      : self_(self), n_(schedule.n), rounds_a_(schedule.phase_rounds[0]),
        rounds_b_(schedule.phase_rounds[1]), payloads_(payloads),
        sends_a_(rounds_a_), sends_b_(rounds_b_), recv_a_(rounds_a_ * n_, none),
        recv_b_(rounds_b_ * n_, none), held_(schedule.assignment.size(), 0) {
    for (std::uint32_t i = 0; i < schedule.assignment.size(); ++i) {
      const auto& w = schedule.assignment[i];
      if (w.src == self) sends_a_[w.round_a].emplace_back(w.intermediate, i);
      if (w.intermediate == self) {
        recv_a_[w.round_a * n_ + w.src] = i;
        sends_b_[w.round_b].emplace_back(w.dst, i);
      }
      if (w.dst == self) recv_b_[w.round_b * n_ + w.intermediate] = i;
    }
    for (const auto& list : sends_a_) own_words_ += list.size();
  }

  Step on_round(std::span<const Message> inbox) override {
    ++step_;
    // Messages in the inbox were sent during round step_ - 1.
    const std::size_t prev = step_ - 1;
    for (const auto& msg : inbox) {
      if (prev >= 1 && prev <= rounds_a_) {
        const auto slot = recv_a_.at((prev - 1) * n_ + msg.src);
        held_.at(slot) = msg.payload.at(0);
        ++holding_;
      } else {
        const auto slot = recv_b_.at((prev - rounds_a_ - 1) * n_ + msg.src);
        arrived_.push_back({slot, msg.payload.at(0)});
      }
    }

    Step step;
    if (step_ <= rounds_a_) {
      for (const auto& [to, slot] : sends_a_[step_ - 1]) {
        step.outbox.push_back({to, {payloads_[slot]}});
        --own_words_;
      }
    } else if (step_ <= rounds_a_ + rounds_b_) {
      for (const auto& [to, slot] : sends_b_[step_ - rounds_a_ - 1]) {
        step.outbox.push_back({to, {held_[slot]}});
        --holding_;
      }
    }
    step.vote_halt = step_ > rounds_a_ + rounds_b_;
    return step;
  }

  std::vector<Word> output() const override {
    std::vector<Word> out;
    for (const auto& [slot, value] : arrived_) {
      out.push_back(slot);
      out.push_back(value);
    }
    return out;
  }

  std::size_t space_words() const override { return own_words_ + holding_ + arrived_.size(); }

 private:
  ParticipantId self_;
  std::size_t n_;
  std::size_t rounds_a_;
  std::size_t rounds_b_;
  std::span<const Word> payloads_;
  std::vector<std::vector<std::pair<ParticipantId, std::uint32_t>>> sends_a_;
  std::vector<std::vector<std::pair<ParticipantId, std::uint32_t>>> sends_b_;
  std::vector<std::uint32_t> recv_a_;
  std::vector<std::uint32_t> recv_b_;
  std::vector<Word> held_;
  std::vector<std::pair<std::uint32_t, Word>> arrived_;
  std::size_t own_words_ = 0;
  std::size_t holding_ = 0;
  std::size_t step_ = 0;
};

std::unique_ptr<Participant> RoutingProgram::spawn(const LocalInput& input) const {
  return std::make_unique<RoutingNode>(input.self, schedule_, payloads_);
}

}  // namespace

DeliveryRecord execute_schedule(const Schedule& schedule, std::span<const Word> payloads,
                                const EngineOptions& options) {
  if (payloads.size() != schedule.assignment.size()) {
    throw std::invalid_argument("one payload per scheduled word expected");
  }
  RoutingProgram prog(schedule, payloads);
  const Graph nodes(schedule.n, {});
  DeliveryRecord record;
  record.run = run_clique(prog, nodes, ModelParams::clique(schedule.n), options);
  if (!record.run.clean()) {
    throw std::logic_error("routing schedule violated the clique bandwidth: " +
                           record.run.violations.front().describe());
  }
  record.delivered.resize(schedule.n);
  for (ParticipantId dst = 0; dst < schedule.n; ++dst) {
    const auto& out = record.run.outputs[dst];
    for (std::size_t i = 0; i + 1 < out.size(); i += 2) {
      const auto& w = schedule.assignment.at(out[i]);
      record.delivered[dst].push_back({w.src, w.seq, out[i + 1]});
    }
    std::sort(record.delivered[dst].begin(), record.delivered[dst].end());
  }
  return record;
}

}  // namespace semimpc
