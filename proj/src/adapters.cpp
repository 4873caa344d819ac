#include "semimpc/adapters.hpp"

#include "semimpc/routing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>

namespace semimpc {

std::size_t Assignment::max_load() const {
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

Assignment compute_node_assignment(std::span<const std::size_t> degrees, std::size_t machines) {
  if (machines == 0) throw std::invalid_argument("need at least one machine");
  std::vector<VertexId> order(degrees.size());
  std::iota(order.begin(), order.end(), VertexId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](VertexId a, VertexId b) { return degrees[a] > degrees[b]; });
  Assignment out;
  out.machines = machines;
  out.host.resize(degrees.size());
  out.hosted.resize(machines);
  out.load.assign(machines, 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto a = static_cast<ParticipantId>(i % machines);
    out.host[order[i]] = a;
    out.hosted[a].push_back(order[i]);
    out.load[a] += degrees[order[i]];
  }
  for (auto& list : out.hosted) std::sort(list.begin(), list.end());
  return out;
}

bool SimulationReport::passed() const {
  if (refused || !outputs_match) return false;
  return std::all_of(bound_checks.begin(), bound_checks.end(),
                     [](const auto& kv) { return kv.second; });
}

std::vector<std::string> SimulationReport::failures() const {
  std::vector<std::string> out;
  if (refused) out.push_back("refused: " + *refused);
  if (simulated && !outputs_match) out.push_back("outputs_match");
  for (const auto& [name, ok] : bound_checks)
    if (!ok) out.push_back(name);
  return out;
}

namespace {

double as_double(std::size_t x) { return static_cast<double>(x); }

// ---------------------------------------------------------------------------
// Congested clique on semi-MPC

class CliqueHostMachine final : public Participant {
 public:
  CliqueHostMachine(const LocalInput& input, const NodeProgram& inner)
      : self_(input.self), n_(input.vertices), inner_(inner), edges_(input.words) {}

  Step on_round(std::span<const Message> inbox) override {
    ++step_;
    if (step_ == 1) {
      // Tell both endpoints of every stored edge about it.
      std::vector<std::vector<Word>> notes(n_);
      for (std::size_t i = 0; i + 1 < edges_.size(); i += 2) {
        notes.at(edges_[i]).push_back(edges_[i + 1]);
        notes.at(edges_[i + 1]).push_back(edges_[i]);
      }
      edges_.clear();
      edges_.shrink_to_fit();
      Step step;
      for (ParticipantId v = 0; v < n_; ++v)
        if (!notes[v].empty()) step.outbox.push_back({v, std::move(notes[v])});
      return step;
    }
    if (step_ == 2) {
      LocalInput local{self_, n_, n_, {}};
      for (const auto& msg : inbox) local.words.insert(local.words.end(), msg.payload.begin(), msg.payload.end());
      std::sort(local.words.begin(), local.words.end());
      node_ = inner_.spawn(local);
      return node_->on_round({});
    }
    return node_->on_round(inbox);
  }

  std::vector<Word> output() const override { return node_ ? node_->output() : std::vector<Word>{}; }

  std::size_t space_words() const override {
    return edges_.size() + (node_ ? node_->space_words() : 0);
  }

 private:
  ParticipantId self_;
  std::size_t n_;
  const NodeProgram& inner_;
  std::vector<Word> edges_;
  std::unique_ptr<Participant> node_;
  std::size_t step_ = 0;
};

class CliqueOnSemiMpc final : public NodeProgram {
 public:
  explicit CliqueOnSemiMpc(const NodeProgram& inner) : inner_(inner) {}
  std::string_view name() const override { return "clique-on-semimpc"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    return std::make_unique<CliqueHostMachine>(input, inner_);
  }

 private:
  const NodeProgram& inner_;
};

void check_placement(const Graph& g, const std::vector<std::vector<Word>>& placement) {
  if (placement.size() != g.n()) {
    throw std::invalid_argument("placement must list one input per machine (n machines)");
  }
  std::vector<Edge> seen;
  for (const auto& words : placement) {
    if (words.size() % 2 != 0) throw std::invalid_argument("placement holds a dangling endpoint");
    for (std::size_t i = 0; i < words.size(); i += 2) {
      auto u = static_cast<VertexId>(std::min(words[i], words[i + 1]));
      auto v = static_cast<VertexId>(std::max(words[i], words[i + 1]));
      seen.emplace_back(u, v);
    }
  }
  std::sort(seen.begin(), seen.end());
  if (seen != g.edges()) throw std::invalid_argument("placement does not hold exactly the graph's edges");
}

// ---------------------------------------------------------------------------
// CONGEST on semi-MPC

struct HostedNode {
  VertexId id = 0;
  std::unique_ptr<Participant> node;
  std::vector<VertexId> neighbors;      // ascending
  std::vector<ParticipantId> neighbor_host;
};

class CongestHostMachine final : public Participant {
 public:
  CongestHostMachine(const LocalInput& input, const NodeProgram& inner)
      : self_(input.self), n_(input.vertices), machines_(input.participants), inner_(inner),
        block_((n_ + machines_ - 1) / machines_), edges_(input.words) {}

  Step on_round(std::span<const Message> inbox) override {
    ++step_;
    if (machines_ == 1) {
      if (step_ == 1) {
        host_.assign(n_, 0);
        std::vector<Word> held;
        held.swap(edges_);
        build_hosted(held, all_vertices());
        host_.clear();
        host_.shrink_to_fit();
      }
      return replay(inbox);
    }
    switch (step_) {
      case 1: return send_partial_degrees();
      case 2: return broadcast_degree_block(inbox);
      case 3: return route_edges(inbox);
      case 4: {
        std::vector<Word> received;
        for (const auto& msg : inbox) received.insert(received.end(), msg.payload.begin(), msg.payload.end());
        std::vector<VertexId> mine;
        for (VertexId v = 0; v < n_; ++v)
          if (host_[v] == self_) mine.push_back(v);
        build_hosted(received, mine);
        host_.clear();
        host_.shrink_to_fit();
        return replay({});
      }
      default: return replay(inbox);
    }
  }

  std::vector<Word> output() const override {
    std::vector<Word> out;
    for (const auto& h : hosted_) {
      auto words = h.node->output();
      out.push_back(h.id);
      out.push_back(words.size());
      out.insert(out.end(), words.begin(), words.end());
    }
    return out;
  }

  std::size_t space_words() const override {
    std::size_t total = edges_.size() + degrees_.size() + host_.size();
    for (const auto& h : hosted_) total += h.node->space_words() + 2 * h.neighbors.size();
    for (const auto& msg : pending_) total += msg.payload.size();
    total += (single_.size() + default_word_width(n_) - 1) / default_word_width(n_);
    return total;
  }

 private:
  std::vector<VertexId> all_vertices() const {
    std::vector<VertexId> v(n_);
    std::iota(v.begin(), v.end(), VertexId{0});
    return v;
  }

  ParticipantId aggregator(VertexId v) const { return static_cast<ParticipantId>(v / block_); }

  Step send_partial_degrees() {
    std::vector<std::size_t> partial(n_, 0);
    for (auto w : edges_) ++partial.at(w);
    std::vector<std::vector<Word>> batches(machines_);
    for (VertexId v = 0; v < n_; ++v) {
      if (partial[v] == 0) continue;
      auto& batch = batches[aggregator(v)];
      batch.push_back(v);
      batch.push_back(partial[v]);
    }
    Step step;
    for (ParticipantId a = 0; a < machines_; ++a)
      if (!batches[a].empty()) step.outbox.push_back({a, std::move(batches[a])});
    return step;
  }

  Step broadcast_degree_block(std::span<const Message> inbox) {
    const std::size_t first = std::size_t{self_} * block_;
    const std::size_t last = std::min(n_, first + block_);
    Step step;
    if (first >= last) return step;
    std::vector<Word> block(last - first, 0);
    for (const auto& msg : inbox)
      for (std::size_t i = 0; i + 1 < msg.payload.size(); i += 2) block.at(msg.payload[i] - first) += msg.payload[i + 1];
    for (ParticipantId a = 0; a < machines_; ++a) step.outbox.push_back({a, block});
    return step;
  }

  Step route_edges(std::span<const Message> inbox) {
    degrees_.assign(n_, 0);
    for (const auto& msg : inbox) {
      const std::size_t first = std::size_t{msg.src} * block_;
      for (std::size_t i = 0; i < msg.payload.size(); ++i) degrees_.at(first + i) = msg.payload[i];
    }
    host_ = compute_node_assignment(degrees_, machines_).host;
    degrees_.clear();
    degrees_.shrink_to_fit();

    std::vector<std::vector<Word>> batches(machines_);
    for (std::size_t i = 0; i + 1 < edges_.size(); i += 2) {
      const auto u = edges_[i], v = edges_[i + 1];
      const auto hu = host_[u], hv = host_[v];
      batches[hu].insert(batches[hu].end(), {u, v});
      if (hv != hu) batches[hv].insert(batches[hv].end(), {u, v});
    }
    edges_.clear();
    edges_.shrink_to_fit();
    Step step;
    for (ParticipantId a = 0; a < machines_; ++a)
      if (!batches[a].empty()) step.outbox.push_back({a, std::move(batches[a])});
    return step;
  }

  // `edge_words` holds (u, v) pairs with at least one endpoint in `mine`;
  // host_ must still be populated.
  void build_hosted(const std::vector<Word>& edge_words, const std::vector<VertexId>& mine) {
    hosted_.clear();
    for (auto v : mine) hosted_.push_back(HostedNode{v, nullptr, {}, {}});
    auto index_of = [&](Word v) -> HostedNode* {
      auto it = std::lower_bound(hosted_.begin(), hosted_.end(), v,
                                 [](const HostedNode& h, Word x) { return h.id < x; });
      return it != hosted_.end() && it->id == v ? &*it : nullptr;
    };
    for (std::size_t i = 0; i + 1 < edge_words.size(); i += 2) {
      if (auto* h = index_of(edge_words[i])) h->neighbors.push_back(static_cast<VertexId>(edge_words[i + 1]));
      if (auto* h = index_of(edge_words[i + 1])) h->neighbors.push_back(static_cast<VertexId>(edge_words[i]));
    }
    single_.assign(machines_, 0);
    std::vector<std::size_t> count(machines_, 0);
    for (auto a : host_) ++count[a];
    for (std::size_t a = 0; a < machines_; ++a) single_[a] = count[a] == 1;
    for (auto& h : hosted_) {
      std::sort(h.neighbors.begin(), h.neighbors.end());
      for (auto w : h.neighbors) h.neighbor_host.push_back(host_[w]);
      LocalInput local{h.id, n_, n_, {h.neighbors.begin(), h.neighbors.end()}};
      h.node = inner_.spawn(local);
    }
  }

  std::size_t hosted_index(VertexId v) const {
    auto it = std::lower_bound(hosted_.begin(), hosted_.end(), v,
                               [](const HostedNode& h, VertexId x) { return h.id < x; });
    if (it == hosted_.end() || it->id != v) {
      throw std::logic_error("message for vertex " + std::to_string(v) + " reached the wrong machine");
    }
    return static_cast<std::size_t>(it - hosted_.begin());
  }

  Step replay(std::span<const Message> inbox) {
    std::vector<std::vector<Message>> inboxes(hosted_.size());
    // Header is [src_v] [dst_v]; a field is dropped when its machine hosts a single vertex.
    for (const auto& msg : inbox) {
      std::size_t at = 0;
      const bool src_implied = single_.at(msg.src);
      Word src_word = src_implied ? 0 : msg.payload.at(at++);
      const auto dst = static_cast<ParticipantId>(hosted_.size() == 1 ? hosted_[0].id : msg.payload.at(at++));
      const auto index = hosted_index(dst);
      if (src_implied) {
        const auto& h = hosted_[index];
        auto it = std::find(h.neighbor_host.begin(), h.neighbor_host.end(), msg.src);
        if (it == h.neighbor_host.end()) throw std::logic_error("no neighbour hosted on the sending machine");
        src_word = h.neighbors[static_cast<std::size_t>(it - h.neighbor_host.begin())];
      }
      const auto src = static_cast<ParticipantId>(src_word);
      inboxes[index].push_back({src, dst, {msg.payload.begin() + static_cast<std::ptrdiff_t>(at), msg.payload.end()}});
    }
    for (auto& msg : pending_) inboxes[hosted_index(msg.dst)].push_back(std::move(msg));
    pending_.clear();
    for (auto& list : inboxes) {
      std::stable_sort(list.begin(), list.end(),
                       [](const Message& a, const Message& b) { return a.src < b.src; });
    }

    Step step;
    step.vote_halt = true;
    for (std::size_t i = 0; i < hosted_.size(); ++i) {
      auto& h = hosted_[i];
      auto inner = h.node->on_round(inboxes[i]);
      if (!inner.vote_halt || !inner.outbox.empty()) step.vote_halt = false;
      for (auto& send : inner.outbox) {
        ParticipantId host = self_;
        if (send.dst != h.id) {
          auto it = std::lower_bound(h.neighbors.begin(), h.neighbors.end(), send.dst);
          if (it == h.neighbors.end() || *it != send.dst) {
            throw std::logic_error("hosted node " + std::to_string(h.id) + " sent to non-neighbour " +
                                   std::to_string(send.dst));
          }
          host = h.neighbor_host[static_cast<std::size_t>(it - h.neighbors.begin())];
        }
        if (host == self_) {
          pending_.push_back({h.id, send.dst, std::move(send.payload)});
        } else {
          std::vector<Word> payload;
          if (hosted_.size() != 1) payload.push_back(h.id);
          if (!single_[host]) payload.push_back(send.dst);
          payload.insert(payload.end(), send.payload.begin(), send.payload.end());
          step.outbox.push_back({host, std::move(payload)});
        }
      }
    }
    return step;
  }

  ParticipantId self_;
  std::size_t n_;
  std::size_t machines_;
  const NodeProgram& inner_;
  std::size_t block_;
  std::vector<Word> edges_;
  std::vector<std::size_t> degrees_;
  std::vector<ParticipantId> host_;
  std::vector<HostedNode> hosted_;
  std::vector<Message> pending_;
  std::vector<char> single_;  // per machine: hosts exactly one vertex
  std::size_t step_ = 0;
};

class CongestOnSemiMpc final : public NodeProgram {
 public:
  explicit CongestOnSemiMpc(const NodeProgram& inner) : inner_(inner) {}
  std::string_view name() const override { return "congest-on-semimpc"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    return std::make_unique<CongestHostMachine>(input, inner_);
  }

 private:
  const NodeProgram& inner_;
};

// Largest ratio of a node's space to (input + words received so far + 1).
double memory_linearity(const RunResult& run) {
  const auto& trace = run.trace;
  std::vector<std::size_t> received(trace.participants, 0);
  double worst = 0;
  for (std::size_t k = 0; k < trace.space_high_water.size(); ++k) {
    if (k >= 1) {
      for (const auto& t : trace.rounds[k - 1].transfers) received[t.dst] += t.words;
    }
    for (std::size_t v = 0; v < trace.participants; ++v) {
      const double base = as_double(trace.input_words[v] + received[v] + 1);
      worst = std::max(worst, as_double(trace.space_high_water[k][v]) / base);
    }
  }
  return worst;
}

}  // namespace

SimulationReport simulate_cc_on_semimpc(const NodeProgram& prog, const Graph& g,
                                        const AdapterOptions& options,
                                        const std::vector<std::vector<Word>>* placement) {
  const auto& c = options.constants;
  const std::size_t n = g.n();
  SimulationReport report;
  report.source = ModelKind::clique;
  report.target = ModelKind::semi_mpc;
  report.algorithm = std::string(prog.name());
  report.native = run_clique(prog, g, ModelParams::clique(n, c), options.engine);

  const double space_budget = c.c_space * as_double(n);
  report.measured_constants["native_rounds"] = as_double(report.native.rounds);
  report.measured_constants["native_space_over_n"] =
      as_double(report.native.trace.max_space()) / as_double(std::max<std::size_t>(n, 1));
  if (!report.native.clean()) {
    report.refused = "native run is not clean: " + report.native.violations.front().describe();
    return report;
  }
  if (as_double(report.native.trace.max_space()) > space_budget) {
    report.refused = "native node space " + std::to_string(report.native.trace.max_space()) +
                     " exceeds c_space * n = " + std::to_string(space_budget);
    return report;
  }

  std::vector<std::vector<Word>> inputs;
  if (placement != nullptr) {
    check_placement(g, *placement);
    inputs = *placement;
  } else {
    inputs = distribute_edges(g, n, options.seed);
  }
  const auto params = ModelParams::semi_mpc(n, n, 2 * g.m(), c);
  CliqueOnSemiMpc wrapped(prog);
  auto sim = run_mpc(wrapped, inputs, params, options.engine);

  const std::size_t t = report.native.rounds;
  report.outputs_match = sim.outputs == report.native.outputs;
  report.bound_checks["clean"] = sim.clean();
  report.bound_checks["rounds_exact"] = sim.rounds == t + 1;
  report.bound_checks["rounds_big_o"] = sim.rounds <= 2 * std::max<std::size_t>(t, 1);
  report.bound_checks["machines_ok"] = params.p == n;
  report.bound_checks["traffic_ok"] = as_double(sim.trace.max_traffic()) <= c.c_traffic * as_double(n);
  report.bound_checks["space_ok"] = sim.trace.max_space() <= params.s;

  auto& m = report.measured_constants;
  m["simulated_rounds"] = as_double(sim.rounds);
  m["machines"] = as_double(params.p);
  m["max_traffic_words"] = as_double(sim.trace.max_traffic());
  m["traffic_over_n"] = as_double(sim.trace.max_traffic()) / as_double(std::max<std::size_t>(n, 1));
  m["max_space_words"] = as_double(sim.trace.max_space());
  m["space_over_n"] = as_double(sim.trace.max_space()) / as_double(std::max<std::size_t>(n, 1));
  m["replication_delta"] = params.delta;
  report.simulated = std::move(sim);
  return report;
}

SimulationReport simulate_semimpc_on_cc(const NodeProgram& prog,
                                        const std::vector<std::vector<Word>>& inputs,
                                        std::size_t n, const AdapterOptions& options) {
  const auto& c = options.constants;
  const std::size_t p = inputs.size();
  std::size_t total = 0;
  for (const auto& in : inputs) total += in.size();

  SimulationReport report;
  report.source = ModelKind::semi_mpc;
  report.target = ModelKind::clique;
  report.algorithm = std::string(prog.name());
  const auto native_params = ModelParams::semi_mpc(n, p, total, c);
  report.native = run_mpc(prog, inputs, native_params, options.engine);
  const std::size_t t = report.native.rounds;
  report.measured_constants["native_rounds"] = as_double(t);
  if (!report.native.clean()) {
    report.refused = "native run is not clean: " + report.native.violations.front().describe();
    return report;
  }
  if (p > n) {
    report.refused = "semi-MPC uses " + std::to_string(p) + " machines but the clique has only " +
                     std::to_string(n) + " nodes";
    return report;
  }

  std::vector<std::unique_ptr<Participant>> machines(p);
  for (ParticipantId a = 0; a < p; ++a) machines[a] = prog.spawn(LocalInput{a, p, n, inputs[a]});

  RunResult sim;
  sim.params = ModelParams::clique(n, c);
  sim.trace.participants = n;
  sim.trace.input_words.assign(n, 0);
  for (std::size_t a = 0; a < p; ++a) sim.trace.input_words[a] = inputs[a].size();

  auto machine_space = [&] {
    std::vector<std::size_t> row(n, 0);
    for (std::size_t a = 0; a < p; ++a) row[a] = machines[a]->space_words();
    return row;
  };

  std::vector<std::vector<Message>> inboxes(p);
  std::vector<Step> steps(p);
  std::size_t routed_rounds = 0;
  std::size_t max_episode_rounds = 0;
  std::size_t max_line = 0;
  bool exact = true;
  const std::size_t cap = 10 * std::max(n, p) + 100;

  for (std::size_t k = 1;; ++k) {
    bool finished = true;
    for (std::size_t a = 0; a < p; ++a) {
      steps[a] = machines[a]->on_round(inboxes[a]);
      if (!steps[a].vote_halt || !steps[a].outbox.empty()) finished = false;
      for (const auto& send : steps[a].outbox) {
        if (send.dst >= p) throw MalformedMessage("destination " + std::to_string(send.dst) + " out of range");
        if (send.payload.empty()) throw MalformedMessage("empty payload");
      }
    }
    if (finished) break;
    if (k > cap) throw RoundCapExceeded(cap);

    // Words of each (src, dst) pair in send order; self-messages stay local.
    DemandMatrix demand(n);
    for (std::size_t a = 0; a < p; ++a)
      for (const auto& send : steps[a].outbox)
        if (send.dst != a) demand.at(a, send.dst) += send.payload.size();

    std::vector<std::vector<std::vector<Word>>> delivered(p, std::vector<std::vector<Word>>(p));
    if (demand.total() > 0) {
      const auto schedule = plan_routing(demand, c);
      // assignment is ordered by (src, dst, seq): fill payloads in that order.
      std::vector<Word> payloads;
      payloads.reserve(schedule.assignment.size());
      for (std::size_t a = 0; a < p; ++a) {
        for (ParticipantId d = 0; d < p; ++d) {
          if (d == a) continue;
          for (const auto& send : steps[a].outbox)
            if (send.dst == d) payloads.insert(payloads.end(), send.payload.begin(), send.payload.end());
        }
      }
      auto record = execute_schedule(schedule, payloads, options.engine);
      for (ParticipantId d = 0; d < p; ++d)
        for (const auto& w : record.delivered[d]) delivered[d].at(w.src).push_back(w.value);

      // Original words per (src, dst), for the exactness check.
      std::size_t cursor = 0;
      for (const auto& w : schedule.assignment) {
        const auto& got = delivered.at(w.dst).at(w.src);
        if (w.seq >= got.size() || got[w.seq] != payloads[cursor]) exact = false;
        ++cursor;
      }

      const auto space_base = machine_space();
      auto& run = record.run;
      for (std::size_t r = 0; r < run.rounds; ++r) {
        sim.trace.rounds.push_back(run.trace.rounds[r]);
        auto row = run.trace.space_high_water[r];
        for (std::size_t a = 0; a < n; ++a) row[a] += space_base[a];
        sim.trace.space_high_water.push_back(std::move(row));
      }
      routed_rounds += run.rounds;
      max_episode_rounds = std::max(max_episode_rounds, run.rounds);
      max_line = std::max(max_line, demand.max_line_sum());
      report.routing.push_back({k, demand.total(), demand.max_line_sum(), schedule.colors, run.rounds});
    }

    // Rebuild canonical inboxes: by source, then send order.
    std::vector<std::vector<std::size_t>> cursors(p, std::vector<std::size_t>(p, 0));
    for (auto& inbox : inboxes) inbox.clear();
    for (ParticipantId a = 0; a < p; ++a) {
      for (auto& send : steps[a].outbox) {
        Message msg{a, send.dst, {}};
        if (send.dst == a) {
          msg.payload = std::move(send.payload);
        } else {
          const auto& words = delivered.at(send.dst).at(a);
          auto& at = cursors[send.dst][a];
          const std::size_t len = send.payload.size();
          if (at + len > words.size()) throw std::logic_error("routing lost words");
          msg.payload.assign(words.begin() + at, words.begin() + at + len);
          at += len;
        }
        inboxes.at(send.dst).push_back(std::move(msg));
      }
    }
    for (auto& inbox : inboxes) {
      std::stable_sort(inbox.begin(), inbox.end(),
                       [](const Message& x, const Message& y) { return x.src < y.src; });
    }
  }
  sim.trace.space_high_water.push_back(machine_space());
  sim.rounds = routed_rounds;
  sim.outputs.assign(n, {});
  for (std::size_t a = 0; a < p; ++a) sim.outputs[a] = machines[a]->output();
  sim.violations = check_trace(sim.trace, sim.params);

  std::vector<std::vector<Word>> expected(n);
  std::copy(report.native.outputs.begin(), report.native.outputs.end(), expected.begin());
  report.outputs_match = sim.outputs == expected;

  const std::size_t surcharge_rounds = c.surcharge * t;
  report.bound_checks["clean"] = sim.clean();
  report.bound_checks["rounds_ok"] = routed_rounds + surcharge_rounds <= (2 + c.surcharge) * t;
  report.bound_checks["delivery_exact"] = exact;
  report.bound_checks["demand_ok"] = as_double(max_line) <= c.c_traffic * as_double(n);

  auto& m = report.measured_constants;
  m["routed_rounds"] = as_double(routed_rounds);
  m["surcharge_rounds"] = as_double(surcharge_rounds);
  m["accounted_rounds"] = as_double(routed_rounds + surcharge_rounds);
  m["round_bound"] = as_double((2 + c.surcharge) * t);
  m["max_episode_rounds"] = as_double(max_episode_rounds);
  m["max_demand_line_over_n"] = as_double(max_line) / as_double(std::max<std::size_t>(n, 1));
  m["machines"] = as_double(p);
  report.simulated = std::move(sim);
  return report;
}

SimulationReport simulate_congest_on_semimpc(const NodeProgram& prog, const Graph& g,
                                             std::optional<std::size_t> rounds,
                                             const AdapterOptions& options) {
  const auto& c = options.constants;
  const std::size_t n = g.n();
  const std::size_t m = g.m();
  SimulationReport report;
  report.source = ModelKind::congest;
  report.target = ModelKind::semi_mpc;
  report.algorithm = std::string(prog.name());
  report.native = run_congest(prog, g, ModelParams::congest(n, c), options.engine);
  const std::size_t native_t = report.native.rounds;
  const std::size_t t = rounds.value_or(native_t);
  if (t < native_t) {
    throw std::invalid_argument("round budget " + std::to_string(t) + " is below the native " +
                                std::to_string(native_t) + " rounds");
  }
  auto& mc = report.measured_constants;
  mc["native_rounds"] = as_double(native_t);
  mc["T"] = as_double(t);
  if (!report.native.clean()) {
    report.refused = "native run is not clean: " + report.native.violations.front().describe();
    return report;
  }
  const double linearity = memory_linearity(report.native);
  mc["native_memory_per_received_word"] = linearity;
  if (linearity > c.c_space) {
    report.refused = "native node memory is not linear in the words it receives";
    return report;
  }

  const std::size_t s = static_cast<std::size_t>(std::floor(c.c_space * as_double(n)));
  const std::size_t cap = std::max<std::size_t>(1, std::min(n, s));
  const double wanted = std::ceil(c.c_machines * as_double(t) * as_double(m) / as_double(n));
  const std::size_t machine_bound = std::min(cap, std::max<std::size_t>(1, static_cast<std::size_t>(wanted)));
  const std::size_t machines = m == 0 ? 1 : machine_bound;

  const auto params = ModelParams::semi_mpc(n, machines, 2 * m, c);
  const auto inputs = distribute_edges(g, machines, options.seed);
  CongestOnSemiMpc wrapped(prog);
  auto sim = run_mpc(wrapped, inputs, params, options.engine);

  std::vector<std::size_t> degrees(n);
  for (VertexId v = 0; v < n; ++v) degrees[v] = g.degree(v);
  const auto assignment = compute_node_assignment(degrees, machines);

  // Machine outputs are (vertex, length, words...) records.
  std::vector<std::vector<Word>> vertex_outputs(n);
  bool consistent = true;
  for (ParticipantId a = 0; a < sim.outputs.size(); ++a) {
    const auto& out = sim.outputs[a];
    std::vector<VertexId> seen;
    for (std::size_t i = 0; i + 1 < out.size();) {
      const auto v = static_cast<VertexId>(out[i]);
      const std::size_t len = out[i + 1];
      vertex_outputs.at(v).assign(out.begin() + i + 2, out.begin() + i + 2 + len);
      seen.push_back(v);
      i += 2 + len;
    }
    if (!sim.aborted && seen != assignment.hosted.at(a)) consistent = false;
  }
  report.outputs_match = vertex_outputs == report.native.outputs;

  const std::size_t setup = machines == 1 ? 0 : 3;
  const double load_bound =
      c.c_load * std::max(2.0 * as_double(m) / as_double(machines), as_double(g.max_degree()));
  const double n_over_t = as_double(n) / as_double(std::max<std::size_t>(t, 1));

  report.bound_checks["clean"] = sim.clean();
  report.bound_checks["rounds_ok"] = sim.rounds <= t + 3;
  report.bound_checks["setup_rounds_ok"] = setup <= 3;
  report.bound_checks["machines_ok"] = machines <= machine_bound && machines <= n;
  report.bound_checks["load_ok"] = as_double(assignment.max_load()) <= load_bound;
  report.bound_checks["space_ok"] = as_double(sim.trace.max_space()) <= c.c_space * as_double(n);
  report.bound_checks["assignment_consistent"] = consistent;
  report.flags["high_degree"] = as_double(g.max_degree()) > n_over_t;

  mc["simulated_rounds"] = as_double(sim.rounds);
  mc["setup_rounds"] = as_double(setup);
  mc["machines"] = as_double(machines);
  mc["machine_bound"] = as_double(machine_bound);
  mc["max_load"] = as_double(assignment.max_load());
  mc["load_bound"] = load_bound;
  mc["n_over_T"] = n_over_t;
  mc["max_degree"] = as_double(g.max_degree());
  mc["load_over_n_over_T"] = as_double(assignment.max_load()) / n_over_t;
  mc["max_traffic_words"] = as_double(sim.trace.max_traffic());
  mc["traffic_over_n_over_T"] = as_double(sim.trace.max_traffic()) / n_over_t;
  mc["max_space_words"] = as_double(sim.trace.max_space());
  mc["space_over_n"] = as_double(sim.trace.max_space()) / as_double(std::max<std::size_t>(n, 1));
  mc["replication_delta"] = params.delta;
  report.simulated = std::move(sim);
  return report;
}

}  // namespace semimpc
