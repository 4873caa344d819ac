#include "semimpc/engine.hpp"

#include "semimpc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <utility>

namespace semimpc {

namespace {

struct StepOutcome {
  Step step;
  std::size_t space = 0;
};

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers, count);
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t end = std::min(count, (t + 1) * chunk);
      for (std::size_t i = t * chunk; i < end; ++i) fn(i);
    });
  }
}

void validate_message(const Send& send, ParticipantId src, std::size_t participants,
                      unsigned width) {
  if (send.dst >= participants) {
    throw MalformedMessage("participant " + std::to_string(src) + " sent to unknown participant " +
                           std::to_string(send.dst));
  }
  if (send.payload.empty()) {
    throw MalformedMessage("participant " + std::to_string(src) + " sent an empty payload");
  }
  if (width < 64) {
    for (auto word : send.payload) {
      if (word >> width) {
        throw MalformedMessage("participant " + std::to_string(src) + " sent word " +
                               std::to_string(word) + " wider than " + std::to_string(width) +
                               " bits");
      }
    }
  }
}

RunResult execute(const NodeProgram& prog, const std::vector<LocalInput>& inputs,
                  const ModelParams& params, const Graph* graph, const EngineOptions& options) {
  const std::size_t count = inputs.size();
  RunResult result;
  result.params = params;
  result.trace.participants = count;
  for (const auto& in : inputs) result.trace.input_words.push_back(in.words.size());

  const bool mpc = params.is_mpc_model();
  const bool congest = params.kind == ModelKind::congest;
  const double s = static_cast<double>(params.s);

  if (mpc) {
    std::vector<Violation> start;
    if (params.p > params.s) {
      start.push_back({ViolationKind::machines_exceed_space, 0, std::nullopt, std::nullopt,
                       static_cast<double>(params.p), s});
    }
    const double allowed = total_space_allowance(params);
    if (static_cast<double>(params.p) * s > allowed) {
      start.push_back({ViolationKind::total_space, 0, std::nullopt, std::nullopt,
                       static_cast<double>(params.p) * s, allowed});
    }
    for (ParticipantId a = 0; a < count; ++a) {
      if (inputs[a].words.size() > params.s) {
        start.push_back({ViolationKind::input_exceeds_space, 0, a, std::nullopt,
                         static_cast<double>(inputs[a].words.size()), s});
      }
    }
    if (!start.empty()) {
      std::sort(start.begin(), start.end(), violation_less);
      result.violations = std::move(start);
      result.aborted = true;
      result.outputs.resize(count);
      return result;
    }
  }

  std::vector<std::unique_ptr<Participant>> participants(count);
  parallel_for(count, options.workers, [&](std::size_t a) { participants[a] = prog.spawn(inputs[a]); });

  const std::size_t cap = options.round_cap != 0
                              ? options.round_cap
                              : 10 * std::max(params.n, count) + 100;

  std::vector<std::vector<Message>> inboxes(count);
  std::vector<StepOutcome> outcomes(count);
  std::vector<std::size_t> sent(count), recv(count);
  // Words sent this round from the current source to each destination.
  std::vector<std::size_t> pair_words(count);
  std::vector<ParticipantId> touched;

  for (std::size_t k = 1;; ++k) {
    parallel_for(count, options.workers, [&](std::size_t a) {
      auto& p = *participants[a];
      const std::size_t before = p.space_words() + payload_words(inboxes[a]);
      outcomes[a].step = p.on_round(inboxes[a]);
      std::size_t out_words = 0;
      for (const auto& send : outcomes[a].step.outbox) out_words += send.payload.size();
      outcomes[a].space = std::max(before, p.space_words() + out_words);
    });

    auto& row = result.trace.space_high_water.emplace_back(count);
    std::vector<Violation> found;
    bool finished = true;
    for (ParticipantId a = 0; a < count; ++a) {
      row[a] = outcomes[a].space;
      if (mpc && row[a] > params.s) {
        found.push_back({ViolationKind::space, k, a, std::nullopt, static_cast<double>(row[a]), s});
      }
      if (!outcomes[a].step.vote_halt || !outcomes[a].step.outbox.empty()) finished = false;
    }

    if (finished) {
      result.rounds = k - 1;
      if (!found.empty()) {
        result.violations = std::move(found);
        result.aborted = true;
      }
      break;
    }
    if (k > cap) throw RoundCapExceeded(cap);

    for (auto& inbox : inboxes) inbox.clear();
    std::fill(sent.begin(), sent.end(), 0);
    std::fill(recv.begin(), recv.end(), 0);
    auto& record = result.trace.rounds.emplace_back();

    for (ParticipantId a = 0; a < count; ++a) {
      touched.clear();
      for (auto& send : outcomes[a].step.outbox) {
        validate_message(send, a, count, params.word_width);
        const std::size_t words = send.payload.size();
        if (send.dst != a) {
          record.transfers.push_back({a, send.dst, words});
          if (mpc) {
            sent[a] += words;
            recv[send.dst] += words;
          } else {
            if (pair_words[send.dst] == 0) touched.push_back(send.dst);
            pair_words[send.dst] += words;
          }
        }
        inboxes[send.dst].push_back(Message{a, send.dst, std::move(send.payload)});
      }
      std::sort(touched.begin(), touched.end());
      for (auto dst : touched) {
        const std::size_t words = std::exchange(pair_words[dst], 0);
        if (congest && !graph->has_edge(a, dst)) {
          found.push_back({ViolationKind::non_edge, k, a, dst, static_cast<double>(words), 0});
        }
        if (words > 1) {
          found.push_back({ViolationKind::pair_capacity, k, a, dst, static_cast<double>(words), 1});
        }
      }
    }
    if (mpc) {
      for (ParticipantId a = 0; a < count; ++a) {
        if (sent[a] > params.s)
          found.push_back({ViolationKind::send_traffic, k, a, std::nullopt,
                           static_cast<double>(sent[a]), s});
        if (recv[a] > params.s)
          found.push_back({ViolationKind::recv_traffic, k, a, std::nullopt,
                           static_cast<double>(recv[a]), s});
      }
    }

    if (!found.empty()) {
      std::sort(found.begin(), found.end(), violation_less);
      result.violations = std::move(found);
      result.aborted = true;
      result.rounds = k;
      break;
    }
  }

  result.outputs.resize(count);
  for (std::size_t a = 0; a < count; ++a) result.outputs[a] = participants[a]->output();
  return result;
}

std::vector<LocalInput> graph_inputs(const Graph& g) {
  std::vector<LocalInput> inputs(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    inputs[v].self = v;
    inputs[v].participants = g.n();
    inputs[v].vertices = g.n();
    const auto& nbrs = g.neighbors(v);
    inputs[v].words.assign(nbrs.begin(), nbrs.end());
  }
  return inputs;
}

void require_graph_params(const Graph& g, const ModelParams& params, ModelKind kind) {
  if (params.kind != kind) {
    throw std::invalid_argument("engine expects model " + std::string(to_string(kind)) +
                                ", got " + std::string(to_string(params.kind)));
  }
  if (params.n != g.n() || params.p != g.n()) {
    throw std::invalid_argument("graph models run one participant per vertex (p = n)");
  }
}

}  // namespace

RunResult run_clique(const NodeProgram& prog, const Graph& g, const ModelParams& params,
                     const EngineOptions& options) {
  require_graph_params(g, params, ModelKind::clique);
  return execute(prog, graph_inputs(g), params, &g, options);
}

RunResult run_congest(const NodeProgram& prog, const Graph& g, const ModelParams& params,
                      const EngineOptions& options) {
  require_graph_params(g, params, ModelKind::congest);
  return execute(prog, graph_inputs(g), params, &g, options);
}

RunResult run_mpc(const NodeProgram& prog, const std::vector<std::vector<Word>>& inputs,
                  const ModelParams& params, const EngineOptions& options) {
  if (!params.is_mpc_model()) throw std::invalid_argument("run_mpc expects an MPC model");
  if (inputs.size() != params.p) {
    throw std::invalid_argument("expected " + std::to_string(params.p) + " machine inputs, got " +
                                std::to_string(inputs.size()));
  }
  std::size_t total = 0;
  for (const auto& in : inputs) total += in.size();
  if (total != params.input_size) {
    throw std::invalid_argument("machine inputs hold " + std::to_string(total) +
                                " words but input size is " + std::to_string(params.input_size));
  }
  if (params.kind == ModelKind::semi_mpc &&
      static_cast<double>(params.s) > params.constants.c_space * static_cast<double>(params.n)) {
    throw std::invalid_argument("semi-MPC space must be at most c_space * n words");
  }
  std::vector<LocalInput> locals(inputs.size());
  for (ParticipantId a = 0; a < inputs.size(); ++a) {
    locals[a].self = a;
    locals[a].participants = params.p;
    locals[a].vertices = params.n;
    locals[a].words = inputs[a];
  }
  return execute(prog, locals, params, nullptr, options);
}

std::vector<std::vector<Word>> distribute_edges(const Graph& g, std::size_t machines,
                                                std::uint64_t seed) {
  if (machines == 0) throw std::invalid_argument("need at least one machine");
  auto edges = g.edges();
  Rng rng(seed);
  rng.shuffle(edges);
  std::vector<std::vector<Word>> inputs(machines);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto& in = inputs[i % machines];
    in.push_back(edges[i].first);
    in.push_back(edges[i].second);
  }
  return inputs;
}

}  // namespace semimpc
