#pragma once

#include "semimpc/graph.hpp"
#include "semimpc/model.hpp"
#include "semimpc/program.hpp"
#include "semimpc/trace.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace semimpc {

/// A program kept running past the round cap. This is an error in the
/// program, not a model violation.
class RoundCapExceeded : public std::runtime_error {
 public:
  explicit RoundCapExceeded(std::size_t cap)
      : std::runtime_error("round cap of " + std::to_string(cap) + " exceeded") {}
};

/// A message the model cannot express at all (bad destination, empty
/// payload, or a word wider than the configured width).
class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  std::size_t round_cap = 0;  // 0: 10 * max(n, p) + 100
  unsigned workers = 1;
};

struct RunResult {
  ModelParams params;
  std::size_t rounds = 0;
  std::vector<std::vector<Word>> outputs;
  RoundTrace trace;
  std::vector<Violation> violations;
  bool aborted = false;

  bool clean() const { return violations.empty(); }
};

/// Congested clique: any ordered pair carries at most one word per round.
/// Participant v's local input is its sorted neighbour list.
RunResult run_clique(const NodeProgram& prog, const Graph& g, const ModelParams& params,
                     const EngineOptions& options = {});

/// CONGEST: as the clique, restricted to graph edges.
RunResult run_congest(const NodeProgram& prog, const Graph& g, const ModelParams& params,
                      const EngineOptions& options = {});

/// MPC / semi-MPC: per round each machine sends and receives at most s
/// words and never holds more than s words.
RunResult run_mpc(const NodeProgram& prog, const std::vector<std::vector<Word>>& inputs,
                  const ModelParams& params, const EngineOptions& options = {});

/// Shuffles the edges with `seed` and deals them round-robin; each machine
/// receives its edges as a flat (u, v, u, v, ...) word sequence.
std::vector<std::vector<Word>> distribute_edges(const Graph& g, std::size_t machines,
                                                std::uint64_t seed);

}  // namespace semimpc
