#pragma once

#include "semimpc/engine.hpp"
#include "semimpc/graph.hpp"
#include "semimpc/program.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace semimpc {

/// CONGEST node -> semi-MPC machine map (vertex ids are the labels).
struct Assignment {
  std::size_t machines = 0;
  std::vector<ParticipantId> host;            // per vertex
  std::vector<std::vector<VertexId>> hosted;  // per machine, ascending ids
  std::vector<std::size_t> load;              // per machine degree sum

  std::size_t max_load() const;
};

/// Sorts vertices by degree (descending, ties by ascending id) and deals the
/// vertex at sorted position i to machine i mod machines.
Assignment compute_node_assignment(std::span<const std::size_t> degrees, std::size_t machines);

struct AdapterOptions {
  Constants constants;
  EngineOptions engine;
  std::uint64_t seed = 0;  // initial edge placement
};

struct RoutingEpisode {
  std::size_t source_round = 0;  // semi-MPC round being delivered
  std::size_t words = 0;
  std::size_t max_line = 0;      // max row/column sum of the demand
  std::size_t colors = 0;
  std::size_t rounds = 0;
};

struct SimulationReport {
  ModelKind source = ModelKind::clique;
  ModelKind target = ModelKind::semi_mpc;
  std::string algorithm;
  RunResult native;
  std::optional<RunResult> simulated;
  /// Set when the source run breaks a hypothesis of the simulation.
  std::optional<std::string> refused;
  std::map<std::string, bool> bound_checks;
  std::map<std::string, double> measured_constants;
  std::map<std::string, bool> flags;
  bool outputs_match = false;
  std::vector<RoutingEpisode> routing;

  /// True when nothing was refused, outputs match and every bound holds.
  bool passed() const;
  /// Names of failed bound checks.
  std::vector<std::string> failures() const;
};

/// Congested clique on semi-MPC with exactly n machines: one round
/// redistributes every stored edge to the machines of both endpoints, then
/// machine v replays node v, for T + 1 rounds in total. `placement` gives
/// each machine's initial edges as (u, v, ...) words; by default a seeded
/// round-robin deal. Refused if a native node exceeds c_space * n words.
SimulationReport simulate_cc_on_semimpc(const NodeProgram& prog, const Graph& g,
                                        const AdapterOptions& options = {},
                                        const std::vector<std::vector<Word>>* placement = nullptr);

/// Semi-MPC on the congested clique: machine a runs on node a, and each
/// semi-MPC round becomes one plan_routing / execute_schedule episode.
/// Self-messages stay local. Needs p <= n.
SimulationReport simulate_semimpc_on_cc(const NodeProgram& prog,
                                        const std::vector<std::vector<Word>>& inputs,
                                        std::size_t n, const AdapterOptions& options = {});

/// CONGEST on semi-MPC with M = min(max(1, ceil(c_M * T * m / n)), n, s)
/// machines: three setup rounds (partial degrees to block aggregators,
/// all-to-all degree broadcast, edges to their host machines) followed by
/// the replay, where each machine steps all of its hosted nodes. With one
/// machine the setup is local. `rounds` defaults to the native round count
/// and must not be smaller. Refused if a native node holds more than
/// c_space * (words received so far + input + 1).
SimulationReport simulate_congest_on_semimpc(const NodeProgram& prog, const Graph& g,
                                             std::optional<std::size_t> rounds = std::nullopt,
                                             const AdapterOptions& options = {});

}  // namespace semimpc
