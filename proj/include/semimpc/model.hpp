#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace semimpc {

/// One accounting unit of communication and space.
using Word = std::uint64_t;
using ParticipantId = std::uint32_t;

/// Default word width: ceil(log2 n) + 2 bits, enough for a vertex id plus a
/// small tag.
constexpr unsigned default_word_width(std::size_t n) {
  return static_cast<unsigned>(std::bit_width(n > 0 ? n - 1 : 0)) + 2;
}

struct Message {
  ParticipantId src = 0;
  ParticipantId dst = 0;
  std::vector<Word> payload;

  friend bool operator==(const Message&, const Message&) = default;
};

enum class ModelKind { congest, clique, mpc, semi_mpc };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// Constant factors standing in for the O(.) budgets.
struct Constants {
  double c_space = 4;       // semi-MPC space s = c_space * n
  double c_traffic = 4;     // routing demand rows/cols <= c_traffic * n
  double c_total = 4;       // p*s <= c_total * l^(1+delta) * log2(l+1)^polylog
  double polylog_exponent = 1;
  double c_machines = 2;    // CONGEST -> semi-MPC: M = ceil(c_M * T * m / n)
  double c_load = 2;        // degree-load bound factor for the node assignment
  std::size_t surcharge = 2;  // per-round bookkeeping charged to routed rounds

  /// Applies a "key=value" override; throws std::invalid_argument.
  void set(std::string_view assignment);
};

struct ModelParams {
  ModelKind kind = ModelKind::clique;
  std::size_t n = 0;           // graph vertex count (0 for generic MPC)
  std::size_t p = 0;           // participants
  std::size_t s = 0;           // space per machine in words (MPC kinds)
  double delta = 0;            // replication exponent
  std::size_t input_size = 0;  // l, total input words (MPC kinds)
  unsigned word_width = 64;
  Constants constants;

  static ModelParams clique(std::size_t n, const Constants& c = {});
  static ModelParams congest(std::size_t n, const Constants& c = {});
  /// s = c_space * n; delta is the smallest exponent admitting p * s.
  static ModelParams semi_mpc(std::size_t n, std::size_t p, std::size_t input_size,
                              const Constants& c = {});
  static ModelParams mpc(std::size_t p, std::size_t s, std::size_t input_size, double delta,
                         unsigned word_width, const Constants& c = {});

  bool is_graph_model() const { return kind == ModelKind::congest || kind == ModelKind::clique; }
  bool is_mpc_model() const { return !is_graph_model(); }
};

/// l used by the total-space law: the input size, but never less than the
/// vertex count (a graph input always names its vertices) nor 1.
double effective_input_size(const ModelParams& params);

/// c_total * l^(1+delta) * log2(l+1)^polylog_exponent.
double total_space_allowance(const ModelParams& params);

/// Smallest delta in [0, 1) with p*s within the total-space allowance.
std::optional<double> min_replication_exponent(std::size_t p, std::size_t s, std::size_t n,
                                               std::size_t input_size, const Constants& c);

enum class ViolationKind {
  machines_exceed_space,  // p > s
  total_space,            // p*s over the allowance
  input_exceeds_space,    // a machine's initial input > s
  pair_capacity,          // > 1 word on an ordered pair in one round
  non_edge,               // CONGEST transfer off the graph
  send_traffic,           // MPC: sent words > s
  recv_traffic,           // MPC: received words > s
  space,                  // MPC: space high-water > s
};

std::string_view to_string(ViolationKind kind);
ViolationKind parse_violation_kind(std::string_view name);

struct Violation {
  ViolationKind kind;
  std::size_t round = 0;  // 0 for start-of-run checks
  std::optional<ParticipantId> src;  // or the offending participant
  std::optional<ParticipantId> dst;
  double measured = 0;
  double allowed = 0;

  double ratio() const { return allowed > 0 ? measured / allowed : measured; }
  std::string describe() const;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Canonical order shared by engines and the checker.
bool violation_less(const Violation& a, const Violation& b);

}  // namespace semimpc
