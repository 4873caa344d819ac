#pragma once

#include "semimpc/engine.hpp"
#include "semimpc/model.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace semimpc {

// Constant-round delivery of an arbitrary load in the congested clique where
// every node is source and destination of O(n) words.
//
// Each demanded word is an edge of a bipartite multigraph (sources on the
// left, destinations on the right). A proper edge colouring with max-degree
// colours gives every word a colour k such that words sharing a source, or
// sharing a destination, have distinct colours. Word k travels
// source -> (k mod n) in phase A and (k mod n) -> destination in phase B,
// both in round floor(k / n) of their phase, so no ordered pair ever carries
// more than one word per round.

struct BipartiteMultigraph {
  std::size_t left = 0;
  std::size_t right = 0;
  /// (left vertex, right vertex); parallel edges allowed.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t max_degree() const;
};

using Coloring = std::vector<std::uint32_t>;

/// Proper edge colouring with at most max_degree() colours, built by
/// inserting edges one at a time and flipping an alternating two-colour path
/// when the smallest free colours at the endpoints differ. Smallest free
/// colour index is tried first. Throws std::invalid_argument when an
/// endpoint lies outside its side or a degree exceeds max_colors.
Coloring edge_color_bipartite(const BipartiteMultigraph& mg, std::size_t max_colors);

std::size_t colors_used(const Coloring& coloring);

class DemandMatrix {
 public:
  explicit DemandMatrix(std::size_t n) : n_(n), counts_(n * n, 0) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t& at(std::size_t src, std::size_t dst) { return counts_.at(src * n_ + dst); }
  std::size_t at(std::size_t src, std::size_t dst) const { return counts_.at(src * n_ + dst); }
  std::size_t row_sum(std::size_t src) const;
  std::size_t col_sum(std::size_t dst) const;
  /// max over all row and column sums
  std::size_t max_line_sum() const;
  std::size_t total() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> counts_;
};

/// Route of one demanded word; rounds are 0-based within their phase.
struct WordSlot {
  ParticipantId src = 0;
  ParticipantId dst = 0;
  std::uint32_t seq = 0;  // index among the words from src to dst
  ParticipantId intermediate = 0;
  std::uint32_t round_a = 0;
  std::uint32_t round_b = 0;
  std::uint32_t color = 0;

  friend bool operator==(const WordSlot&, const WordSlot&) = default;
};

struct Schedule {
  std::size_t n = 0;
  std::size_t colors = 0;
  std::array<std::size_t, 2> phase_rounds{0, 0};
  /// Ordered by (src, dst, seq).
  std::vector<WordSlot> assignment;

  std::size_t rounds() const { return phase_rounds[0] + phase_rounds[1]; }
  /// phases()[phase][round] lists the (from, to) hop of every word moving
  /// in that round, self hops included.
  std::array<std::vector<std::vector<std::pair<ParticipantId, ParticipantId>>>, 2> phases() const;
};

/// Throws std::invalid_argument if a row or column sum exceeds c_traffic * n.
Schedule plan_routing(const DemandMatrix& demand, const Constants& constants = {});

struct RoutedWord {
  ParticipantId src = 0;
  std::uint32_t seq = 0;
  Word value = 0;

  friend bool operator==(const RoutedWord&, const RoutedWord&) = default;
  friend auto operator<=>(const RoutedWord&, const RoutedWord&) = default;
};

struct DeliveryRecord {
  RunResult run;
  /// delivered[dst], ordered by (src, seq).
  std::vector<std::vector<RoutedWord>> delivered;
};

/// Replays the schedule on the clique engine. payloads[i] is the value of
/// schedule.assignment[i]. Throws std::logic_error if the engine reports a
/// violation, which a schedule from plan_routing never causes.
DeliveryRecord execute_schedule(const Schedule& schedule, std::span<const Word> payloads,
                                const EngineOptions& options = {});

}  // namespace semimpc
