#pragma once

#include "semimpc/graph.hpp"
#include "semimpc/model.hpp"

#include <cstddef>
#include <vector>

namespace semimpc {

/// One non-self message as seen on the wire.
struct Transfer {
  ParticipantId src = 0;
  ParticipantId dst = 0;
  std::size_t words = 0;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

struct RoundRecord {
  std::vector<Transfer> transfers;

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

/// Evidence ledger of a run.
///
/// rounds[r - 1] holds the transfers of communication round r. Space is
/// sampled per computation step: space_high_water[k][a] is participant a's
/// peak during step k + 1, and the step that ends a run has no round of its
/// own, so a finished run carries one more space row than rounds.
/// Self-messages are free and never appear as transfers.
struct RoundTrace {
  std::size_t participants = 0;
  std::vector<std::size_t> input_words;
  std::vector<RoundRecord> rounds;
  std::vector<std::vector<std::size_t>> space_high_water;

  std::size_t sent_words(ParticipantId a, std::size_t round) const;
  std::size_t recv_words(ParticipantId a, std::size_t round) const;
  /// Largest per-participant send or receive total over all rounds.
  std::size_t max_traffic() const;
  std::size_t max_space() const;
  std::size_t total_words() const;

  friend bool operator==(const RoundTrace&, const RoundTrace&) = default;
};

/// Recomputes every budget of `params` from the raw transfers and space
/// samples. `graph` enables the CONGEST edge discipline check.
std::vector<Violation> check_trace(const RoundTrace& trace, const ModelParams& params,
                                   const Graph* graph = nullptr);

}  // namespace semimpc
