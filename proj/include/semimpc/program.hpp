#pragma once

#include "semimpc/model.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace semimpc {

/// What a participant knows when it starts.
struct LocalInput {
  ParticipantId self = 0;
  std::size_t participants = 0;  // n in graph models, p in MPC
  std::size_t vertices = 0;      // graph vertex count, 0 if not a graph input
  /// Graph models: sorted neighbour ids. MPC: the machine's initial words.
  std::vector<Word> words;
};

/// Outgoing message; the engine stamps the sender.
struct Send {
  ParticipantId dst = 0;
  std::vector<Word> payload;
};

struct Step {
  std::vector<Send> outbox;
  /// The run ends after the first step in which every participant votes to
  /// halt and no participant sends anything.
  bool vote_halt = false;
};

/// Per-participant state machine of a NodeProgram.
///
/// on_round receives the messages delivered at the end of the previous
/// round, ordered by (src, send order); the first call sees an empty inbox.
/// Implementations must be deterministic and must not share mutable state,
/// since engines may step participants concurrently.
class Participant {
 public:
  virtual ~Participant() = default;
  virtual Step on_round(std::span<const Message> inbox) = 0;
  virtual std::vector<Word> output() const = 0;
  /// Words currently retained between rounds.
  virtual std::size_t space_words() const = 0;
};

class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual std::string_view name() const = 0;
  virtual std::unique_ptr<Participant> spawn(const LocalInput& input) const = 0;
};

inline std::size_t payload_words(std::span<const Message> messages) {
  std::size_t total = 0;
  for (const auto& m : messages) total += m.payload.size();
  return total;
}

}  // namespace semimpc
