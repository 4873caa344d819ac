#include "semimpc/trace.hpp"

#include <algorithm>
#include <map>

namespace semimpc {

std::size_t RoundTrace::sent_words(ParticipantId a, std::size_t round) const {
  std::size_t total = 0;
  for (const auto& t : rounds.at(round - 1).transfers)
    if (t.src == a) total += t.words;
  return total;
}

std::size_t RoundTrace::recv_words(ParticipantId a, std::size_t round) const {
  std::size_t total = 0;
  for (const auto& t : rounds.at(round - 1).transfers)
    if (t.dst == a) total += t.words;
  return total;
}

std::size_t RoundTrace::max_traffic() const {
  std::size_t best = 0;
  std::vector<std::size_t> sent(participants), recv(participants);
  for (const auto& round : rounds) {
    std::fill(sent.begin(), sent.end(), 0);
    std::fill(recv.begin(), recv.end(), 0);
    for (const auto& t : round.transfers) {
      sent.at(t.src) += t.words;
      recv.at(t.dst) += t.words;
    }
    for (std::size_t a = 0; a < participants; ++a) best = std::max({best, sent[a], recv[a]});
  }
  return best;
}

std::size_t RoundTrace::max_space() const {
  std::size_t best = 0;
  for (const auto& row : space_high_water)
    for (auto words : row) best = std::max(best, words);
  return best;
}

std::size_t RoundTrace::total_words() const {
  std::size_t total = 0;
  for (const auto& round : rounds)
    for (const auto& t : round.transfers) total += t.words;
  return total;
}

std::vector<Violation> check_trace(const RoundTrace& trace, const ModelParams& params,
                                   const Graph* graph) {
  std::vector<Violation> found;
  const auto s = static_cast<double>(params.s);

  if (params.is_mpc_model()) {
    if (params.p > params.s) {
      found.push_back({ViolationKind::machines_exceed_space, 0, std::nullopt, std::nullopt,
                       static_cast<double>(params.p), s});
    }
    const double total = static_cast<double>(params.p) * s;
    const double allowed = total_space_allowance(params);
    if (total > allowed) {
      found.push_back({ViolationKind::total_space, 0, std::nullopt, std::nullopt, total, allowed});
    }
    for (std::size_t a = 0; a < trace.input_words.size(); ++a) {
      if (trace.input_words[a] > params.s) {
        found.push_back({ViolationKind::input_exceeds_space, 0, static_cast<ParticipantId>(a),
                         std::nullopt, static_cast<double>(trace.input_words[a]), s});
      }
    }
  }

  for (std::size_t r = 1; r <= trace.rounds.size(); ++r) {
    const auto& transfers = trace.rounds[r - 1].transfers;
    if (params.is_graph_model()) {
      std::map<std::pair<ParticipantId, ParticipantId>, std::size_t> per_pair;
      for (const auto& t : transfers) per_pair[{t.src, t.dst}] += t.words;
      for (const auto& [pair, words] : per_pair) {
        if (params.kind == ModelKind::congest && graph != nullptr &&
            !graph->has_edge(pair.first, pair.second)) {
          found.push_back({ViolationKind::non_edge, r, pair.first, pair.second,
                           static_cast<double>(words), 0});
        }
        if (words > 1) {
          found.push_back({ViolationKind::pair_capacity, r, pair.first, pair.second,
                           static_cast<double>(words), 1});
        }
      }
    } else {
      std::map<ParticipantId, std::size_t> sent, recv;
      for (const auto& t : transfers) {
        sent[t.src] += t.words;
        recv[t.dst] += t.words;
      }
      for (const auto& [a, words] : sent)
        if (words > params.s)
          found.push_back({ViolationKind::send_traffic, r, a, std::nullopt,
                           static_cast<double>(words), s});
      for (const auto& [a, words] : recv)
        if (words > params.s)
          found.push_back({ViolationKind::recv_traffic, r, a, std::nullopt,
                           static_cast<double>(words), s});
    }
  }

  if (params.is_mpc_model()) {
    for (std::size_t k = 0; k < trace.space_high_water.size(); ++k) {
      const auto& row = trace.space_high_water[k];
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (row[a] > params.s) {
          found.push_back({ViolationKind::space, k + 1, static_cast<ParticipantId>(a),
                           std::nullopt, static_cast<double>(row[a]), s});
        }
      }
    }
  }

  std::sort(found.begin(), found.end(), violation_less);
  return found;
}

}  // namespace semimpc
