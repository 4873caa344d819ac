#include "semimpc/json_io.hpp"

#include <stdexcept>

namespace semimpc {

Json to_json(const ModelParams& params) {
  const auto& c = params.constants;
  return Json{
      {"kind", to_string(params.kind)},
      {"n", params.n},
      {"p", params.p},
      {"s", params.s},
      {"delta", params.delta},
      {"input_size", params.input_size},
      {"word_width", params.word_width},
      {"c_space", c.c_space},
      {"c_traffic", c.c_traffic},
      {"c_total", c.c_total},
      {"polylog_exponent", c.polylog_exponent},
      {"c_M", c.c_machines},
      {"c_load", c.c_load},
      {"surcharge", c.surcharge},
  };
}

ModelParams params_from_json(const Json& j) {
  ModelParams p;
  p.kind = parse_model_kind(j.at("kind").get<std::string>());
  p.n = j.at("n").get<std::size_t>();
  p.p = j.at("p").get<std::size_t>();
  p.s = j.at("s").get<std::size_t>();
  p.delta = j.at("delta").get<double>();
  p.input_size = j.at("input_size").get<std::size_t>();
  p.word_width = j.at("word_width").get<unsigned>();
  auto& c = p.constants;
  c.c_space = j.at("c_space").get<double>();
  c.c_traffic = j.at("c_traffic").get<double>();
  c.c_total = j.at("c_total").get<double>();
  c.polylog_exponent = j.at("polylog_exponent").get<double>();
  c.c_machines = j.at("c_M").get<double>();
  c.c_load = j.at("c_load").get<double>();
  c.surcharge = j.at("surcharge").get<std::size_t>();
  return p;
}

Json to_json(const Violation& v) {
  Json j{{"kind", to_string(v.kind)},
         {"round", v.round},
         {"measured", v.measured},
         {"allowed", v.allowed},
         {"ratio", v.ratio()}};
  if (v.src) j["src"] = *v.src;
  if (v.dst) j["dst"] = *v.dst;
  return j;
}

Violation violation_from_json(const Json& j) {
  Violation v{parse_violation_kind(j.at("kind").get<std::string>()), j.at("round").get<std::size_t>(),
              std::nullopt, std::nullopt, j.at("measured").get<double>(), j.at("allowed").get<double>()};
  if (j.contains("src")) v.src = j.at("src").get<ParticipantId>();
  if (j.contains("dst")) v.dst = j.at("dst").get<ParticipantId>();
  return v;
}

Json to_json(const RunResult& run) {
  Json per_round = Json::array();
  for (const auto& round : run.trace.rounds) {
    Json transfers = Json::array();
    for (const auto& t : round.transfers) transfers.push_back({t.src, t.dst, t.words});
    per_round.push_back({{"transfers", std::move(transfers)}});
  }
  Json violations = Json::array();
  for (const auto& v : run.violations) violations.push_back(to_json(v));
  return Json{
      {"model", to_string(run.params.kind)},
      {"params", to_json(run.params)},
      {"rounds", run.rounds},
      {"aborted", run.aborted},
      {"violations", std::move(violations)},
      {"per_round", std::move(per_round)},
      {"outputs", run.outputs},
      {"space_high_water", run.trace.space_high_water},
      {"input_words", run.trace.input_words},
      {"participants", run.trace.participants},
  };
}

RunResult run_result_from_json(const Json& j) {
  RunResult run;
  run.params = params_from_json(j.at("params"));
  if (j.at("model").get<std::string>() != to_string(run.params.kind)) {
    throw std::invalid_argument("model does not match params.kind");
  }
  run.rounds = j.at("rounds").get<std::size_t>();
  run.aborted = j.value("aborted", false);
  for (const auto& v : j.at("violations")) run.violations.push_back(violation_from_json(v));
  run.trace.participants = j.at("participants").get<std::size_t>();
  run.trace.input_words = j.at("input_words").get<std::vector<std::size_t>>();
  for (const auto& round : j.at("per_round")) {
    RoundRecord record;
    for (const auto& t : round.at("transfers")) {
      if (!t.is_array() || t.size() != 3) throw std::invalid_argument("transfer must be [src, dst, words]");
      record.transfers.push_back({t[0].get<ParticipantId>(), t[1].get<ParticipantId>(), t[2].get<std::size_t>()});
      if (record.transfers.back().src >= run.trace.participants ||
          record.transfers.back().dst >= run.trace.participants) {
        throw std::invalid_argument("transfer names an unknown participant");
      }
    }
    run.trace.rounds.push_back(std::move(record));
  }
  run.trace.space_high_water = j.at("space_high_water").get<std::vector<std::vector<std::size_t>>>();
  run.outputs = j.at("outputs").get<std::vector<std::vector<Word>>>();
  return run;
}

Json to_json(const Schedule& schedule) {
  Json assignment = Json::array();
  for (const auto& w : schedule.assignment) {
    assignment.push_back({w.src, w.dst, w.seq, w.intermediate, w.round_a, w.round_b, w.color});
  }
  Json phases = Json::array();
  for (const auto& phase : schedule.phases()) {
    Json rounds = Json::array();
    for (const auto& hops : phase) {
      Json list = Json::array();
      for (const auto& [from, to] : hops) list.push_back({from, to});
      rounds.push_back(std::move(list));
    }
    phases.push_back(std::move(rounds));
  }
  return Json{{"n", schedule.n},
              {"colors", schedule.colors},
              {"phase_rounds", schedule.phase_rounds},
              {"rounds", schedule.rounds()},
              {"assignment_fields", {"src", "dst", "seq", "intermediate", "round_a", "round_b", "color"}},
              {"assignment", std::move(assignment)},
              {"phases", std::move(phases)}};
}

Json to_json(const SimulationReport& report) {
  Json j{{"source_model", to_string(report.source)},
         {"target_model", to_string(report.target)},
         {"algorithm", report.algorithm},
         {"native", to_json(report.native)},
         {"bound_checks", report.bound_checks},
         {"measured_constants", report.measured_constants},
         {"flags", report.flags},
         {"outputs_match", report.outputs_match},
         {"passed", report.passed()}};
  j["simulated"] = report.simulated ? to_json(*report.simulated) : Json(nullptr);
  j["refused"] = report.refused ? Json(*report.refused) : Json(nullptr);
  if (report.source == ModelKind::semi_mpc) {
    Json episodes = Json::array();
    for (const auto& e : report.routing) {
      episodes.push_back({{"source_round", e.source_round},
                          {"words", e.words},
                          {"max_line", e.max_line},
                          {"colors", e.colors},
                          {"rounds", e.rounds}});
    }
    if (j["simulated"].is_object()) j["simulated"]["routing"] = std::move(episodes);
  }
  return j;
}

DemandMatrix demand_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("demand matrix must be an array of rows");
  const std::size_t n = j.size();
  DemandMatrix demand(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& row = j[s];
    if (!row.is_array() || row.size() != n) {
      throw std::invalid_argument("demand matrix must be square (row " + std::to_string(s) + ")");
    }
    for (std::size_t d = 0; d < n; ++d) {
      if (!row[d].is_number_unsigned() && !(row[d].is_number_integer() && row[d].get<long long>() >= 0)) {
        throw std::invalid_argument("demand entries must be non-negative integers");
      }
      demand.at(s, d) = row[d].get<std::size_t>();
    }
  }
  return demand;
}

}  // namespace semimpc
