#include "doctest.h"
#include "support.hpp"

#include "semimpc/algorithms.hpp"

using namespace semimpc;
using testing::ScriptedProgram;

namespace {

ModelParams small_mpc(std::size_t p, std::size_t s) {
  Constants c;
  c.c_total = 100;
  return ModelParams::mpc(p, s, 0, 0, 16, c);
}

// Never halts.
class Chatter final : public NodeProgram {
 public:
  std::string_view name() const override { return "chatter"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    struct Node final : Participant {
      ParticipantId self;
      std::size_t p;
      Step on_round(std::span<const Message>) override {
        return {{{static_cast<ParticipantId>((self + 1) % p), {1}}}, false};
      }
      std::vector<Word> output() const override { return {}; }
      std::size_t space_words() const override { return 1; }
    };
    auto node = std::make_unique<Node>();
    node->self = input.self;
    node->p = input.participants;
    return node;
  }
};

// Node 0 sends one message with the given destination and payload.
class BadSender final : public NodeProgram {
 public:
  BadSender(ParticipantId dst, std::vector<Word> payload) : dst_(dst), payload_(std::move(payload)) {}
  std::string_view name() const override { return "bad"; }
  std::unique_ptr<Participant> spawn(const LocalInput& input) const override {
    struct Node final : Participant {
      bool active;
      ParticipantId dst;
      std::vector<Word> payload;
      Step on_round(std::span<const Message>) override {
        Step step;
        if (active) step.outbox.push_back({dst, payload});
        active = false;
        step.vote_halt = true;
        return step;
      }
      std::vector<Word> output() const override { return {}; }
      std::size_t space_words() const override { return 0; }
    };
    auto node = std::make_unique<Node>();
    node->active = input.self == 0;
    node->dst = dst_;
    node->payload = payload_;
    return node;
  }

 private:
  ParticipantId dst_;
  std::vector<Word> payload_;
};

}  // namespace

TEST_CASE("clique: every node sends its id to node 0") {
  auto g = gen_graph({GraphKind::path, 4});
  ScriptedProgram prog({{1, 0, 1}, {2, 0, 1}, {3, 0, 1}});
  auto run = run_clique(prog, g, ModelParams::clique(4));
  CHECK(run.clean());
  CHECK(run.rounds == 1);
  CHECK(run.outputs[0] == std::vector<Word>{3});
  CHECK(run.trace.rounds.size() == 1);
  CHECK(run.trace.space_high_water.size() == 2);
}

TEST_CASE("clique: two words on one pair is a violation") {
  auto g = Graph(4, {});
  ScriptedProgram prog({{1, 2, 2}});
  auto run = run_clique(prog, g, ModelParams::clique(4));
  REQUIRE(run.violations.size() == 1);
  const auto& v = run.violations[0];
  CHECK(v.kind == ViolationKind::pair_capacity);
  CHECK(v.round == 1);
  CHECK(v.src == 1u);
  CHECK(v.dst == 2u);
  CHECK(run.aborted);
  CHECK(check_trace(run.trace, run.params) == run.violations);
}

TEST_CASE("clique: two separate one-word messages on one pair also count as two") {
  ScriptedProgram prog({{1, 2, 1}, {1, 2, 1}});
  auto run = run_clique(prog, Graph(3, {}), ModelParams::clique(3));
  REQUIRE(run.violations.size() == 1);
  CHECK(run.violations[0].measured == 2);
}

TEST_CASE("clique: Boruvka on a triangle") {
  BoruvkaConnectivity prog;
  auto run = run_clique(prog, gen_graph({GraphKind::complete, 3}), ModelParams::clique(3));
  CHECK(run.clean());
  CHECK(testing::labels_of(run) == Labels{0, 0, 0});
}

TEST_CASE("congest: fixed two-round flooding on a path") {
  testing::FixedRoundFlood prog(2);
  auto g = gen_graph({GraphKind::path, 3});
  auto run = run_congest(prog, g, ModelParams::congest(3));
  CHECK(run.clean());
  CHECK(run.rounds == 2);
  CHECK(testing::labels_of(run) == Labels{0, 0, 0});
}

TEST_CASE("congest: sending along a non-edge") {
  ScriptedProgram prog({{0, 2, 1}});
  auto g = gen_graph({GraphKind::path, 3});
  auto run = run_congest(prog, g, ModelParams::congest(3));
  REQUIRE(run.violations.size() == 1);
  CHECK(run.violations[0].kind == ViolationKind::non_edge);
  CHECK(check_trace(run.trace, run.params, &g) == run.violations);
}

TEST_CASE("congest: flooding on an edgeless graph stabilizes at once") {
  FloodComponents prog;
  auto run = run_congest(prog, Graph(3, {}), ModelParams::congest(3));
  CHECK(run.clean());
  CHECK(run.rounds == 1);
  CHECK(testing::labels_of(run) == Labels{0, 1, 2});
}

TEST_CASE("mpc: traffic at and above s") {
  std::vector<std::vector<Word>> inputs(2);
  ScriptedProgram eight({{0, 1, 8}});
  auto ok = run_mpc(eight, inputs, small_mpc(2, 8));
  CHECK(ok.clean());
  CHECK(ok.trace.max_traffic() == 8);

  ScriptedProgram nine({{0, 1, 9}});
  auto bad = run_mpc(nine, inputs, small_mpc(2, 8));
  CHECK(bad.aborted);
  auto it = std::find_if(bad.violations.begin(), bad.violations.end(),
                         [](const Violation& v) { return v.kind == ViolationKind::send_traffic; });
  REQUIRE(it != bad.violations.end());
  CHECK(it->src == 0u);
  CHECK(it->ratio() == doctest::Approx(9.0 / 8.0));
  CHECK(check_trace(bad.trace, bad.params) == bad.violations);
}

TEST_CASE("mpc: self-messages are free but count toward space") {
  std::vector<std::vector<Word>> inputs(2);
  ScriptedProgram self({{0, 0, 8}});
  auto run = run_mpc(self, inputs, small_mpc(2, 8));
  CHECK(run.clean());
  CHECK(run.trace.rounds[0].transfers.empty());
  CHECK(run.trace.max_space() == 8);

  ScriptedProgram too_much({{0, 0, 9}});
  auto over = run_mpc(too_much, inputs, small_mpc(2, 8));
  REQUIRE(!over.violations.empty());
  CHECK(over.violations[0].kind == ViolationKind::space);
}

TEST_CASE("semi-MPC forest merge on gnp(32, 0.2)") {
  auto g = gen_graph({GraphKind::gnp, 32, 0.2, 1});
  ForestMergeConnectivity prog;
  auto params = ModelParams::semi_mpc(32, 4, 2 * g.m());
  auto run = run_mpc(prog, distribute_edges(g, 4, 0), params);
  CHECK(run.clean());
  CHECK(run.rounds == 3);
  CHECK(testing::machine_labels(run) == components_oracle(g));
}

TEST_CASE("run_mpc validates inputs") {
  ScriptedProgram prog({});
  CHECK_THROWS_AS(run_mpc(prog, {{}}, small_mpc(2, 8)), std::invalid_argument);
  CHECK_THROWS_AS(run_mpc(prog, {{1}, {}}, small_mpc(2, 8)), std::invalid_argument);
  CHECK_THROWS_AS(run_clique(prog, Graph(3, {}), ModelParams::clique(4)), std::invalid_argument);
  CHECK_THROWS_AS(run_congest(prog, Graph(3, {}), ModelParams::clique(3)), std::invalid_argument);
}

TEST_CASE("malformed messages throw") {
  Graph g(3, {});
  CHECK_THROWS_AS(run_clique(BadSender(7, {1}), g, ModelParams::clique(3)), MalformedMessage);
  CHECK_THROWS_AS(run_clique(BadSender(1, {}), g, ModelParams::clique(3)), MalformedMessage);
  CHECK_THROWS_AS(run_clique(BadSender(1, {Word{1} << 20}), g, ModelParams::clique(3)), MalformedMessage);
}

TEST_CASE("round cap") {
  EngineOptions options;
  options.round_cap = 5;
  CHECK_THROWS_AS(run_clique(Chatter{}, Graph(3, {}), ModelParams::clique(3), options), RoundCapExceeded);
}

TEST_CASE("distribute_edges deals every edge once") {
  auto g = gen_graph({GraphKind::gnp, 30, 0.3, 4});
  auto parts = distribute_edges(g, 4, 11);
  std::vector<Edge> seen;
  std::size_t biggest = 0, smallest = SIZE_MAX;
  for (const auto& part : parts) {
    REQUIRE(part.size() % 2 == 0);
    biggest = std::max(biggest, part.size());
    smallest = std::min(smallest, part.size());
    for (std::size_t i = 0; i < part.size(); i += 2)
      seen.emplace_back(static_cast<VertexId>(part[i]), static_cast<VertexId>(part[i + 1]));
  }
  for (auto& e : seen)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(seen.begin(), seen.end());
  CHECK(seen == g.edges());
  CHECK(biggest - smallest <= 2);
  CHECK(distribute_edges(g, 4, 11) == parts);
}
