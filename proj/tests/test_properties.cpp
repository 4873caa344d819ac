#include "doctest.h"
#include "support.hpp"

#include "semimpc/adapters.hpp"
#include "semimpc/algorithms.hpp"
#include "semimpc/json_io.hpp"

#include <numeric>

using namespace semimpc;

TEST_CASE("degree sum is twice the edge count") {
  testing::Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    auto g = testing::random_graph(rng, 60);
    std::size_t total = 0;
    for (VertexId v = 0; v < g.n(); ++v) total += g.degree(v);
    CHECK(total == 2 * g.m());
  }
}

TEST_CASE("union-find and BFS agree on 1000 random graphs") {
  testing::Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    auto g = testing::random_graph(rng, 50);
    REQUIRE(components_union_find(g) == components_bfs(g));
  }
}

TEST_CASE("traffic is conserved and the checker agrees with the engine") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    auto g = testing::random_graph(rng, 40);
    const auto kind = trial % 3;
    RunResult run;
    if (kind == 0) run = run_clique(BoruvkaConnectivity{}, g, ModelParams::clique(g.n()));
    if (kind == 1) run = run_congest(FloodComponents{}, g, ModelParams::congest(g.n()));
    if (kind == 2) {
      const std::size_t p = 1 + rng.below(g.n());
      run = run_mpc(ForestMergeConnectivity{}, distribute_edges(g, p, trial),
                    ModelParams::semi_mpc(g.n(), p, 2 * g.m()));
    }
    std::size_t sent = 0, received = 0;
    for (std::size_t r = 1; r <= run.trace.rounds.size(); ++r)
      for (ParticipantId a = 0; a < run.trace.participants; ++a) {
        sent += run.trace.sent_words(a, r);
        received += run.trace.recv_words(a, r);
      }
    CHECK(sent == received);
    CHECK(sent == run.trace.total_words());
    CHECK(run.trace.rounds.size() == run.rounds);
    CHECK(run.trace.space_high_water.size() == run.rounds + 1);
    CHECK(check_trace(run.trace, run.params, &g) == run.violations);
    CHECK(run.clean());
  }
}

TEST_CASE("checker matches the engine's first violation on aborted runs") {
  testing::Rng rng(4);
  std::size_t aborted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(8);
    std::vector<testing::ScriptedProgram::Item> items;
    const auto count = rng.below(2 * n);
    for (std::size_t i = 0; i < count; ++i)
      items.push_back({static_cast<ParticipantId>(rng.below(n)), static_cast<ParticipantId>(rng.below(n)),
                       1 + rng.below(trial % 2 == 0 ? 2 : 12)});
    testing::ScriptedProgram prog(items);
    auto g = testing::random_connected_graph(rng, n, rng.below(n));
    RunResult run;
    switch (trial % 3) {
      case 0: run = run_clique(prog, g, ModelParams::clique(n)); break;
      case 1: run = run_congest(prog, g, ModelParams::congest(n)); break;
      default: {
        Constants c;
        c.c_total = 1000;
        run = run_mpc(prog, std::vector<std::vector<Word>>(n), ModelParams::mpc(n, 10, 0, 0, 16, c));
      }
    }
    aborted += run.aborted;
    CHECK(run.aborted == !run.violations.empty());
    CHECK(check_trace(run.trace, run.params, &g) == run.violations);
    auto back = run_result_from_json(to_json(run));
    CHECK(back.trace == run.trace);
    CHECK(back.violations == run.violations);
  }
  CHECK(aborted > 50);
}

TEST_CASE("runs are identical across worker counts") {
  testing::Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = testing::random_graph(rng, 80);
    for (unsigned workers : {2u, 5u}) {
      EngineOptions one, many;
      many.workers = workers;
      auto a = run_clique(BoruvkaConnectivity{}, g, ModelParams::clique(g.n()), one);
      auto b = run_clique(BoruvkaConnectivity{}, g, ModelParams::clique(g.n()), many);
      CHECK(to_json(a).dump() == to_json(b).dump());
      auto c = run_congest(FloodComponents{}, g, ModelParams::congest(g.n()), one);
      auto d = run_congest(FloodComponents{}, g, ModelParams::congest(g.n()), many);
      CHECK(to_json(c).dump() == to_json(d).dump());
      AdapterOptions o1, o2;
      o2.engine.workers = workers;
      CHECK(to_json(simulate_congest_on_semimpc(FloodComponents{}, g, std::nullopt, o1)).dump() ==
            to_json(simulate_congest_on_semimpc(FloodComponents{}, g, std::nullopt, o2)).dump());
    }
  }
}

TEST_CASE("node assignment balances degree load") {
  testing::Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(60);
    std::vector<std::size_t> degrees(n);
    for (auto& d : degrees) d = rng.below(n);
    const std::size_t machines = 1 + rng.below(n);
    auto a = compute_node_assignment(degrees, machines);
    const auto total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
    const auto top = *std::max_element(degrees.begin(), degrees.end());
    // Round-robin over a descending order: a machine's load exceeds another's by at most the top degree.
    CHECK(a.max_load() <= (total + machines - 1) / machines + top);
    std::size_t hosted = 0;
    for (std::size_t m = 0; m < machines; ++m) {
      hosted += a.hosted[m].size();
      for (auto v : a.hosted[m]) CHECK(a.host[v] == m);
    }
    CHECK(hosted == n);
  }
}
