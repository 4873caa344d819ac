#include "doctest.h"
#include "support.hpp"

#include "semimpc/trace.hpp"

#include <cmath>

using namespace semimpc;

TEST_CASE("load_graph parses headers and edges") {
  auto g = load_graph("3 2\n0 1\n1 2");
  CHECK(g.n() == 3);
  CHECK(g.m() == 2);
  CHECK(g.neighbors(1) == std::vector<VertexId>{0, 2});

  auto empty = load_graph("4 0\n");
  CHECK(empty.n() == 4);
  CHECK(empty.m() == 0);

  CHECK(load_graph("2 1\n1 0\n\n\n").edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("load_graph reports the offending line") {
  auto line_of = [](std::string_view text) {
    try {
      load_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK_THROWS_WITH_AS(load_graph("2 1\n0 5"), doctest::Contains("endpoint out of range"), ParseError);
  CHECK(line_of("2 1\n0 5") == 2);
  CHECK(line_of("3 2\n0 1") == 3);
  CHECK(line_of("3 1\n0 1\n1 2") == 3);
  CHECK(line_of("3 2\n0 1\n1 0") == 3);
  CHECK(line_of("3 1\n1 1") == 2);
  CHECK(line_of("3 1\n0 x") == 2);
  CHECK(line_of("") == 1);
  CHECK(line_of("3") == 1);
}

TEST_CASE("Graph constructor rejects bad input") {
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(2, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("edge list round-trips") {
  auto g = gen_graph({GraphKind::gnp, 40, 0.1, 9});
  CHECK(load_graph(to_edge_list(g)) == g);
}

TEST_CASE("generators") {
  CHECK(gen_graph({GraphKind::complete, 4}).m() == 6);
  CHECK(gen_graph({GraphKind::path, 5}).edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(gen_graph({GraphKind::cycle, 8}).m() == 8);
  CHECK(gen_graph({GraphKind::star, 8}).degree(0) == 7);
  CHECK(gen_graph({GraphKind::gnp, 64, 0.05, 7}) == gen_graph({GraphKind::gnp, 64, 0.05, 7}));
  CHECK(gen_graph({GraphKind::gnp, 64, 0.05, 7}) != gen_graph({GraphKind::gnp, 64, 0.05, 8}));
  CHECK_THROWS_WITH(gen_graph({GraphKind::gnp, 8, 1.5, 0}), "probability out of range");
  CHECK_THROWS(gen_graph({GraphKind::cycle, 2}));
  CHECK_THROWS(parse_graph_kind("grid"));
}

TEST_CASE("component oracles") {
  CHECK(components_oracle(gen_graph({GraphKind::path, 3})) == Labels{0, 0, 0});
  CHECK(components_oracle(Graph(4, {{0, 1}, {2, 3}})) == Labels{0, 0, 2, 2});
  auto g = gen_graph({GraphKind::gnp, 64, 0.02, 3});
  CHECK(components_union_find(g) == components_bfs(g));
  CHECK(components_oracle(Graph(3, {})) == Labels{0, 1, 2});
}

TEST_CASE("word width") {
  CHECK(default_word_width(1) == 2);
  CHECK(default_word_width(2) == 3);
  CHECK(default_word_width(16) == 6);
  CHECK(default_word_width(17) == 7);
}

TEST_CASE("constants parse overrides") {
  Constants c;
  c.set("c_space=8");
  c.set("surcharge=3");
  c.set("c_M=1.5");
  CHECK(c.c_space == 8);
  CHECK(c.surcharge == 3);
  CHECK(c.c_machines == 1.5);
  CHECK_THROWS(c.set("bogus=1"));
  CHECK_THROWS(c.set("c_space"));
  CHECK_THROWS(c.set("c_space=abc"));
}

TEST_CASE("model parameters") {
  auto cc = ModelParams::clique(16);
  CHECK(cc.p == 16);
  CHECK(cc.word_width == 6);
  auto semi = ModelParams::semi_mpc(32, 4, 100);
  CHECK(semi.s == 128);
  CHECK(semi.p * semi.s <= total_space_allowance(semi) * (1 + 1e-9));
  CHECK(parse_model_kind("semimpc") == ModelKind::semi_mpc);
  CHECK(to_string(ModelKind::congest) == "congest");
  CHECK_THROWS(parse_model_kind("pram"));

  // Minimal delta is tight: a slightly smaller exponent no longer fits.
  auto delta = min_replication_exponent(32, 128, 32, 64, Constants{});
  REQUIRE(delta.has_value());
  CHECK(*delta > 0);
  auto tighter = semi;
  tighter.p = 32;
  tighter.input_size = 64;
  tighter.delta = *delta - 1e-3;
  CHECK(tighter.p * tighter.s > total_space_allowance(tighter));
  tighter.delta = *delta;
  CHECK(tighter.p * tighter.s <= total_space_allowance(tighter) * (1 + 1e-9));
}

TEST_CASE("violation ordering and ratio") {
  Violation a{ViolationKind::pair_capacity, 2, 1, 2, 2, 1};
  Violation b{ViolationKind::non_edge, 2, 0, 2, 1, 0};
  Violation c{ViolationKind::space, 1, 0, std::nullopt, 9, 8};
  std::vector<Violation> v{a, b, c};
  std::sort(v.begin(), v.end(), violation_less);
  CHECK(v[0] == c);
  CHECK(v[1] == a);
  CHECK(v[2] == b);
  CHECK(c.ratio() == doctest::Approx(9.0 / 8.0));
  CHECK(parse_violation_kind("recv_traffic") == ViolationKind::recv_traffic);
  CHECK(a.describe().find("round 2") != std::string::npos);
}

namespace {

RoundTrace clique_trace(std::size_t n, std::size_t rounds) {
  RoundTrace t;
  t.participants = n;
  t.input_words.assign(n, 1);
  t.rounds.resize(rounds);
  t.space_high_water.assign(rounds + 1, std::vector<std::size_t>(n, 1));
  return t;
}

}  // namespace

TEST_CASE("check_trace on clique traces") {
  auto params = ModelParams::clique(3);
  auto t = clique_trace(3, 3);
  t.rounds[0].transfers = {{0, 1, 1}, {1, 2, 1}};
  t.rounds[2].transfers = {{2, 0, 1}};
  CHECK(check_trace(t, params).empty());

  t.rounds[2].transfers.push_back({2, 0, 1});
  auto found = check_trace(t, params);
  REQUIRE(found.size() == 1);
  CHECK(found[0].kind == ViolationKind::pair_capacity);
  CHECK(found[0].round == 3);
  CHECK(found[0].src == 2u);
  CHECK(found[0].dst == 0u);
  CHECK(found[0].measured == 2);
}

TEST_CASE("check_trace flags CONGEST non-edges only with a graph") {
  auto g = gen_graph({GraphKind::path, 3});
  auto t = clique_trace(3, 1);
  t.rounds[0].transfers = {{0, 2, 1}};
  auto params = ModelParams::congest(3);
  CHECK(check_trace(t, params).empty());
  auto found = check_trace(t, params, &g);
  REQUIRE(found.size() == 1);
  CHECK(found[0].kind == ViolationKind::non_edge);
}

TEST_CASE("check_trace semi-MPC space boundary") {
  const std::size_t n = 8;
  auto params = ModelParams::semi_mpc(n, 2, 8);
  const std::size_t s = params.s;
  REQUIRE(s == 4 * n);
  RoundTrace t;
  t.participants = 2;
  t.input_words = {4, 4};
  t.rounds.resize(1);
  t.space_high_water = {{s, 4}, {4, 4}};
  CHECK(check_trace(t, params).empty());
  t.space_high_water[1][1] = s + 1;
  auto found = check_trace(t, params);
  REQUIRE(found.size() == 1);
  CHECK(found[0].kind == ViolationKind::space);
  CHECK(found[0].round == 2);
  CHECK(found[0].src == 1u);
}

TEST_CASE("check_trace MPC start-of-run checks") {
  auto params = ModelParams::mpc(4, 3, 8, 0, 16);
  RoundTrace t;
  t.participants = 4;
  t.input_words = {5, 1, 1, 1};
  t.space_high_water = {{5, 1, 1, 1}};
  auto found = check_trace(t, params);
  std::vector<ViolationKind> kinds;
  for (const auto& v : found) kinds.push_back(v.kind);
  CHECK(std::find(kinds.begin(), kinds.end(), ViolationKind::machines_exceed_space) != kinds.end());
  CHECK(std::find(kinds.begin(), kinds.end(), ViolationKind::input_exceeds_space) != kinds.end());
}

TEST_CASE("rng is portable and bounded") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.below(10) == b.below(10));
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::mt19937_64 reference(5489);
  Rng d(5489);
  CHECK(d.uniform() == static_cast<double>(reference() >> 11) * 0x1.0p-53);
}
