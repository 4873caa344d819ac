#include "cli.hpp"

#include "CLI11.hpp"
#include "semimpc/adapters.hpp"
#include "semimpc/algorithms.hpp"
#include "semimpc/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace semimpc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphSource {
  std::string file;
  std::string gen;  // "kind,n=..,p=..,seed=.."
};

Graph load_source(const GraphSource& src) {
  if (!src.file.empty() && !src.gen.empty()) throw UsageError("give either --graph or --gen, not both");
  if (!src.file.empty()) return load_graph_file(src.file);
  if (src.gen.empty()) throw UsageError("a graph is required (--graph FILE or --gen SPEC)");
  GraphSpec spec;
  std::stringstream in(src.gen);
  std::string item;
  bool first = true;
  while (std::getline(in, item, ',')) {
    if (first) {
      spec.kind = parse_graph_kind(item);
      first = false;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad generator field '" + item + "'");
    auto key = item.substr(0, eq);
    auto value = item.substr(eq + 1);
    if (key == "n") spec.n = std::stoull(value);
    else if (key == "p") spec.probability = std::stod(value);
    else if (key == "seed") spec.seed = std::stoull(value);
    else throw UsageError("unknown generator field '" + key + "'");
  }
  return gen_graph(spec);
}

Constants parse_constants(const std::vector<std::string>& overrides) {
  Constants c;
  for (const auto& o : overrides) c.set(o);
  return c;
}

void write_json(const Json& j, const std::string& path, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << text;
}

std::uint64_t digest(const std::vector<std::vector<Word>>& outputs) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  auto mix = [&](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xff;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& row : outputs) {
    mix(row.size());
    for (auto w : row) mix(w);
  }
  return h;
}

void summarize(const RunResult& run, std::string_view label, std::ostream& out) {
  out << label << ": model=" << to_string(run.params.kind) << " participants=" << run.trace.participants
      << " rounds=" << run.rounds << " max_traffic=" << run.trace.max_traffic()
      << " max_space=" << run.trace.max_space() << " violations=" << run.violations.size()
      << " output_digest=" << std::hex << std::setw(16) << std::setfill('0') << digest(run.outputs)
      << std::dec << std::setfill(' ') << "\n";
  for (const auto& v : run.violations) out << "  violation: " << v.describe() << "\n";
}

ModelKind native_model(std::string_view algorithm) {
  if (algorithm == "boruvka") return ModelKind::clique;
  if (algorithm == "flood") return ModelKind::congest;
  if (algorithm == "forest-merge") return ModelKind::semi_mpc;
  throw UsageError("unknown algorithm '" + std::string(algorithm) + "'");
}

std::size_t default_machines(const Graph& g, std::size_t requested) {
  const std::size_t p = requested == 0 ? 4 : requested;
  if (p > std::max<std::size_t>(g.n(), 1)) {
    throw UsageError("semi-MPC needs at most n = " + std::to_string(g.n()) + " machines");
  }
  return p;
}

struct Common {
  GraphSource graph;
  std::vector<std::string> constants;
  std::string out_path;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t machines = 0;
};

int cmd_gen(const GraphSpec& spec, const std::string& path, bool have_p, std::ostream& out) {
  if (have_p && !(spec.probability >= 0.0 && spec.probability <= 1.0)) {
    throw UsageError("probability out of range");
  }
  const auto text = to_edge_list(gen_graph(spec));
  if (path.empty() || path == "-") {
    out << text;
  } else {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    file << text;
  }
  return 0;
}

int cmd_run(const std::string& model_name, const std::string& algorithm, const Common& common,
            std::size_t space, std::ostream& out) {
  const auto model = parse_model_kind(model_name);
  auto prog = make_algorithm(algorithm);
  const auto native = native_model(algorithm);
  const bool ok = model == native || (model == ModelKind::mpc && native == ModelKind::semi_mpc);
  if (!ok) {
    throw UsageError("algorithm '" + algorithm + "' does not run on model '" + model_name + "'");
  }
  const auto g = load_source(common.graph);
  const auto c = parse_constants(common.constants);
  EngineOptions options;
  options.workers = common.workers;

  RunResult run;
  switch (model) {
    case ModelKind::clique: run = run_clique(*prog, g, ModelParams::clique(g.n(), c), options); break;
    case ModelKind::congest: run = run_congest(*prog, g, ModelParams::congest(g.n(), c), options); break;
    case ModelKind::semi_mpc:
    case ModelKind::mpc: {
      const auto p = default_machines(g, common.machines);
      auto inputs = distribute_edges(g, p, common.seed);
      ModelParams params = ModelParams::semi_mpc(g.n(), p, 2 * g.m(), c);
      if (model == ModelKind::mpc) {
        if (space == 0) throw UsageError("--space is required for the mpc model");
        auto delta = min_replication_exponent(p, space, g.n(), 2 * g.m(), c);
        params = ModelParams::mpc(p, space, 2 * g.m(), delta.value_or(0.0), default_word_width(g.n()), c);
        params.n = g.n();
      }
      run = run_mpc(*prog, inputs, params, options);
      break;
    }
  }
  auto j = to_json(run);
  j["algorithm"] = algorithm;
  write_json(j, common.out_path, out);
  summarize(run, algorithm, common.out_path.empty() || common.out_path == "-" ? std::cerr : out);
  return run.clean() ? 0 : 1;
}

int cmd_simulate(const std::string& from_name, const std::string& to_name, const std::string& algorithm,
                 std::optional<std::size_t> rounds, const Common& common, std::ostream& out) {
  const auto from = parse_model_kind(from_name);
  const auto to = parse_model_kind(to_name);
  const bool supported = (from == ModelKind::clique && to == ModelKind::semi_mpc) ||
                         (from == ModelKind::semi_mpc && to == ModelKind::clique) ||
                         (from == ModelKind::congest && to == ModelKind::semi_mpc);
  if (!supported) throw UsageError("unsupported pair " + from_name + " -> " + to_name);
  auto prog = make_algorithm(algorithm);
  if (native_model(algorithm) != from) {
    throw UsageError("algorithm '" + algorithm + "' is not a " + from_name + " program");
  }
  const auto g = load_source(common.graph);
  AdapterOptions options;
  options.constants = parse_constants(common.constants);
  options.engine.workers = common.workers;
  options.seed = common.seed;

  SimulationReport report;
  if (from == ModelKind::clique) {
    report = simulate_cc_on_semimpc(*prog, g, options);
  } else if (from == ModelKind::congest) {
    report = simulate_congest_on_semimpc(*prog, g, rounds, options);
  } else {
    const auto p = default_machines(g, common.machines);
    report = simulate_semimpc_on_cc(*prog, distribute_edges(g, p, common.seed), g.n(), options);
  }
  write_json(to_json(report), common.out_path, out);

  auto& summary = common.out_path.empty() || common.out_path == "-" ? std::cerr : out;
  summarize(report.native, "native", summary);
  if (report.simulated) summarize(*report.simulated, "simulated", summary);
  for (const auto& [name, value] : report.measured_constants) summary << "  " << name << " = " << value << "\n";
  for (const auto& [name, value] : report.flags) summary << "  flag " << name << " = " << value << "\n";
  if (report.passed()) {
    summary << "all bounds hold\n";
    return 0;
  }
  for (const auto& f : report.failures()) summary << "FAILED: " << f << "\n";
  return 1;
}

int cmd_route(const std::string& demand_path, const Common& common, std::ostream& out) {
  std::ifstream in(demand_path, std::ios::binary);
  if (!in) throw UsageError("cannot open demand file '" + demand_path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed demand JSON: ") + e.what());
  }
  const auto demand = demand_from_json(j);
  const auto c = parse_constants(common.constants);
  const auto schedule = plan_routing(demand, c);

  // Word (src, dst, seq) carries a value derived from its key, masked to the word width.
  const unsigned width = default_word_width(demand.n());
  const Word mask = width >= 64 ? ~Word{0} : (Word{1} << width) - 1;
  std::vector<Word> payloads;
  for (const auto& w : schedule.assignment) payloads.push_back((w.src * 31 + w.dst * 7 + w.seq) & mask);

  EngineOptions options;
  options.workers = common.workers;
  auto record = execute_schedule(schedule, payloads, options);
  bool exact = true;
  for (std::size_t i = 0; i < schedule.assignment.size(); ++i) {
    const auto& w = schedule.assignment[i];
    const auto& got = record.delivered[w.dst];
    auto it = std::find(got.begin(), got.end(), RoutedWord{w.src, w.seq, payloads[i]});
    if (it == got.end()) exact = false;
  }
  auto result = to_json(record.run);
  result["routing"] = to_json(schedule);
  result["delivery_exact"] = exact;
  write_json(result, common.out_path, out);
  auto& summary = common.out_path.empty() || common.out_path == "-" ? std::cerr : out;
  summary << "route: n=" << demand.n() << " words=" << demand.total() << " colors=" << schedule.colors
          << " rounds=" << schedule.rounds() << " delivery_exact=" << (exact ? "yes" : "no") << "\n";
  return record.run.clean() && exact ? 0 : 1;
}

int verify_run(const Json& j, const Graph* graph, std::string_view label, std::ostream& out) {
  const auto run = run_result_from_json(j);
  const auto found = check_trace(run.trace, run.params, graph);
  out << label << ": " << to_string(run.params.kind) << " rounds=" << run.rounds
      << " violations=" << found.size() << "\n";
  for (const auto& v : found) out << "  violation: " << v.describe() << "\n";
  return found.empty() ? 0 : 1;
}

int cmd_verify(const std::string& path, const std::string& graph_path, std::ostream& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open trace '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed trace JSON: ") + e.what());
  }
  std::optional<Graph> graph;
  if (!graph_path.empty()) graph = load_graph_file(graph_path);
  const Graph* g = graph ? &*graph : nullptr;
  try {
    if (j.contains("native")) {
      int code = verify_run(j.at("native"), g, "native", out);
      if (j.at("simulated").is_object()) code = std::max(code, verify_run(j.at("simulated"), g, "simulated", out));
      return code;
    }
    return verify_run(j, g, "trace", out);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed trace: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("malformed trace: ") + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Round-based simulator for CONGEST, congested clique, MPC and semi-MPC"};
  app.require_subcommand(1);

  auto add_common = [](CLI::App* sub, Common& common, bool graph) {
    if (graph) {
      sub->add_option("--graph", common.graph.file, "edge-list file");
      sub->add_option("--gen", common.graph.gen, "generator spec, e.g. gnp,n=64,p=0.05,seed=7");
      sub->add_option("--machines", common.machines, "semi-MPC machine count (default 4)");
    }
    sub->add_option("--constants", common.constants, "key=value overrides")->take_all();
    sub->add_option("--out", common.out_path, "output path (default stdout)");
    sub->add_option("--seed", common.seed, "seed for the initial edge placement");
    sub->add_option("--workers", common.workers, "threads per round")->check(CLI::PositiveNumber);
  };

  GraphSpec spec;
  std::string kind_name, gen_out;
  auto* gen = app.add_subcommand("gen", "generate a graph in edge-list format");
  gen->add_option("--kind", kind_name, "path|cycle|complete|gnp|star")->required();
  gen->add_option("--n", spec.n, "vertex count")->capture_default_str();
  auto* p_opt = gen->add_option("--p", spec.probability, "edge probability (gnp)");
  gen->add_option("--seed", spec.seed, "generator seed");
  gen->add_option("--out", gen_out, "output path (default stdout)");

  Common run_common;
  std::string model_name, algorithm;
  std::size_t space = 0;
  auto* run_cmd = app.add_subcommand("run", "run an algorithm natively");
  run_cmd->add_option("--model", model_name, "clique|congest|semimpc|mpc")->required();
  run_cmd->add_option("--algorithm", algorithm, "boruvka|flood|forest-merge")->required();
  run_cmd->add_option("--space", space, "space per machine (mpc model)");
  add_common(run_cmd, run_common, true);

  Common sim_common;
  std::string from_name, to_name, sim_algorithm;
  std::optional<std::size_t> sim_rounds;
  auto* sim = app.add_subcommand("simulate", "run an algorithm through a simulation adapter");
  sim->add_option("--from", from_name, "source model")->required();
  sim->add_option("--to", to_name, "target model")->required();
  sim->add_option("--algorithm", sim_algorithm, "boruvka|flood|forest-merge")->required();
  sim->add_option("--rounds", sim_rounds, "CONGEST round budget T (default: native)");
  add_common(sim, sim_common, true);

  Common route_common;
  std::string demand_path;
  auto* route = app.add_subcommand("route", "plan and replay a routing episode");
  route->add_option("--demand", demand_path, "dense JSON demand matrix")->required();
  add_common(route, route_common, false);

  std::string trace_path, verify_graph;
  auto* verify = app.add_subcommand("verify", "re-check a RunResult or SimulationReport");
  verify->add_option("trace", trace_path, "JSON file")->required();
  verify->add_option("--graph", verify_graph, "edge-list file for the CONGEST edge check");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("semimpc");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*gen) {
      spec.kind = parse_graph_kind(kind_name);
      return cmd_gen(spec, gen_out, p_opt->count() > 0, out);
    }
    if (*run_cmd) return cmd_run(model_name, algorithm, run_common, space, out);
    if (*sim) return cmd_simulate(from_name, to_name, sim_algorithm, sim_rounds, sim_common, out);
    if (*route) return cmd_route(demand_path, route_common, out);
    if (*verify) return cmd_verify(trace_path, verify_graph, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace semimpc::cli
