#include "semimpc/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace semimpc {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::congest: return "congest";
    case ModelKind::clique: return "clique";
    case ModelKind::mpc: return "mpc";
    case ModelKind::semi_mpc: return "semimpc";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "congest") return ModelKind::congest;
  if (name == "clique") return ModelKind::clique;
  if (name == "mpc") return ModelKind::mpc;
  if (name == "semimpc") return ModelKind::semi_mpc;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

void Constants::set(std::string_view assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw std::invalid_argument("constant override must be key=value: '" +
                                std::string(assignment) + "'");
  }
  auto key = assignment.substr(0, eq);
  auto text = std::string(assignment.substr(eq + 1));
  double value = 0;
  try {
    std::size_t used = 0;
    value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad value for constant '" + std::string(key) + "'");
  }
  if (!(value >= 0) || !std::isfinite(value)) {
    throw std::invalid_argument("constant '" + std::string(key) + "' must be non-negative");
  }
  if (key == "c_space") c_space = value;
  else if (key == "c_traffic") c_traffic = value;
  else if (key == "c_total") c_total = value;
  else if (key == "polylog") polylog_exponent = value;
  else if (key == "c_M") c_machines = value;
  else if (key == "c_load") c_load = value;
  else if (key == "surcharge") {
    if (value != std::floor(value)) throw std::invalid_argument("surcharge must be an integer");
    surcharge = static_cast<std::size_t>(value);
  } else {
    throw std::invalid_argument("unknown constant '" + std::string(key) + "'");
  }
}

ModelParams ModelParams::clique(std::size_t n, const Constants& c) {
  ModelParams p;
  p.kind = ModelKind::clique;
  p.n = n;
  p.p = n;
  p.word_width = default_word_width(n);
  p.constants = c;
  return p;
}

ModelParams ModelParams::congest(std::size_t n, const Constants& c) {
  auto p = clique(n, c);
  p.kind = ModelKind::congest;
  return p;
}

ModelParams ModelParams::semi_mpc(std::size_t n, std::size_t machines, std::size_t input_size,
                                  const Constants& c) {
  ModelParams p;
  p.kind = ModelKind::semi_mpc;
  p.n = n;
  p.p = machines;
  p.s = static_cast<std::size_t>(std::floor(c.c_space * static_cast<double>(n)));
  p.input_size = input_size;
  p.word_width = default_word_width(n);
  p.constants = c;
  // An infeasible p*s keeps delta at 0 and surfaces as a total_space violation.
  p.delta = min_replication_exponent(machines, p.s, n, input_size, c).value_or(0.0);
  return p;
}

ModelParams ModelParams::mpc(std::size_t machines, std::size_t s, std::size_t input_size,
                             double delta, unsigned word_width, const Constants& c) {
  ModelParams p;
  p.kind = ModelKind::mpc;
  p.p = machines;
  p.s = s;
  p.delta = delta;
  p.input_size = input_size;
  p.word_width = word_width;
  p.constants = c;
  return p;
}

namespace {

double allowance(double ell, double delta, const Constants& c) {
  return c.c_total * std::pow(ell, 1.0 + delta) *
         std::pow(std::log2(ell + 1.0), c.polylog_exponent);
}

}  // namespace

double effective_input_size(const ModelParams& params) {
  return static_cast<double>(std::max<std::size_t>({params.input_size, params.n, 1}));
}

double total_space_allowance(const ModelParams& params) {
  return allowance(effective_input_size(params), params.delta, params.constants);
}

std::optional<double> min_replication_exponent(std::size_t p, std::size_t s, std::size_t n,
                                               std::size_t input_size, const Constants& c) {
  const double need = static_cast<double>(p) * static_cast<double>(s);
  const double ell = static_cast<double>(std::max<std::size_t>({input_size, n, 1}));
  if (need <= allowance(ell, 0.0, c)) return 0.0;
  if (ell <= 1.0 || c.c_total <= 0) return std::nullopt;
  const double polylog = std::pow(std::log2(ell + 1.0), c.polylog_exponent);
  double delta = std::log(need / (c.c_total * polylog)) / std::log(ell) - 1.0;
  // Nudge past floating-point rounding so the returned delta passes the check.
  for (int i = 0; i < 64 && need > allowance(ell, delta, c); ++i) {
    delta += 1e-12 * (1 << std::min(i, 30));
  }
  if (delta >= 1.0 || need > allowance(ell, delta, c)) return std::nullopt;
  return delta;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::machines_exceed_space: return "machines_exceed_space";
    case ViolationKind::total_space: return "total_space";
    case ViolationKind::input_exceeds_space: return "input_exceeds_space";
    case ViolationKind::pair_capacity: return "pair_capacity";
    case ViolationKind::non_edge: return "non_edge";
    case ViolationKind::send_traffic: return "send_traffic";
    case ViolationKind::recv_traffic: return "recv_traffic";
    case ViolationKind::space: return "space";
  }
  return "?";
}

ViolationKind parse_violation_kind(std::string_view name) {
  for (auto kind : {ViolationKind::machines_exceed_space, ViolationKind::total_space,
                    ViolationKind::input_exceeds_space, ViolationKind::pair_capacity,
                    ViolationKind::non_edge, ViolationKind::send_traffic,
                    ViolationKind::recv_traffic, ViolationKind::space}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown violation kind '" + std::string(name) + "'");
}

std::string Violation::describe() const {
  std::ostringstream out;
  out << to_string(kind) << " at round " << round;
  if (src && dst) out << " (" << *src << " -> " << *dst << ")";
  else if (src) out << " (participant " << *src << ")";
  out << ": " << measured << " > " << allowed << " (ratio " << ratio() << ")";
  return out.str();
}

bool violation_less(const Violation& a, const Violation& b) {
  auto key = [](const Violation& v) {
    return std::tuple(v.round, static_cast<int>(v.kind), v.src.value_or(0), v.dst.value_or(0));
  };
  return key(a) < key(b);
}

}  // namespace semimpc
