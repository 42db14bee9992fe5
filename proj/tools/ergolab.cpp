// ergolab: deterministic experiment runner for the ladder and block examples.
//
// Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ergolab/acceptance.hpp"
#include "ergolab/ergolab.hpp"

namespace {

using namespace ergolab;
using ladder::LadderVertex;

enum Exit { kPass = 0, kAssertion = 1, kUsage = 2, kBudget = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cell is plain text, an integer, a boolean, an exact rational (rendered as
// fraction plus derived decimal) or a float.
using Cell = std::variant<std::string, std::uint64_t, bool, Rational, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void write_csv(const Table& t, std::ostream& os) {
  std::vector<std::string> header;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    const bool exact = !t.rows.empty() && std::holds_alternative<Rational>(t.rows.front()[i]);
    if (exact) {
      header.push_back(t.columns[i] + "_exact");
      header.push_back(t.columns[i] + "_decimal");
    } else {
      header.push_back(t.columns[i]);
    }
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
              os << v.to_fraction() << ',' << v.to_decimal();
            } else if constexpr (std::is_same_v<T, bool>) {
              os << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, double>) {
              os << format_double(v);
            } else {
              os << v;
            }
          },
          row[i]);
    }
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Rational>) {
              obj[t.columns[i]] = {{"exact", v.to_fraction()}, {"decimal", v.to_decimal()}};
            } else {
              obj[t.columns[i]] = v;
            }
          },
          row[i]);
    }
    out.push_back(std::move(obj));
  }
  os << out.dump(2) << '\n';
}

struct Output {
  std::string format = "csv";
  std::string path;

  void emit(const Table& t) const {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw UsageError("cannot open output file " + path);
      os = &file;
    }
    if (format == "json") {
      write_json(t, *os);
    } else {
      write_csv(t, *os);
    }
  }
};

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || item.front() == '-') {
      throw UsageError(std::string("bad ") + what + " entry '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + " must not be empty");
  return out;
}

// Integers print bare, other values as p/q.
std::string compact(const Rational& r) {
  return r.denominator() == 1 ? r.numerator().get_str() : r.to_fraction();
}

void require_positive(std::uint64_t v, const char* what) {
  if (v == 0) throw UsageError(std::string(what) + " must be positive");
}

ladder::LadderFamilyGraph make_graph(const std::string& kind, std::uint64_t k) {
  if (kind == "g0") return ladder::make_g0();
  if (kind == "gk") {
    require_positive(k, "--k for gk");
    return ladder::make_gk(k);
  }
  if (kind == "combined") return ladder::make_counterexample();
  throw UsageError("unknown graph kind '" + kind + "' (expected g0, gk or combined)");
}

LadderVertex parse_start(const ladder::LadderFamilyGraph& g, const std::string& text) {
  LadderVertex v;
  if (text == "e_s") {
    v = g.is_combined() ? LadderVertex::source() : g.origin();
  } else if (text == "e_o") {
    v = g.is_combined() ? LadderVertex::entry(0) : g.origin();
  } else if (text == "e_v") {
    v = LadderVertex::sink(g.k);
  } else {
    try {
      v = ladder::parse_vertex(text);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (!g.contains(v)) throw UsageError("vertex " + ladder::render(v) + " is not in " + g.graph.description());
  return v;
}

struct GraphArgs {
  std::string kind = "combined";
  std::uint64_t k = 0;
};

void add_graph_options(CLI::App* cmd, GraphArgs& a) {
  cmd->add_option("--graph", a.kind, "g0, gk or combined");
  cmd->add_option("--k", a.k, "copy index for gk");
}

// ---------------------------------------------------------------- norms

struct NormsArgs {
  GraphArgs graph;
  std::uint64_t n_max = 1;
  std::uint64_t trunc = 1000;
  std::optional<std::string> bound;
};

int cmd_norms(const NormsArgs& a, const Output& out) {
  require_positive(a.n_max, "--n-max");
  require_positive(a.trunc, "--trunc");
  std::optional<Rational> bound;
  if (a.bound) {
    try {
      bound = Rational::parse(*a.bound);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  auto g = make_graph(a.graph.kind, a.graph.k);
  auto profile = power_norm_profile(g.graph, a.n_max, a.trunc);
  Table t{{"n", "N", "norm"}, {}};
  bool ok = true;
  for (std::uint64_t n = 1; n <= a.n_max; ++n) {
    const Rational& v = profile[n - 1];
    if (bound && v > *bound) ok = false;
    t.rows.push_back({n, a.trunc, v});
  }
  out.emit(t);
  if (!ok) std::cerr << "norm exceeds bound " << bound->to_fraction() << '\n';
  return ok ? kPass : kAssertion;
}

// ---------------------------------------------------------------- orbit

struct OrbitArgs {
  GraphArgs graph;
  std::uint64_t n_max = 64;
  std::optional<std::uint64_t> k_max;
  bool ones_only = false;
};

int cmd_orbit(const OrbitArgs& a, const Output& out) {
  require_positive(a.n_max, "--n-max");
  auto g = make_graph(a.graph.kind, a.graph.k);
  std::vector<std::uint64_t> copies;
  if (g.is_combined()) {
    for (std::uint64_t k = 0; k <= a.k_max.value_or(4); ++k) copies.push_back(k);
  } else {
    if (a.k_max) throw UsageError("--k-max applies to the combined graph only");
    copies.push_back(g.k);
  }
  Table t{{"n", "k", "simulated", "predicate", "match"}, {}};
  bool ok = true;
  power_sweep(g.graph, SparseVector<LadderVertex>::unit(g.origin()), a.n_max,
              [&](std::uint64_t n, const SparseVector<LadderVertex>& x) {
                for (std::uint64_t k : copies) {
                  const Rational sim = x.at(LadderVertex::sink(k));
                  const int pred = ladder::orbit_predicate(g.kind, k, n);
                  const bool match = sim == Rational(pred);
                  ok = ok && match;
                  if (a.ones_only && sim.is_zero() && pred == 0) continue;
                  t.rows.push_back({n, k, compact(sim), static_cast<std::uint64_t>(pred), match});
                }
              });
  out.emit(t);
  return ok ? kPass : kAssertion;
}

// ---------------------------------------------------------------- cesaro

struct CesaroArgs {
  GraphArgs graph;
  std::string x = "e_s";
  std::string powers = "1";
  std::string schedule = "128,256,512,1024";
  std::string lambda = "1";
  std::string engine = "auto";
  std::optional<std::string> threshold;
  Budget budget{};
};

std::complex<double> parse_lambda(const std::string& s) {
  if (s == "1") return {1.0, 0.0};
  if (s == "-1") return {-1.0, 0.0};
  if (s == "i") return {0.0, 1.0};
  if (s == "-i") return {0.0, -1.0};
  if (s.rfind("exp:", 0) == 0) {
    try {
      return std::polar(1.0, std::stod(s.substr(4)));
    } catch (const std::exception&) {
    }
  }
  throw UsageError("bad --lambda '" + s + "' (expected 1, -1, i, -i or exp:<radians>)");
}

Engine parse_engine(const std::string& s) {
  if (s == "auto") return Engine::automatic;
  if (s == "generic") return Engine::generic;
  if (s == "structured") return Engine::structured;
  throw UsageError("bad --engine '" + s + "'");
}

int cmd_cesaro(const CesaroArgs& a, const Output& out, unsigned threads) {
  auto g = make_graph(a.graph.kind, a.graph.k);
  const auto start = parse_start(g, a.x);
  const auto powers = parse_list(a.powers, "--powers");
  const auto schedule = parse_list(a.schedule, "--schedule");
  for (auto p : powers) require_positive(p, "--powers entries");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    require_positive(schedule[i], "--schedule entries");
    if (i && schedule[i] <= schedule[i - 1]) throw UsageError("--schedule must be strictly increasing");
  }
  const auto lambda = parse_lambda(a.lambda);
  const Engine engine = parse_engine(a.engine);
  std::optional<Rational> threshold;
  if (a.threshold) {
    try {
      threshold = Rational::parse(*a.threshold);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  auto op = ladder_operator(g, threads);
  const auto x = SparseVector<LadderVertex>::unit(start);
  const bool exact = lambda.imag() == 0.0;
  Table t{{"power", "lambda", "n", "sup_norm", "support", "engine"}, {}};
  bool ok = true;
  for (auto m : powers) {
    if (exact) {
      CesaroOptions opt;
      opt.stride = m;
      opt.sign = lambda.real() > 0 ? 1 : -1;
      opt.engine = engine;
      opt.budget = a.budget;
      auto trace = cesaro_trace(op, x, schedule, opt);
      for (const auto& r : trace.records) t.rows.push_back({m, a.lambda, r.n, r.sup_norm, r.support, trace.engine});
      if (threshold && trace.records.back().sup_norm > *threshold) ok = false;
    } else {
      auto pw = power_operator(op, m);
      for (auto n : schedule) {
        auto r = scalar_rotation_check(pw, x, lambda, n, threshold.value_or(Rational(1)), engine, a.budget);
        t.rows.push_back({m, a.lambda, n, r.value, std::string("n/a"), r.engine});
        if (threshold && n == schedule.back() && !r.passed) ok = false;
      }
    }
  }
  out.emit(t);
  return ok ? kPass : kAssertion;
}

// ---------------------------------------------------------------- block

struct BlockArgs {
  std::string what = "deviation";
  bool sweep_diag = false;
  std::uint64_t M = 1000;
  std::string n = "10,100,1000";
  std::uint64_t p = 1;
  std::uint64_t j = 1;
};

int cmd_block(const BlockArgs& a, const Output& out, unsigned threads) {
  const auto ns = parse_list(a.n, "--n");
  for (auto n : ns) require_positive(n, "--n entries");
  require_positive(a.M, "--M");
  require_positive(a.p, "--p");
  require_positive(a.j, "--j");
  Table t{{"quantity", "m", "n", "p", "value", "bound", "pass"}, {}};
  bool ok = true;
  auto row = [&](const std::string& q, std::uint64_t m, std::uint64_t n, std::uint64_t p, const Rational& v,
                 const std::optional<Rational>& bound, bool upper) {
    const bool pass = !bound || (upper ? v <= *bound : v >= *bound);
    ok = ok && pass;
    t.rows.push_back({q, m, n, p, v, bound ? (upper ? "<=" : ">=") + bound->to_fraction() : std::string("-"), pass});
  };
  // Lower bounds on b(n,n,j) used by the non-ergodicity witness.
  auto witness_bound = [&]() -> std::optional<Rational> {
    if (a.j == 1) return Rational(2, 5);
    if (a.j == 2) return Rational(1, 5);
    return std::nullopt;
  };
  if (a.sweep_diag) {
    for (auto n : ns) row("b_coeff", n, n, 2 * a.j, blockdiag::b_coeff(n, n, a.j), witness_bound(), false);
  } else if (a.what == "deviation") {
    for (auto n : ns) {
      auto d = blockdiag::sup_deviation(a.M, n, a.p, threads);
      std::optional<Rational> bound;
      if (a.p % 2 == 1) bound = Rational(2, n);
      row("sup_deviation", d.block, n, a.p, d.value, bound, true);
    }
  } else if (a.what == "witness") {
    for (auto n : ns) {
      auto coeffs = blockdiag::witness_apply(a.M, n, a.j, threads);
      for (std::uint64_t m = 1; m <= coeffs.size(); ++m) row("witness", m, n, 2 * a.j, coeffs[m - 1], {}, true);
    }
  } else {
    throw UsageError("bad --what '" + a.what + "' (expected deviation or witness)");
  }
  out.emit(t);
  return ok ? kPass : kAssertion;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& only, const Output& out, unsigned threads) {
  std::vector<std::uint64_t> ids;
  if (!only.empty()) ids = parse_list(only, "--only");
  Table t{{"criterion", "name", "status", "seconds", "detail"}, {}};
  bool failed = false, budget = false;
  for (const auto& c : acceptance::criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), static_cast<std::uint64_t>(c.id)) == ids.end()) continue;
    auto r = acceptance::run_criterion(c, threads);
    std::cerr << r.line() << '\n';
    failed = failed || (!r.passed && !r.budget_exceeded);
    budget = budget || r.budget_exceeded;
    t.rows.push_back({static_cast<std::uint64_t>(r.id), r.name,
                      std::string(r.budget_exceeded ? "budget" : r.passed ? "pass" : "fail"), r.seconds, r.detail});
  }
  if (out.format == "json" || !out.path.empty()) out.emit(t);
  return failed ? kAssertion : budget ? kBudget : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergolab: exact experiments on the ladder c0-graphs and the block-diagonal example"};
  app.require_subcommand(1);
  Output out;
  app.add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out.path, "write the report to a file instead of stdout");
  app.fallthrough();

  NormsArgs norms;
  auto* c_norms = app.add_subcommand("norms", "truncated power norms ||T^n 1_{E_N}||");
  add_graph_options(c_norms, norms.graph);
  c_norms->add_option("--n-max", norms.n_max, "largest power");
  c_norms->add_option("--trunc", norms.trunc, "truncation N");
  c_norms->add_option("--bound", norms.bound, "fail if any norm exceeds this rational");

  OrbitArgs orbit;
  auto* c_orbit = app.add_subcommand("orbit", "orbit of the origin at the sinks versus the closed form");
  add_graph_options(c_orbit, orbit.graph);
  c_orbit->add_option("--n-max", orbit.n_max, "largest step");
  c_orbit->add_option("--k-max", orbit.k_max, "largest copy (combined graph)");
  c_orbit->add_flag("--ones-only", orbit.ones_only, "only rows where either value is 1");

  CesaroArgs ces;
  auto* c_ces = app.add_subcommand("cesaro", "Cesaro means of powers and rotations");
  add_graph_options(c_ces, ces.graph);
  c_ces->add_option("--x", ces.x, "start vector: e_s, e_o, e_v or a vertex such as T(0,3)");
  c_ces->add_option("--powers", ces.powers, "comma list of m (average T^m)");
  c_ces->add_option("--schedule", ces.schedule, "strictly increasing comma list of n");
  c_ces->add_option("--lambda", ces.lambda, "1, -1, i, -i or exp:<radians>");
  c_ces->add_option("--engine", ces.engine, "auto, generic or structured");
  c_ces->add_option("--threshold", ces.threshold, "fail if the last scheduled norm exceeds this");
  c_ces->add_option("--max-support", ces.budget.max_support, "generic engine support cap");
  c_ces->add_option("--max-steps", ces.budget.max_steps, "generic engine step cap");

  BlockArgs block;
  auto* c_block = app.add_subcommand("block", "block-diagonal example");
  c_block->add_option("--what", block.what, "deviation or witness");
  c_block->add_flag("--sweep-diag", block.sweep_diag, "b(n,n,j) for each n");
  c_block->add_option("--M", block.M, "block truncation");
  c_block->add_option("--n", block.n, "comma list of n");
  c_block->add_option("--p", block.p, "power for deviation");
  c_block->add_option("--j", block.j, "even power 2j for witness quantities");

  std::string only;
  auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
  c_verify->add_option("--only", only, "comma list of criterion ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const unsigned threads = thread_cap();
    if (*c_norms) return cmd_norms(norms, out);
    if (*c_orbit) return cmd_orbit(orbit, out);
    if (*c_ces) return cmd_cesaro(ces, out, threads);
    if (*c_block) return cmd_block(block, out, threads);
    if (*c_verify) return cmd_verify(only, out, threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAssertion;
  }
  return kUsage;
}
