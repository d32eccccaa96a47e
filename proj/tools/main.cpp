// robustmc: five-valued model checking from the command line.
//
// Subcommands:
//   check    verdict for a formula against a model at a threshold value
//   values   full table of values for every subformula and state
//   gen      seeded random model on standard output
//   explain  engine vs. brute-force oracle, with the extremal lasso
//
// Exit codes: 0 requirement holds, 1 requirement fails, 2 usage, model,
// syntax or fragment errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "robustmc/checker_rctl.hpp"
#include "robustmc/checker_rctlstar.hpp"
#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/oracle.hpp"
#include "robustmc/truth.hpp"

namespace {

using nlohmann::json;

// Thrown by the command bodies; main turns it into the exit code.
struct CommandError {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{2, "model error: cannot read '" + path + "'"};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

rmc::KripkeStructure load_model(const std::string& path) {
  const std::string text = read_file(path);
  try {
    rmc::KripkeStructure m = rmc::parse_model(text);
    for (const rmc::ModelIssue& issue : m.validate()) {
      if (issue.is_error)
        throw CommandError{2, "model error: " + path + ": " + issue.message};
      std::cerr << "warning: " << path << ": " << issue.message << "\n";
    }
    return m;
  } catch (const rmc::ModelError& e) {
    throw CommandError{2, "model error: " + path + ": " + e.what()};
  }
}

// The formula argument is either literal text or the name of a file
// holding the text.
std::string formula_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

rmc::StateFormula parse_formula(const std::string& arg) {
  try {
    return rmc::parse_state_formula(formula_text(arg), rmc::Fragment::kFull);
  } catch (const rmc::ParseError& e) {
    throw CommandError{2, std::string("formula syntax error: ") + e.what()};
  } catch (const rmc::FragmentError& e) {
    // A top-level path formula is a fragment violation, not a syntax error.
    throw CommandError{2, std::string("fragment error: ") + e.what()};
  }
}

enum class Engine { kRctl, kRctlStar };

Engine pick_engine(const std::string& requested, const rmc::StateFormula& f) {
  if (requested == "rctl") return Engine::kRctl;
  if (requested == "rctlstar") return Engine::kRctlStar;
  return rmc::fragment_violation(f, rmc::Fragment::kRestricted)
             ? Engine::kRctlStar
             : Engine::kRctl;
}

const char* engine_name(Engine e) {
  return e == Engine::kRctl ? "rctl" : "rctlstar";
}

rmc::SatTable run_engine(Engine e, const rmc::KripkeStructure& m,
                         const rmc::StateFormula& f) {
  try {
    return e == Engine::kRctl ? rmc::compute_sat(m, f)
                              : rmc::compute_sat_star(m, f);
  } catch (const rmc::FragmentError& err) {
    throw CommandError{2, std::string("fragment error: ") + err.what()};
  }
}

rmc::TruthValue parse_threshold(const std::string& text) {
  const auto b = rmc::TruthValue::parse(text);
  if (!b)
    throw CommandError{2, "usage error: invalid truth value '" + text +
                              "' (expected 0000, 0001, 0011, 0111 or 1111)"};
  return *b;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  const auto end = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(end - start).count();
}

struct CheckArgs {
  std::string model;
  std::string formula;
  std::string threshold;
  std::string engine = "auto";
  bool json_lines = false;
};

int cmd_check(const CheckArgs& args) {
  const rmc::KripkeStructure m = load_model(args.model);
  const rmc::StateFormula f = parse_formula(args.formula);
  const rmc::TruthValue b0 = parse_threshold(args.threshold);
  const Engine engine = pick_engine(args.engine, f);

  const auto start = std::chrono::steady_clock::now();
  const rmc::SatTable table = run_engine(engine, m, f);
  const double ms = elapsed_ms(start);

  bool holds = true;
  rmc::TruthValue value = rmc::TruthValue::top();
  m.initial_states().for_each([&](std::size_t s) {
    const rmc::TruthValue v = table.state_value(s);
    value = rmc::meet(value, v);
    if (v < b0) holds = false;
  });
  if (m.initial_states().count() == 0)
    std::cerr << "warning: no initial states; the requirement is vacuously "
                 "satisfied\n";

  if (args.json_lines) {
    m.initial_states().for_each([&](std::size_t s) {
      json row;
      row["state"] = m.state_name(s);
      row["value"] = table.state_value(s).to_string();
      std::cout << row.dump() << "\n";
    });
    json summary;
    summary["engine"] = engine_name(engine);
    summary["formula"] = f.text();
    summary["threshold"] = b0.to_string();
    summary["value"] = value.to_string();
    summary["verdict"] = holds ? "holds" : "fails";
    std::cout << summary.dump() << "\n";
    std::cerr << "time_ms: " << std::fixed << std::setprecision(3) << ms
              << "\n";
  } else {
    std::cout << "engine: " << engine_name(engine) << "\n";
    std::cout << "formula: " << f.text() << "\n";
    std::cout << "threshold: " << b0.to_string() << "\n";
    m.initial_states().for_each([&](std::size_t s) {
      std::cout << m.state_name(s) << " " << table.state_value(s).to_string()
                << "\n";
    });
    std::cout << "verdict: " << (holds ? "holds" : "fails") << "\n";
    std::cout << "time_ms: " << std::fixed << std::setprecision(3) << ms
              << "\n";
  }
  return holds ? 0 : 1;
}

struct ValuesArgs {
  std::string model;
  std::string formula;
  std::string engine = "auto";
  bool json_lines = false;
};

int cmd_values(const ValuesArgs& args) {
  const rmc::KripkeStructure m = load_model(args.model);
  const rmc::StateFormula f = parse_formula(args.formula);
  const Engine engine = pick_engine(args.engine, f);
  const rmc::SatTable table = run_engine(engine, m, f);

  bool first = true;
  for (const rmc::StateFormula& g : table.subformulas()) {
    if (args.json_lines) {
      for (std::size_t s = 0; s < m.num_states(); ++s) {
        json row;
        row["formula"] = g.text();
        row["state"] = m.state_name(s);
        row["value"] = table.state_value(g, s).to_string();
        std::cout << row.dump() << "\n";
      }
    } else {
      if (!first) std::cout << "\n";
      first = false;
      std::cout << "# " << g.text() << "\n";
      for (std::size_t s = 0; s < m.num_states(); ++s)
        std::cout << m.state_name(s) << " "
                  << table.state_value(g, s).to_string() << "\n";
    }
  }
  return 0;
}

struct GenArgs {
  std::size_t n_states = 0;
  double density = 0.3;
  std::size_t n_props = 2;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& args) {
  std::uint64_t seed = args.seed;
  if (const char* env = std::getenv("ROBUSTMC_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw CommandError{
          2, "usage error: ROBUSTMC_SEED must be an unsigned integer"};
    seed = v;
  }
  if (args.n_states == 0)
    throw CommandError{2, "usage error: --states must be at least 1"};
  if (args.density < 0.0 || args.density > 1.0)
    throw CommandError{2, "usage error: --density must lie in [0, 1]"};
  const rmc::KripkeStructure m =
      rmc::random_structure(args.n_states, args.density, args.n_props, seed);
  std::cout << m.to_text();
  return 0;
}

struct ExplainArgs {
  std::string model;
  std::string formula;
  std::string state;
  std::size_t max_oracle_states = 6;
};

int cmd_explain(const ExplainArgs& args) {
  const rmc::KripkeStructure m = load_model(args.model);
  if (m.num_states() > args.max_oracle_states)
    throw CommandError{
        2, "oracle error: model has " + std::to_string(m.num_states()) +
               " states; the exhaustive oracle is limited to " +
               std::to_string(args.max_oracle_states) +
               " (raise with --max-oracle-states)"};
  const rmc::StateFormula f = parse_formula(args.formula);
  const auto s = m.state_index(args.state);
  if (!s)
    throw CommandError{2, "usage error: model has no state named '" +
                              args.state + "'"};

  const Engine engine = pick_engine("auto", f);
  const rmc::SatTable table = run_engine(engine, m, f);
  const rmc::OracleLimits limits{m.num_states() + 1, m.num_states() + 1,
                                 false};
  const rmc::TruthValue oracle = rmc::eval_state_bruteforce(m, *s, f, limits);

  std::cout << "state: " << m.state_name(*s) << "\n";
  std::cout << "engine: " << engine_name(engine) << "\n";
  std::cout << "engine value: " << table.state_value(*s).to_string() << "\n";
  std::cout << "oracle value: " << oracle.to_string() << "\n";
  if (f.kind() == rmc::StateKind::kExists ||
      f.kind() == rmc::StateKind::kForall) {
    const auto ex = rmc::extremal_lasso(m, *s, f, limits);
    if (ex) {
      std::cout << "extremal lasso: " << ex->lasso.to_string(m) << "\n";
      std::cout << "lasso path value: " << ex->path_value.to_string() << "\n";
    }
  } else {
    std::cout << "extremal lasso: none (no top-level path quantifier)\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"five-valued model checker for branching-time requirements"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "verdict for a formula against a model at a threshold");
  check->add_option("-m,--model", check_args.model, "model file")->required();
  check->add_option("-f,--formula", check_args.formula,
                    "formula text, or a file holding it")
      ->required();
  check->add_option("-b,--threshold", check_args.threshold,
                    "required value at every initial state")
      ->required()
      ->check(CLI::IsMember({"0000", "0001", "0011", "0111", "1111"}));
  check->add_option("--engine", check_args.engine, "rctl, rctlstar or auto")
      ->check(CLI::IsMember({"rctl", "rctlstar", "auto"}));
  check->add_flag("--json", check_args.json_lines, "json-lines output");

  ValuesArgs values_args;
  CLI::App* values = app.add_subcommand(
      "values", "table of values for every subformula and state");
  values->add_option("-m,--model", values_args.model, "model file")
      ->required();
  values->add_option("-f,--formula", values_args.formula,
                     "formula text, or a file holding it")
      ->required();
  values->add_option("--engine", values_args.engine, "rctl, rctlstar or auto")
      ->check(CLI::IsMember({"rctl", "rctlstar", "auto"}));
  values->add_flag("--json", values_args.json_lines, "json-lines output");

  GenArgs gen_args;
  CLI::App* gen =
      app.add_subcommand("gen", "seeded random model on standard output");
  gen->add_option("-n,--states", gen_args.n_states, "number of states")
      ->required();
  gen->add_option("-d,--density", gen_args.density, "edge density in [0, 1]");
  gen->add_option("-p,--props", gen_args.n_props, "number of propositions");
  gen->add_option("-s,--seed", gen_args.seed,
                  "generator seed (ROBUSTMC_SEED overrides)");

  ExplainArgs explain_args;
  CLI::App* explain = app.add_subcommand(
      "explain", "engine vs. exhaustive oracle, with the extremal lasso");
  explain->add_option("-m,--model", explain_args.model, "model file")
      ->required();
  explain->add_option("-f,--formula", explain_args.formula,
                      "formula text, or a file holding it")
      ->required();
  explain->add_option("-S,--state", explain_args.state, "state to explain")
      ->required();
  explain->add_option("--max-oracle-states", explain_args.max_oracle_states,
                      "largest model the oracle will accept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return cmd_check(check_args);
    if (values->parsed()) return cmd_values(values_args);
    if (gen->parsed()) return cmd_gen(gen_args);
    if (explain->parsed()) return cmd_explain(explain_args);
  } catch (const CommandError& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
