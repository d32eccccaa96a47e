// Acceptance gate: one self-reporting check per release criterion.  Each
// check prints a single [PASS]/[FAIL] line; the process exits nonzero if
// any check fails.  Everything runs from scratch on every invocation.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "robustmc/buchi.hpp"
#include "robustmc/checker_rctl.hpp"
#include "robustmc/checker_rctlstar.hpp"
#include "robustmc/fixpoint.hpp"
#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/ltl.hpp"
#include "robustmc/oracle.hpp"
#include "robustmc/truth.hpp"
#include "support.hpp"

using namespace rmc;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    ok = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TruthValue tv(const char* s) { return *TruthValue::parse(s); }

StateFormula parse(const std::string& text) {
  return parse_state_formula(text, Fragment::kFull);
}

std::string run_shell(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) return out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  return out;
}

std::string cli_path() {
  if (const char* env = std::getenv("ROBUSTMC_CLI")) return env;
  return ROBUSTMC_CLI_PATH;
}

// The shared corpus: deterministic small structures and restricted-fragment
// formulas reused by several criteria below.
KripkeStructure corpus_model(std::uint64_t seed) {
  return random_structure(1 + seed % 4, 0.25 + 0.15 * double(seed % 4), 2,
                          1000 + seed);
}

const std::vector<StateFormula>& corpus_formulas() {
  static const std::vector<StateFormula> formulas = [] {
    test::RestrictedGen gen(42, true);
    std::vector<StateFormula> out;
    out.reserve(200);
    for (int i = 0; i < 200; ++i) out.push_back(gen.next(10));
    return out;
  }();
  return formulas;
}

// --- criterion 1: golden model values ---------------------------------

Outcome golden_model_values() {
  Outcome o;
  const Clock::time_point t0 = Clock::now();
  const KripkeStructure m = test::branch_model();

  auto value = [&](const char* f) {
    return compute_sat(m, parse(f)).state_value(0).to_string();
  };
  auto expect = [&](const char* f, const char* want, const std::string& got) {
    if (got != want)
      o.fail(std::string(f) + " = " + got + ", want " + want);
  };
  expect("A G p", "0001", value("A G p"));
  expect("A G q", "0001", value("A G q"));
  expect("A G p -> A G q", "1111", value("A G p -> A G q"));
  expect("A (G p -> G q)", "0001",
         compute_sat_star(m, parse("A (G p -> G q)"))
             .state_value(0)
             .to_string());

  // The two canonical paths, directly and through the explain command.
  const StateValueFn sv = [&](const StateFormula& g, std::size_t s) {
    return m.state_has_prop(s, *m.prop_index(g.text()))
               ? TruthValue::top()
               : TruthValue::bottom();
  };
  const PathFormula always_p = parse("E (G p)").path();
  if (eval_path(m, Lasso{{0}, {1}}, always_p, sv) != tv("1111"))
    o.fail("path s0 s1^w under always-p");
  if (eval_path(m, Lasso{{0}, {2}}, always_p, sv) != tv("0001"))
    o.fail("path s0 s2^w under always-p");

  const std::string dir = "/tmp/robustmc-acceptance-" +
                          std::to_string(::getpid());
  run_shell("mkdir -p '" + dir + "'");
  FILE* f = fopen((dir + "/branch.km").c_str(), "w");
  if (f) {
    fputs(test::branch_model_text(), f);
    fclose(f);
  }
  const std::string best = run_shell("'" + cli_path() + "' explain -m '" +
                                     dir + "/branch.km' -f 'E G p' -S s0");
  if (best.find("extremal lasso: s0 (s1)^w\n") == std::string::npos ||
      best.find("lasso path value: 1111\n") == std::string::npos)
    o.fail("explain does not witness s0 s1^w at 1111");
  const std::string worst = run_shell("'" + cli_path() + "' explain -m '" +
                                      dir + "/branch.km' -f 'A G p' -S s0");
  if (worst.find("extremal lasso: s0 (s2)^w\n") == std::string::npos ||
      worst.find("lasso path value: 0001\n") == std::string::npos)
    o.fail("explain does not witness s0 s2^w at 0001");
  run_shell("rm -rf '" + dir + "'");

  const double dt = seconds_since(t0);
  if (dt >= 1.0) o.fail("took " + std::to_string(dt) + "s, limit 1s");
  std::ostringstream d;
  d << "6 values, 2 explained paths, " << int(dt * 1000) << " ms";
  if (o.detail.empty()) o.detail = d.str();
  return o;
}

// --- criterion 2: canonical word classes ------------------------------

Outcome canonical_word_classes() {
  Outcome o;
  KripkeBuilder b;
  b.add_prop("p");
  b.add_state("a", true, {"p"});
  b.add_state("c0", false, {});
  b.add_state("c1", false, {});
  b.add_state("c2", false, {});
  b.add_state("d0", false, {});
  b.add_state("d1", false, {"p"});
  b.add_state("e0", false, {"p"});
  b.add_state("e1", false, {"p"});
  b.add_state("f", false, {});
  b.add_edge("a", "a");
  b.add_edge("c0", "c1");
  b.add_edge("c1", "c2");
  b.add_edge("c2", "a");
  b.add_edge("d0", "d1");
  b.add_edge("d1", "d0");
  b.add_edge("e0", "e1");
  b.add_edge("e1", "f");
  b.add_edge("f", "f");
  const KripkeStructure m = b.build();
  const StateValueFn sv = [&](const StateFormula& g, std::size_t s) {
    return m.state_has_prop(s, *m.prop_index(g.text()))
               ? TruthValue::top()
               : TruthValue::bottom();
  };
  const PathFormula always_p = parse("E (G p)").path();
  auto at = [&](const char* name) { return *m.state_index(name); };

  const struct {
    const char* word;
    Lasso lasso;
    const char* want;
  } cases[] = {
      {"1^w", {{}, {at("a")}}, "1111"},
      {"000 1^w", {{at("c0"), at("c1"), at("c2")}, {at("a")}}, "0111"},
      {"(01)^w", {{}, {at("d0"), at("d1")}}, "0011"},
      {"11 0^w", {{at("e0"), at("e1")}, {at("f")}}, "0001"},
      {"0^w", {{}, {at("f")}}, "0000"},
  };
  for (const auto& c : cases) {
    const TruthValue got = eval_path(m, c.lasso, always_p, sv);
    if (got != tv(c.want))
      o.fail(std::string(c.word) + " gave " + got.to_string() + ", want " +
             c.want);
  }
  if (o.detail.empty()) o.detail = "5 word classes";
  return o;
}

// --- criterion 3: truth algebra laws ----------------------------------

Outcome truth_algebra_laws() {
  Outcome o;
  const Clock::time_point t0 = Clock::now();
  const auto all = TruthValue::all();
  long checks = 0;

  for (TruthValue a : all) {
    if (meet(a, a) != a || join(a, a) != a) o.fail("idempotence");
    // Negation sends true to false and every shade of false to true;
    // double negation therefore quantizes to the classical bit.
    if (negate(a) !=
        (a == TruthValue::top() ? TruthValue::bottom() : TruthValue::top()))
      o.fail("negation table");
    if (negate(negate(a)) !=
        (a == TruthValue::top() ? TruthValue::top() : TruthValue::bottom()))
      o.fail("double negation quantization");
    if (implies(negate(negate(a)), a) != TruthValue::top())
      o.fail("double negation must weaken");
    if (implies(TruthValue::top(), a) != a) o.fail("top unit");
    checks += 6;
  }
  for (TruthValue a : all)
    for (TruthValue b : all) {
      if (meet(a, b) != meet(b, a) || join(a, b) != join(b, a))
        o.fail("commutativity");
      if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a)
        o.fail("absorption");
      if ((a <= b) != (meet(a, b) == a) || (a <= b) != (join(a, b) == b))
        o.fail("order consistency");
      if ((implies(a, b) == TruthValue::top()) != (a <= b))
        o.fail("implication characterizes order");
      if (!(b <= implies(a, b))) o.fail("weakening");
      if (meet(negate(a), negate(b)) != negate(join(a, b)))
        o.fail("de morgan");
      checks += 6;
    }
  for (TruthValue a : all)
    for (TruthValue b : all)
      for (TruthValue c : all) {
        if (meet(a, meet(b, c)) != meet(meet(a, b), c) ||
            join(a, join(b, c)) != join(join(a, b), c))
          o.fail("associativity");
        // Residuation: c and a together force b exactly when c forces
        // the implication.
        if ((meet(c, a) <= b) != (c <= implies(a, b)))
          o.fail("residuation");
        if (implies(meet(a, b), c) != implies(a, implies(b, c)))
          o.fail("currying");
        checks += 3;
      }

  const double dt = seconds_since(t0);
  if (dt >= 1.0) o.fail("took " + std::to_string(dt) + "s, limit 1s");
  if (o.detail.empty()) {
    std::ostringstream d;
    d << checks << " law instances";
    o.detail = d.str();
  }
  return o;
}

// --- criterion 4: oracle equivalence ----------------------------------

Outcome oracle_equivalence() {
  Outcome o;
  const Clock::time_point t0 = Clock::now();
  const std::vector<StateFormula>& formulas = corpus_formulas();
  long states_checked = 0;
  int mismatches = 0;

  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const KripkeStructure m = corpus_model(seed);
    for (int j = 0; j < 10; ++j) {
      const StateFormula& f = formulas[(seed * 10 + j) % formulas.size()];
      const SatTable table = compute_sat(m, f);
      for (std::size_t s = 0; s < m.num_states(); ++s) {
        const TruthValue engine = table.state_value(s);
        const TruthValue oracle =
            eval_state_bruteforce(m, s, f, m.num_states() + 1);
        ++states_checked;
        if (engine != oracle && ++mismatches <= 3)
          o.fail("model " + std::to_string(seed) + " state " +
                 std::to_string(s) + " formula " + f.text() + ": engine " +
                 engine.to_string() + " oracle " + oracle.to_string());
      }
    }
  }
  if (mismatches > 3)
    o.fail(std::to_string(mismatches) + " mismatches in total");

  const double dt = seconds_since(t0);
  if (dt >= 300.0) o.fail("took " + std::to_string(dt) + "s, limit 300s");
  if (o.detail.empty()) {
    std::ostringstream d;
    d << "500 models x 10 formulas (200 distinct), " << states_checked
      << " state comparisons, " << int(dt) << " s";
    o.detail = d.str();
  }
  return o;
}

// --- criterion 5: classical agreement without implication -------------

Outcome classical_agreement() {
  Outcome o;
  test::RestrictedGen gen(42, false);
  int pairs = 0, mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const StateFormula f = gen.next(10);
    if (contains_implication(f)) {
      o.fail("generator emitted an implication");
      continue;
    }
    const KripkeStructure m = corpus_model(std::uint64_t(1 + i % 500));
    const SatTable table = compute_sat(m, f);
    const StateSet full = table.sat(f, TruthValue::top());
    const StateSet classical = sat_ctl(m, f);
    ++pairs;
    if (full != classical && ++mismatches <= 3)
      o.fail("formula " + f.text() + " disagrees with the classical set");
  }
  if (mismatches > 3)
    o.fail(std::to_string(mismatches) + " mismatches in total");
  if (o.detail.empty())
    o.detail = std::to_string(pairs) + " implication-free formulas";
  return o;
}

// --- criterion 6: row monotonicity ------------------------------------

Outcome row_monotonicity() {
  Outcome o;
  // Both engines re-verify every computed row internally and throw on a
  // violation; this re-checks a mixed sample externally.
  const auto all = TruthValue::all();
  long rows = 0;
  test::FullGen full_gen(99);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const KripkeStructure m = corpus_model(seed);
    const StateFormula restricted =
        corpus_formulas()[(seed * 7) % corpus_formulas().size()];
    const SatTable a = compute_sat(m, restricted);
    const KripkeStructure tiny = random_structure(1 + seed % 3, 0.4, 2,
                                                  4000 + seed);
    const SatTable b = compute_sat_star(tiny, full_gen.next(8));
    for (const SatTable* table : {&a, &b}) {
      for (const StateFormula& g : table->subformulas()) {
        for (std::size_t i = 0; i + 1 < all.size(); ++i) {
          // all() ascends, so each set must contain the next one up.
          const StateSet& lower = table->sat(g, all[i]);
          const StateSet& higher = table->sat(g, all[i + 1]);
          if ((higher - lower).count() != 0)
            o.fail("row of " + g.text() + " is not antitone");
          ++rows;
        }
        const StateSet& bottom = table->sat(g, TruthValue::bottom());
        if (bottom.count() != bottom.universe_size())
          o.fail("bottom row of " + g.text() + " is not the full set");
      }
    }
  }
  if (o.detail.empty())
    o.detail = std::to_string(rows) +
               " adjacent row pairs externally re-checked (engines also "
               "verify every computed table)";
  return o;
}

// --- criterion 7: engine agreement ------------------------------------

Outcome engine_agreement() {
  Outcome o;
  int pairs = 0, mismatches = 0;
  for (std::uint64_t seed = 1; seed <= 110; ++seed) {
    const KripkeStructure m = corpus_model(seed);
    const StateFormula& f =
        corpus_formulas()[(seed * 13) % corpus_formulas().size()];
    const SatTable fix = compute_sat(m, f);
    const SatTable aut = compute_sat_star(m, f);
    bool same = fix.subformulas().size() == aut.subformulas().size();
    if (same)
      for (const StateFormula& g : fix.subformulas())
        for (TruthValue b : TruthValue::all())
          if (fix.sat(g, b) != aut.sat(g, b)) same = false;
    ++pairs;
    if (!same && ++mismatches <= 3)
      o.fail("tables differ for " + f.text() + " on model " +
             std::to_string(seed));
  }
  if (mismatches > 3)
    o.fail(std::to_string(mismatches) + " differing pairs in total");
  if (o.detail.empty())
    o.detail = std::to_string(pairs) + " model/formula pairs";
  return o;
}

// --- criterion 8: automaton vs direct word evaluation ------------------

Outcome automaton_correctness() {
  Outcome o;
  const Clock::time_point t0 = Clock::now();
  test::LtlGen gen(4242, 2);
  long words = 0;
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const LtlFormula f = gen.next(8);
    const std::vector<std::string> atoms = f.atoms();
    const Nba aut = degeneralize(ltl_to_buchi(f));
    test::for_each_word(
        atoms.size(), 6,
        [&](const std::vector<std::vector<bool>>& word,
            std::size_t cycle_start) {
          const bool direct = eval_ltl_lasso(f, atoms, word, cycle_start);
          const bool produced =
              test::product_accepts(aut, word, cycle_start, atoms);
          ++words;
          if (direct != produced && ++mismatches <= 3)
            o.fail("formula " + f.text() + " disagrees on a word of length " +
                   std::to_string(word.size()));
        });
  }
  if (mismatches > 3)
    o.fail(std::to_string(mismatches) + " mismatches in total");
  if (o.detail.empty()) {
    std::ostringstream d;
    d << "200 formulas, " << words << " lasso words, " << int(seconds_since(t0))
      << " s";
    o.detail = d.str();
  }
  return o;
}

// --- criterion 9: complexity smoke ------------------------------------

KripkeStructure chain_model(std::size_t n) {
  KripkeBuilder b;
  b.add_prop("p");
  b.add_prop("q");
  for (std::size_t i = 0; i < n; ++i)
    b.add_state("c" + std::to_string(i), i == 0, {"p"});
  for (std::size_t i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  b.add_edge(n - 1, n - 1);
  return b.build();
}

KripkeStructure clique_model(std::size_t n) {
  KripkeBuilder b;
  b.add_prop("p");
  b.add_prop("q");
  for (std::size_t i = 0; i < n; ++i)
    b.add_state("c" + std::to_string(i), i == 0, {"p"});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b.add_edge(i, j);
  return b.build();
}

// Best-of-three timing of `repeats` evaluations, in seconds per evaluation.
double time_check(const KripkeStructure& m, const StateFormula& f,
                  int repeats) {
  double best = 1e100;
  unsigned sink = 0;
  for (int sample = 0; sample < 3; ++sample) {
    const Clock::time_point t0 = Clock::now();
    for (int r = 0; r < repeats; ++r)
      sink += compute_sat(m, f).state_value(0).rank();
    best = std::min(best, seconds_since(t0) / repeats);
  }
  if (sink == 0xdeadbeef) std::fprintf(stderr, "?");
  return best;
}

int calibrate(const KripkeStructure& m, const StateFormula& f) {
  const double once = time_check(m, f, 1);
  const double target = 0.05;
  const double k = std::ceil(target / std::max(once, 1e-7));
  return int(std::min(k, 2000.0));
}

Outcome complexity_smoke() {
  Outcome o;
  const std::size_t sizes[] = {100, 200, 400};
  const StateFormula f = parse("A G p");

  for (const char* family : {"chain", "clique"}) {
    const bool chain = family[0] == 'c' && family[1] == 'h';
    const KripkeStructure smallest =
        chain ? chain_model(sizes[0]) : clique_model(sizes[0]);
    const int repeats = calibrate(smallest, f);
    double first = 0, last = 0;
    for (std::size_t n : sizes) {
      const KripkeStructure m = chain ? chain_model(n) : clique_model(n);
      const double t = time_check(m, f, repeats);
      if (t >= 10.0)
        o.fail(std::string(family) + " run at N=" + std::to_string(n) +
               " exceeded 10s");
      if (n == sizes[0]) first = t;
      if (n == sizes[2]) last = t;
    }
    const double slope = std::log(last / first) / std::log(4.0);
    std::ostringstream d;
    d << family << " slope " << std::fixed;
    d.precision(2);
    d << slope;
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += d.str();
    if (slope > 2.3)
      o.fail(std::string(family) + " state-count slope " + d.str() +
             " exceeds 2.3");
  }

  // Formula growth: a tower of universal next steps, doubling in size.
  const KripkeStructure m = chain_model(100);
  auto tower = [](int k) {
    std::string text;
    for (int i = 0; i < k; ++i) text += "A X ";
    text = "(" + text + "p) & !q";
    return parse(text);
  };
  const StateFormula f10 = tower(3), f20 = tower(8), f40 = tower(18);
  if (f10.size() != 10 || f20.size() != 20 || f40.size() != 40)
    o.fail("formula sizes are not 10/20/40");
  const int repeats = calibrate(m, f10);
  const double t10 = time_check(m, f10, repeats);
  const double t40 = time_check(m, f40, repeats);
  if (t10 >= 10.0 || t40 >= 10.0) o.fail("formula run exceeded 10s");
  const double slope = std::log(t40 / t10) / std::log(4.0);
  std::ostringstream d;
  d << "formula slope " << std::fixed;
  d.precision(2);
  d << slope;
  o.detail += ", " + d.str();
  if (slope > 1.3) o.fail("formula-size slope exceeds 1.3");
  return o;
}

// --- criterion 10: theory coverage note --------------------------------

Outcome theory_note() {
  Outcome o;
  o.detail =
      "expressiveness and satisfiability-complexity results are "
      "mathematical, not runnable; their mechanically checkable shadows "
      "are criteria 1, 5, 7 and 8";
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const Entry entries[] = {
      {1, "golden model values", golden_model_values},
      {2, "canonical word classes", canonical_word_classes},
      {3, "truth algebra laws", truth_algebra_laws},
      {4, "oracle equivalence", oracle_equivalence},
      {5, "classical agreement without implication", classical_agreement},
      {6, "row monotonicity", row_monotonicity},
      {7, "engine agreement on the restricted fragment", engine_agreement},
      {8, "automaton vs direct word evaluation", automaton_correctness},
      {9, "complexity smoke", complexity_smoke},
      {10, "theory coverage note", theory_note},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.run();
    } catch (const std::exception& ex) {
      o.ok = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    std::printf("[%s] criterion %d: %s (%s)\n", o.ok ? "PASS" : "FAIL",
                e.number, e.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
