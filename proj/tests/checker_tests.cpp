#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "robustmc/checker_rctl.hpp"
#include "robustmc/oracle.hpp"
#include "support.hpp"

using namespace rmc;

namespace {

StateFormula parse(const std::string& text) {
  return parse_state_formula(text, Fragment::kFull);
}

StateSet make(const KripkeStructure& m, std::initializer_list<std::size_t> e) {
  StateSet s = m.empty_set();
  for (std::size_t i : e) s.set(i);
  return s;
}

TruthValue tv(const char* s) { return *TruthValue::parse(s); }

}  // namespace

TEST_CASE("checker: values on the branch model") {
  const KripkeStructure m = test::branch_model();

  const SatTable agp = compute_sat(m, parse("A G p"));
  CHECK(agp.state_value(0) == tv("0001"));
  CHECK(agp.state_value(1) == tv("1111"));
  CHECK(agp.state_value(2) == tv("0000"));

  const SatTable agq = compute_sat(m, parse("A G q"));
  CHECK(agq.state_value(0) == tv("0001"));
  CHECK(agq.state_value(1) == tv("0000"));
  CHECK(agq.state_value(2) == tv("0000"));

  const SatTable imp = compute_sat(m, parse("A G p -> A G q"));
  CHECK(imp.state_value(0) == tv("1111"));
  CHECK(imp.state_value(1) == tv("0000"));
  CHECK(imp.state_value(2) == tv("1111"));

  const SatTable egp = compute_sat(m, parse("E G p"));
  CHECK(egp.state_value(0) == tv("1111"));
  CHECK(egp.state_value(1) == tv("1111"));
  CHECK(egp.state_value(2) == tv("0000"));
}

TEST_CASE("checker: satisfaction rows on the branch model") {
  const KripkeStructure m = test::branch_model();

  const SatTable agp = compute_sat(m, parse("A G p"));
  const StateFormula root = agp.root();
  CHECK(agp.sat(root, tv("0000")) == m.full_set());
  CHECK(agp.sat(root, tv("0001")) == make(m, {0, 1}));
  CHECK(agp.sat(root, tv("0011")) == make(m, {1}));
  CHECK(agp.sat(root, tv("0111")) == make(m, {1}));
  CHECK(agp.sat(root, tv("1111")) == make(m, {1}));

  const SatTable agq = compute_sat(m, parse("A G q"));
  CHECK(agq.sat(agq.root(), tv("0001")) == make(m, {0}));
  CHECK(agq.sat(agq.root(), tv("0011")) == m.empty_set());

  const SatTable imp = compute_sat(m, parse("A G p -> A G q"));
  CHECK(imp.sat(imp.root(), tv("1111")) == make(m, {0, 2}));

  const SatTable egp = compute_sat(m, parse("E G p"));
  CHECK(egp.sat(egp.root(), tv("1111")) == make(m, {0, 1}));
}

TEST_CASE("checker: next values on the branch model") {
  const KripkeStructure m = test::branch_model();
  const SatTable ex = compute_sat(m, parse("E X p"));
  CHECK(ex.state_value(0) == tv("1111"));  // s1 carries p
  CHECK(ex.state_value(2) == tv("0000"));
  const SatTable ax = compute_sat(m, parse("A X p"));
  CHECK(ax.state_value(0) == tv("0000"));  // s2 does not
  CHECK(ax.state_value(1) == tv("1111"));
}

TEST_CASE("checker: until and weak until against their definitions") {
  const KripkeStructure m = test::branch_model();

  const SatTable euq = compute_sat(m, parse("E (p U q)"));
  CHECK(euq.state_value(0) == tv("1111"));  // q holds immediately
  CHECK(euq.state_value(1) == tv("0000"));
  CHECK(euq.state_value(2) == tv("0000"));

  // Weak until with an impossible goal collapses onto the invariant.
  const SatTable weak = compute_sat(m, parse("A (p W false)"));
  const SatTable always = compute_sat(m, parse("A G p"));
  for (TruthValue b : TruthValue::all())
    CHECK(weak.sat(weak.root(), b) == always.sat(always.root(), b));

  // Eventually is until from a trivial invariant.
  const SatTable ef = compute_sat(m, parse("E F q"));
  const SatTable etu = compute_sat(m, parse("E (true U q)"));
  for (TruthValue b : TruthValue::all())
    CHECK(ef.sat(ef.root(), b) == etu.sat(etu.root(), b));
}

TEST_CASE("checker: table exposes subformulas in dependency order") {
  const KripkeStructure m = test::branch_model();
  const SatTable t = compute_sat(m, parse("A G p -> A G q"));
  const std::vector<StateFormula>& subs = t.subformulas();
  REQUIRE(subs.size() == 5);
  CHECK(subs.back().text() == "A G p -> A G q");
  CHECK(t.root().text() == "A G p -> A G q");
  for (std::size_t i = 1; i < subs.size(); ++i)
    CHECK(subs[i - 1].size() <= subs[i].size());
  CHECK(t.has(parse("A G p")));
  CHECK_FALSE(t.has(parse("E G p")));
  CHECK_THROWS_AS(t.sat(parse("E G p"), tv("1111")), std::out_of_range);

  // Bottom rows are the whole state space for every subformula.
  for (const StateFormula& g : subs)
    CHECK(t.sat(g, tv("0000")) == m.full_set());
}

TEST_CASE("checker: quantified rows satisfy the expansion law") {
  // Sat(E F phi, b) = Sat(phi, b) | pre_exists(Sat(E F phi, b))
  test::RestrictedGen gen(1313, true);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const KripkeStructure m = random_structure(1 + seed % 4, 0.4, 2, seed);
    const StateFormula phi = gen.next(5);
    const StateFormula ef = StateFormula::exists(
        PathFormula::eventually(PathFormula::state(phi)));
    const SatTable t = compute_sat(m, ef);
    for (TruthValue b : TruthValue::all()) {
      if (b == TruthValue::bottom()) continue;
      const StateSet row = t.sat(ef, b);
      CHECK(row == (t.sat(phi, b) | m.pre_exists(row)));
    }
  }
}

TEST_CASE("checker: verdicts aggregate over initial states") {
  const KripkeStructure m = test::branch_model();
  const CheckResult pass = check(m, parse("A G p -> A G q"), tv("1111"));
  CHECK(pass.holds);
  CHECK(pass.value == tv("1111"));
  CHECK(pass.failing_initial.empty());

  const CheckResult fail = check(m, parse("A G p"), tv("0011"));
  CHECK_FALSE(fail.holds);
  CHECK(fail.value == tv("0001"));
  CHECK(fail.failing_initial == std::vector<std::size_t>{0});

  const CheckResult low = check(m, parse("A G p"), tv("0001"));
  CHECK(low.holds);
}

TEST_CASE("checker: the restricted engine rejects nested path formulas") {
  const KripkeStructure m = test::branch_model();
  CHECK_THROWS_AS(compute_sat(m, parse("A (G p -> G q)")), FragmentError);
  CHECK_THROWS_AS(compute_sat(m, parse("E X X p")), FragmentError);
}

TEST_CASE("checker: values agree with the exhaustive oracle on small models") {
  test::RestrictedGen gen(555, true);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const KripkeStructure m =
        random_structure(1 + seed % 4, 0.2 + 0.15 * double(seed % 4), 2, seed);
    for (int j = 0; j < 5; ++j) {
      const StateFormula f = gen.next(10);
      const SatTable t = compute_sat(m, f);
      for (std::size_t s = 0; s < m.num_states(); ++s) {
        const TruthValue engine = t.state_value(s);
        const TruthValue oracle =
            eval_state_bruteforce(m, s, f, m.num_states() + 1);
        if (engine != oracle) {
          CAPTURE(m.to_text());
          CAPTURE(f.text());
          CAPTURE(s);
          REQUIRE(engine == oracle);
        }
      }
    }
  }
}
