#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "robustmc/fixpoint.hpp"
#include "support.hpp"

using namespace rmc;

namespace {

StateSet make(const KripkeStructure& m, std::initializer_list<std::size_t> e) {
  StateSet s = m.empty_set();
  for (std::size_t i : e) s.set(i);
  return s;
}

}  // namespace

TEST_CASE("fixpoint: schema bodies on the branch model") {
  const KripkeStructure m = test::branch_model();
  const StateSet none = m.empty_set();
  const StateSet all = m.full_set();
  const StateSet s1 = make(m, {1});
  const StateSet s2 = make(m, {2});

  // s0 and s1 can step into {s1}; only s1 must.
  CHECK(f_exists(m, s1, none, all) == make(m, {0, 1}));
  CHECK(f_forall(m, s1, none, all) == s1);
  // First disjunct alone: states with a successor in T1.
  CHECK(g_exists(m, s2, none, none, none) == make(m, {0, 2}));
  CHECK(g_forall(m, s2, none, none, none) == s2);
  // S1 passes through untouched.
  CHECK(f_exists(m, none, s2, none) == s2);
}

TEST_CASE("fixpoint: least fixpoint computes reachability") {
  const KripkeStructure m = test::branch_model();
  const StateSet goal = make(m, {2});
  const StateSet reach = lfp(m.num_states(), [&](const StateSet& t) {
    return f_exists(m, t, goal, m.full_set());
  });
  CHECK(reach == make(m, {0, 2}));

  // Nothing reaches the empty goal: totality keeps post nonempty but the
  // target never seeds the iteration.
  const StateSet nothing = lfp(m.num_states(), [&](const StateSet& t) {
    return f_exists(m, t, m.empty_set(), m.full_set());
  });
  CHECK(nothing == m.empty_set());
}

TEST_CASE("fixpoint: greatest fixpoint keeps self-sustaining states") {
  const KripkeStructure m = test::branch_model();
  const StateSet hold = make(m, {0, 1});
  const StateSet inv = gfp(m.num_states(), [&](const StateSet& t) {
    return f_exists(m, t, m.empty_set(), hold);
  });
  CHECK(inv == make(m, {0, 1}));

  // Universal flavor: s0 has a successor outside {s0, s1}, so it drops out.
  const StateSet uinv = gfp(m.num_states(), [&](const StateSet& t) {
    return f_forall(m, t, m.empty_set(), hold);
  });
  CHECK(uinv == make(m, {1}));
}

TEST_CASE("fixpoint: nested alternation on the branch model") {
  const KripkeStructure m = test::branch_model();
  const StateSet hold = make(m, {0, 1});
  const StateSet outer = lfp_gfp(
      m.num_states(), [&](const StateSet& t1, const StateSet& t2) {
        return g_exists(m, t1, t2, m.empty_set(), hold);
      });
  CHECK(outer == make(m, {0, 1}));

  // When the body ignores one variable the nesting degenerates to the
  // single-variable fixpoint.
  const StateSet goal = make(m, {2});
  const StateSet nested_lfp = lfp_gfp(
      m.num_states(), [&](const StateSet& t1, const StateSet&) {
        return f_exists(m, t1, goal, m.full_set());
      });
  CHECK(nested_lfp == make(m, {0, 2}));
  const StateSet nested_gfp = gfp_lfp(
      m.num_states(), [&](const StateSet&, const StateSet& t2) {
        return f_exists(m, t2, m.empty_set(), hold);
      });
  CHECK(nested_gfp == make(m, {0, 1}));
}

TEST_CASE("fixpoint: non-monotone bodies are rejected") {
  const KripkeStructure m = test::branch_model();
  CHECK_THROWS_AS(lfp(m.num_states(),
                      [&](const StateSet& t) { return t.complement(); }),
                  std::logic_error);
  CHECK_THROWS_AS(gfp(m.num_states(),
                      [&](const StateSet& t) { return t.complement(); }),
                  std::logic_error);
}

TEST_CASE("fixpoint: alternation agrees across random structures") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const KripkeStructure m = random_structure(4, 0.4, 1, seed);
    const StateSet hold = m.states_with(0);
    // nu T. f_exists(T, {}, hold) == gfp_lfp collapsed on the same body.
    const StateSet direct = gfp(m.num_states(), [&](const StateSet& t) {
      return f_exists(m, t, m.empty_set(), hold);
    });
    const StateSet nested = gfp_lfp(
        m.num_states(), [&](const StateSet&, const StateSet& t2) {
          return f_exists(m, t2, m.empty_set(), hold);
        });
    CHECK(direct == nested);
  }
}
