#pragma once

#include <functional>

#include "robustmc/kripke.hpp"
#include "robustmc/state_set.hpp"

namespace rmc {

// Schema bodies for the set fixpoints.  The existential forms test overlap
// of post(s) with the bound variable, the universal forms containment.
//
//   f_exists(T, S1, S2) = S1 | {s in S2 | post(s) meets T}
//   f_forall(T, S1, S2) = S1 | {s in S2 | post(s) within T}
//   g_exists(T1, T2, S1, S2)
//     = {s | post(s) meets T1} | S1 | {s in S2 | post(s) meets T2}
//   g_forall likewise with containment.
StateSet f_exists(const KripkeStructure& m, const StateSet& t,
                  const StateSet& s1, const StateSet& s2);
StateSet f_forall(const KripkeStructure& m, const StateSet& t,
                  const StateSet& s1, const StateSet& s2);
StateSet g_exists(const KripkeStructure& m, const StateSet& t1,
                  const StateSet& t2, const StateSet& s1, const StateSet& s2);
StateSet g_forall(const KripkeStructure& m, const StateSet& t1,
                  const StateSet& t2, const StateSet& s1, const StateSet& s2);

// Kleene iteration from the empty (least) or full (greatest) set over a
// universe of n states.  The body must be monotone; every iteration checks
// that the chain moves the right way and throws std::logic_error otherwise.
StateSet lfp(std::size_t n, const std::function<StateSet(const StateSet&)>& f);
StateSet gfp(std::size_t n, const std::function<StateSet(const StateSet&)>& f);

// Nested alternation by restart iteration: the outer variable is updated,
// the inner fixpoint recomputed from scratch.
//
//   lfp_gfp: least T1 of (T1 -> greatest T2 of g(T1, T2))
//   gfp_lfp: greatest T2 of (T2 -> least T1 of g(T1, T2))
StateSet lfp_gfp(std::size_t n,
                 const std::function<StateSet(const StateSet&,
                                              const StateSet&)>& g);
StateSet gfp_lfp(std::size_t n,
                 const std::function<StateSet(const StateSet&,
                                              const StateSet&)>& g);

}  // namespace rmc
