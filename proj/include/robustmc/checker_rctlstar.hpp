#ifndef ROBUSTMC_CHECKER_RCTLSTAR_HPP
#define ROBUSTMC_CHECKER_RCTLSTAR_HPP

#include "robustmc/checker_rctl.hpp"
#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/ltl.hpp"
#include "robustmc/truth.hpp"

namespace rmc {

// Linear-time translation of a path formula at one robustness level
// (1 = strictest bit of the value, 4 = weakest).  A path satisfies the
// translation iff bit `level` of its five-valued verdict is set.
//
// The input must have plain atoms as its state operands, the shape produced
// by maximal_state_subformulas.  Since negation restarts the level at 1 and
// implication couples level k with k+1, a single formula can probe an atom
// at several levels; an atom `a` probed at level j therefore becomes the
// LTL atom "a@j", which the caller grounds separately per level.
LtlFormula translate_tk(const PathFormula& p, int level);

// Automaton engine for the full logic.  Boolean rows are shared with
// compute_sat; a quantified row is obtained by abstracting the maximal state
// subformulas into atoms, translating at the level of the requested value,
// and testing product emptiness against the structure.  Handles every
// parseable formula; on the restricted fragment it agrees with compute_sat.
SatTable compute_sat_star(const KripkeStructure& m, const StateFormula& f);

// Does f hold with value at least b0 at every initial state?
CheckResult check_star(const KripkeStructure& m, const StateFormula& f,
                       TruthValue b0);

}  // namespace rmc

#endif  // ROBUSTMC_CHECKER_RCTLSTAR_HPP
