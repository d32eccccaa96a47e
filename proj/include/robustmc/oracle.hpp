#ifndef ROBUSTMC_ORACLE_HPP
#define ROBUSTMC_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/state_set.hpp"
#include "robustmc/truth.hpp"

namespace rmc {

// Ground-truth evaluation by exhaustive path enumeration.  Everything here
// is deliberately independent of the fixpoint engine and of the automaton
// pipeline: it recomputes the path semantics directly on ultimately periodic
// paths so the two production checkers can be validated against it.
// Exponential by design; intended for small structures only.

// Ultimately periodic path: the states of `prefix` followed by the states of
// `cycle` repeated forever.  The cycle is nonempty; the prefix may be empty,
// in which case the path starts at cycle[0].
struct Lasso {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;

  // Number of distinct suffix classes: positions i and i + |cycle| describe
  // the same suffix once i >= |prefix|.
  std::size_t length() const { return prefix.size() + cycle.size(); }
  std::size_t state_at_class(std::size_t c) const;

  // e.g. "s0 (s2)^w"
  std::string to_string(const KripkeStructure& m) const;
};

// True iff every consecutive pair (within the prefix, across the seam,
// within the cycle, and on the wrap-around) is an edge of m.
bool valid_lasso(const KripkeStructure& m, const Lasso& l);

// Enumerate lassos starting at `start`: every prefix of length strictly
// below max_prefix and every cycle of length at most max_cycle, each pair
// exactly once, in deterministic order (ascending prefix length, prefixes
// in lexicographic state order, then cycles in depth-first order with
// successors ascending).  Cycles are simple, i.e. never revisit a state,
// unless closed_walk_cycles is set, in which case any closed walk within
// the length bound qualifies.  The callback returns false to stop early.
void for_each_lasso(const KripkeStructure& m, std::size_t start,
                    std::size_t max_prefix, std::size_t max_cycle,
                    bool closed_walk_cycles,
                    const std::function<bool(const Lasso&)>& visit);

// Collects the lassos of for_each_lasso with simple cycles.
std::vector<Lasso> enumerate_lassos(const KripkeStructure& m,
                                    std::size_t start, std::size_t max_prefix,
                                    std::size_t max_cycle);

// Supplies the value of a state subformula at a state; eval_path consults it
// whenever the path formula bottoms out in a state formula.
using StateValueFn =
    std::function<TruthValue(const StateFormula&, std::size_t)>;

// The exact five-valued verdict of a path formula on the infinite path
// described by the lasso.  All extrema over infinite position sets collapse
// onto the finite suffix classes: the "eventually always" and "infinitely
// often" bits read the cycle classes only, the others the classes reachable
// from the evaluation point.  Memoized per (subformula, class) internally.
TruthValue eval_path(const KripkeStructure& m, const Lasso& l,
                     const PathFormula& p, const StateValueFn& state_values);

struct OracleLimits {
  std::size_t max_prefix = 0;  // prefixes strictly shorter than this
  std::size_t max_cycle = 0;   // cycles at most this long
  bool closed_walk_cycles = false;
};

// Recursive evaluation of a state formula: boolean connectives via the truth
// algebra, quantifiers as join/meet of eval_path over every enumerated
// lasso.  Exact whenever the extremal path values are attained within the
// limits; for the single-operator fragment the defaults below suffice.
// Throws std::runtime_error if the limits admit no lasso at all.
TruthValue eval_state_bruteforce(const KripkeStructure& m, std::size_t s,
                                 const StateFormula& f,
                                 const OracleLimits& limits);

// Default limits for `bound` >= |S|: prefixes shorter than bound, simple
// cycles up to bound.
TruthValue eval_state_bruteforce(const KripkeStructure& m, std::size_t s,
                                 const StateFormula& f, std::size_t bound);

struct ExtremalLasso {
  Lasso lasso;             // first enumerated lasso attaining the optimum
  TruthValue path_value;   // verdict of the path formula on that lasso
  TruthValue state_value;  // the quantifier optimum over all lassos
};

// For a quantified formula, the lasso realizing the join (Exists) or meet
// (Forall) over paths.  Empty only if the limits admit no lasso.
// Throws std::invalid_argument if f is not quantified.
std::optional<ExtremalLasso> extremal_lasso(const KripkeStructure& m,
                                            std::size_t s,
                                            const StateFormula& f,
                                            const OracleLimits& limits);

// Classical two-valued reference semantics, reading every operator undotted
// and implication as material.  The formula must fit the single-operator
// shape of the restricted fragment.  Self-contained on purpose: fixpoints
// are plain loops, independent of the fixpoint module.
StateSet sat_ctl(const KripkeStructure& m, const StateFormula& f);
bool eval_ctl(const KripkeStructure& m, std::size_t s, const StateFormula& f);

}  // namespace rmc

#endif  // ROBUSTMC_ORACLE_HPP
