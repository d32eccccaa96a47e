#ifndef ROBUSTMC_BUCHI_HPP
#define ROBUSTMC_BUCHI_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "robustmc/kripke.hpp"
#include "robustmc/ltl.hpp"
#include "robustmc/state_set.hpp"

namespace rmc {

// State-labeled Buchi automata built from linear-time formulas.
//
// A node carries a conjunction of literals over the automaton's atom list:
// the positions listed in pos_atoms must hold and the ones in neg_atoms must
// not.  A run q0 q1 q2 ... matches a word a0 a1 a2 ... iff every letter a_t
// satisfies the label of q_t.  Acceptance is generalized: a run is accepting
// iff for every set in accept_sets it visits that set infinitely often.
struct BuchiNode {
  std::vector<int> pos_atoms;  // indices into atoms, ascending
  std::vector<int> neg_atoms;  // indices into atoms, ascending
  std::vector<std::size_t> succ;
  bool initial = false;
};

struct BuchiAutomaton {
  std::vector<std::string> atoms;
  std::vector<BuchiNode> nodes;
  std::vector<std::vector<std::size_t>> accept_sets;  // each ascending, >= 1
};

// Degeneralized form: a single implicit acceptance set.
struct Nba {
  std::vector<std::string> atoms;
  std::vector<BuchiNode> nodes;
  std::vector<bool> accepting;
};

// Tableau construction.  The formula is first brought into negation normal
// form, so any input accepted by ltl_nnf works.  The result always has at
// least one acceptance set.
BuchiAutomaton ltl_to_buchi(const LtlFormula& f);

// Counter construction: states are (node, pending-set index) pairs; the
// counter advances past index i when the current node lies in accept set i,
// and a run is accepting iff the counter wraps around infinitely often.
Nba degeneralize(const BuchiAutomaton& gba);

// States of `m` from which some infinite path is matched by `aut`.
// Atom truth is structural: atom i of the automaton holds at structure state
// s iff atom_sets[i].test(s).  atom_sets must be parallel to aut.atoms and
// every set must have universe m.num_states().
//
// The product of `m` with `aut` is explored from every compatible pair
// (s, initial node); a state qualifies iff one of its pairs reaches a cycle
// through an accepting node.
StateSet nonempty_from(const Nba& aut, const KripkeStructure& m,
                       const std::vector<StateSet>& atom_sets);

}  // namespace rmc

#endif  // ROBUSTMC_BUCHI_HPP
