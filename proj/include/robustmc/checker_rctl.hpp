#ifndef ROBUSTMC_CHECKER_RCTL_HPP
#define ROBUSTMC_CHECKER_RCTL_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/state_set.hpp"
#include "robustmc/truth.hpp"

namespace rmc {

class SatTable;

namespace detail {

// Shared table builder.  Boolean connectives are handled uniformly; a
// quantified subformula's row at each nonzero value is delegated to
// quant_row, which is what distinguishes the two engines.  Every computed
// family of rows is verified to shrink (weakly) as the value climbs; a
// violation throws std::logic_error.
SatTable compute_sat_table(
    const KripkeStructure& m, const StateFormula& root,
    const std::function<StateSet(const KripkeStructure&, const SatTable&,
                                 const StateFormula&, TruthValue)>& quant_row);

}  // namespace detail

// Satisfaction table: for every state subformula g of the checked formula
// and every value b, the set sat(g, b) of states where g holds with value at
// least b.  Rows are antitone in b and the bottom row is always the full
// state space, so state_value is total.
class SatTable {
 public:
  // Ascending by size; the checked formula itself is last.
  const std::vector<StateFormula>& subformulas() const { return subs_; }
  const StateFormula& root() const { return subs_.back(); }

  bool has(const StateFormula& g) const;

  // Throws std::out_of_range for formulas outside subformulas().
  const StateSet& sat(const StateFormula& g, TruthValue b) const;

  // Largest b with s in sat(g, b).
  TruthValue state_value(const StateFormula& g, std::size_t s) const;
  // Same for the checked formula itself.
  TruthValue state_value(std::size_t s) const;

 private:
  friend SatTable detail::compute_sat_table(
      const KripkeStructure&, const StateFormula&,
      const std::function<StateSet(const KripkeStructure&, const SatTable&,
                                   const StateFormula&, TruthValue)>&);

  SatTable() = default;

  std::size_t index_of(const StateFormula& g) const;

  std::vector<StateFormula> subs_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::vector<StateSet>> rows_;  // rows_[i][b.rank()]
};

// Fixpoint engine for the restricted fragment.  Throws FragmentError when
// the formula needs the full logic.
SatTable compute_sat(const KripkeStructure& m, const StateFormula& f);

struct CheckResult {
  bool holds = false;
  TruthValue value = TruthValue::bottom();     // meet over initial states
  std::vector<std::size_t> failing_initial;    // initial states below b0
};

// Does f hold with value at least b0 at every initial state?
CheckResult check(const KripkeStructure& m, const StateFormula& f,
                  TruthValue b0);

}  // namespace rmc

#endif  // ROBUSTMC_CHECKER_RCTL_HPP
