#ifndef ROBUSTMC_TESTS_SUPPORT_HPP
#define ROBUSTMC_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "robustmc/buchi.hpp"
#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/ltl.hpp"
#include "robustmc/state_set.hpp"

namespace rmc::test {

// Three-state fixture: s0 branches into a p-loop and an unlabelled loop.
// Small enough to evaluate by hand, rich enough to separate all five values.
inline const char* branch_model_text() {
  return
      "props p q\n"
      "state s0 init p q\n"
      "state s1 p\n"
      "state s2\n"
      "edge s0 s1\n"
      "edge s0 s2\n"
      "edge s1 s1\n"
      "edge s2 s2\n";
}

inline KripkeStructure branch_model() {
  return parse_model(branch_model_text());
}

// ---------------------------------------------------------------------------
// Seeded random formulas, single-temporal-operator fragment.

class RestrictedGen {
 public:
  RestrictedGen(std::uint64_t seed, bool allow_implication,
                std::vector<std::string> atoms = {"p0", "p1"})
      : rng_(seed),
        allow_implication_(allow_implication),
        atoms_(std::move(atoms)) {}

  // Node count of the result is at most max_size (>= 3 so quantifiers fit).
  StateFormula next(std::size_t max_size) { return gen_state(max_size); }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  StateFormula leaf() {
    if (pick(10) == 0) return StateFormula::truth();
    return StateFormula::atom(atoms_[pick(atoms_.size())]);
  }

  StateFormula gen_state(std::size_t budget) {
    // Weighted choice among the shapes that fit the budget; quantified
    // shapes dominate so temporal structure is actually exercised.
    std::vector<int> options{0};  // leaf
    if (budget >= 2) options.insert(options.end(), {1, 1});
    if (budget >= 3) options.insert(options.end(), {2, 2, 3, 3, 3, 3});
    if (budget >= 4) options.insert(options.end(), {4, 4, 4});
    switch (options[pick(options.size())]) {
      case 0:
        return leaf();
      case 1:
        return StateFormula::negation(gen_state(budget - 1));
      case 2: {
        const std::size_t l = 1 + pick(budget - 2);
        StateFormula lhs = gen_state(l);
        StateFormula rhs = gen_state(budget - 1 - l);
        switch (pick(allow_implication_ ? 3 : 2)) {
          case 0:
            return StateFormula::conj(std::move(lhs), std::move(rhs));
          case 1:
            return StateFormula::disj(std::move(lhs), std::move(rhs));
          default:
            return StateFormula::implies(std::move(lhs), std::move(rhs));
        }
      }
      case 3: {
        StateFormula sub = gen_state(budget - 2);
        PathFormula p = PathFormula::state(std::move(sub));
        switch (pick(3)) {
          case 0:
            p = PathFormula::next(std::move(p));
            break;
          case 1:
            p = PathFormula::eventually(std::move(p));
            break;
          default:
            p = PathFormula::always(std::move(p));
            break;
        }
        return quantify(std::move(p));
      }
      default: {
        const std::size_t l = 1 + pick(budget - 3);
        PathFormula lhs = PathFormula::state(gen_state(l));
        PathFormula rhs = PathFormula::state(gen_state(budget - 2 - l));
        PathFormula p =
            pick(2) == 0
                ? PathFormula::until(std::move(lhs), std::move(rhs))
                : PathFormula::weak_until(std::move(lhs), std::move(rhs));
        return quantify(std::move(p));
      }
    }
  }

  StateFormula quantify(PathFormula p) {
    return pick(2) == 0 ? StateFormula::exists(std::move(p))
                        : StateFormula::forall(std::move(p));
  }

  std::mt19937_64 rng_;
  bool allow_implication_;
  std::vector<std::string> atoms_;
};

// ---------------------------------------------------------------------------
// Seeded random formulas with freely nested path operators.

class FullGen {
 public:
  FullGen(std::uint64_t seed, std::vector<std::string> atoms = {"p0", "p1"})
      : rng_(seed), atoms_(std::move(atoms)) {}

  // A quantified formula of node count at most max_size (>= 3).
  StateFormula next(std::size_t max_size) {
    PathFormula p = gen_path(max_size - 1);
    return pick(2) == 0 ? StateFormula::exists(std::move(p))
                        : StateFormula::forall(std::move(p));
  }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  StateFormula state_leaf(std::size_t budget) {
    if (budget >= 2 && pick(4) == 0)
      return StateFormula::negation(state_leaf(budget - 1));
    if (pick(10) == 0) return StateFormula::truth();
    return StateFormula::atom(atoms_[pick(atoms_.size())]);
  }

  PathFormula gen_path(std::size_t budget) {
    std::vector<int> options{0};
    if (budget >= 2) options.insert(options.end(), {1, 2, 2, 2});
    if (budget >= 3) options.insert(options.end(), {3, 3, 4, 4});
    switch (options[pick(options.size())]) {
      case 0:
        return PathFormula::state(state_leaf(budget));
      case 1:
        return PathFormula::negation(gen_path(budget - 1));
      case 2: {
        PathFormula sub = gen_path(budget - 1);
        switch (pick(3)) {
          case 0:
            return PathFormula::next(std::move(sub));
          case 1:
            return PathFormula::eventually(std::move(sub));
          default:
            return PathFormula::always(std::move(sub));
        }
      }
      case 3: {
        const std::size_t l = 1 + pick(budget - 2);
        PathFormula lhs = gen_path(l);
        PathFormula rhs = gen_path(budget - 1 - l);
        switch (pick(3)) {
          case 0:
            return PathFormula::conj(std::move(lhs), std::move(rhs));
          case 1:
            return PathFormula::disj(std::move(lhs), std::move(rhs));
          default:
            return PathFormula::implies(std::move(lhs), std::move(rhs));
        }
      }
      default: {
        const std::size_t l = 1 + pick(budget - 2);
        PathFormula lhs = gen_path(l);
        PathFormula rhs = gen_path(budget - 1 - l);
        return pick(2) == 0
                   ? PathFormula::until(std::move(lhs), std::move(rhs))
                   : PathFormula::weak_until(std::move(lhs), std::move(rhs));
      }
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> atoms_;
};

// ---------------------------------------------------------------------------
// Seeded random linear-time formulas.

class LtlGen {
 public:
  LtlGen(std::uint64_t seed, std::size_t n_atoms) : rng_(seed) {
    const char* names[] = {"a", "b"};
    for (std::size_t i = 0; i < n_atoms && i < 2; ++i)
      atoms_.emplace_back(names[i]);
  }

  LtlFormula next(std::size_t max_size) { return gen(max_size); }

 private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  LtlFormula leaf() {
    if (atoms_.empty() || pick(8) == 0)
      return pick(2) == 0 ? LtlFormula::tt() : LtlFormula::ff();
    return LtlFormula::atom(atoms_[pick(atoms_.size())]);
  }

  LtlFormula gen(std::size_t budget) {
    std::vector<int> options{0};
    if (budget >= 2) options.insert(options.end(), {1, 1, 1});
    if (budget >= 3) options.insert(options.end(), {2, 2, 2});
    switch (options[pick(options.size())]) {
      case 0:
        return leaf();
      case 1: {
        LtlFormula sub = gen(budget - 1);
        switch (pick(4)) {
          case 0:
            return LtlFormula::negation(std::move(sub));
          case 1:
            return LtlFormula::next(std::move(sub));
          case 2:
            return LtlFormula::eventually(std::move(sub));
          default:
            return LtlFormula::always(std::move(sub));
        }
      }
      default: {
        const std::size_t l = 1 + pick(budget - 2);
        LtlFormula lhs = gen(l);
        LtlFormula rhs = gen(budget - 1 - l);
        switch (pick(6)) {
          case 0:
            return LtlFormula::conj(std::move(lhs), std::move(rhs));
          case 1:
            return LtlFormula::disj(std::move(lhs), std::move(rhs));
          case 2:
            return LtlFormula::implies(std::move(lhs), std::move(rhs));
          case 3:
            return LtlFormula::until(std::move(lhs), std::move(rhs));
          case 4:
            return LtlFormula::weak_until(std::move(lhs), std::move(rhs));
          default:
            return LtlFormula::release(std::move(lhs), std::move(rhs));
        }
      }
    }
  }

  std::mt19937_64 rng_;
  std::vector<std::string> atoms_;
};

// ---------------------------------------------------------------------------
// Ultimately periodic words as throwaway structures: state i carries the
// letter word[i], with edges i -> i+1 and a back edge into cycle_start.

inline KripkeStructure word_structure(const std::vector<std::vector<bool>>& word,
                                      std::size_t cycle_start,
                                      const std::vector<std::string>& atoms) {
  KripkeBuilder b;
  for (const std::string& a : atoms) b.add_prop(a);
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      if (word[i][a]) labels.push_back(atoms[a]);
    b.add_state("w" + std::to_string(i), i == 0, labels);
  }
  for (std::size_t i = 0; i + 1 < word.size(); ++i) b.add_edge(i, i + 1);
  b.add_edge(word.size() - 1, cycle_start);
  return b.build();
}

// Does the automaton accept the word, read from its first position?
inline bool product_accepts(const Nba& aut,
                            const std::vector<std::vector<bool>>& word,
                            std::size_t cycle_start,
                            const std::vector<std::string>& atoms) {
  const KripkeStructure w = word_structure(word, cycle_start, atoms);
  std::vector<StateSet> atom_sets;
  atom_sets.reserve(aut.atoms.size());
  for (const std::string& a : aut.atoms) {
    const auto idx = w.prop_index(a);
    atom_sets.push_back(idx ? w.states_with(*idx) : w.empty_set());
  }
  return nonempty_from(aut, w, atom_sets).test(0);
}

// Every word u v^omega over n_atoms atoms with 0 < |v| and |u|+|v| <= the
// bound, as (letters, cycle_start) pairs passed to fn.
template <typename Fn>
void for_each_word(std::size_t n_atoms, std::size_t max_total, Fn&& fn) {
  const std::size_t letters = std::size_t(1) << n_atoms;
  for (std::size_t total = 1; total <= max_total; ++total) {
    std::vector<std::vector<bool>> word(total,
                                        std::vector<bool>(n_atoms, false));
    std::size_t combos = 1;
    for (std::size_t i = 0; i < total; ++i) combos *= letters;
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t rest = code;
      for (std::size_t i = 0; i < total; ++i) {
        const std::size_t letter = rest % letters;
        rest /= letters;
        for (std::size_t a = 0; a < n_atoms; ++a)
          word[i][a] = (letter >> a) & 1;
      }
      for (std::size_t cycle_start = 0; cycle_start < total; ++cycle_start)
        fn(word, cycle_start);
    }
  }
}

}  // namespace rmc::test

#endif  // ROBUSTMC_TESTS_SUPPORT_HPP
