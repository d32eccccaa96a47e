#include "robustmc/checker_rctlstar.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "robustmc/buchi.hpp"

namespace rmc {

namespace {

std::string level_atom(const std::string& base, int level) {
  return base + "@" + std::to_string(level);
}

}  // namespace

LtlFormula translate_tk(const PathFormula& p, int level) {
  if (level < 1 || level > 4)
    throw std::invalid_argument("translation level must be 1..4");
  switch (p.kind()) {
    case PathKind::kState: {
      const StateFormula& s = p.state_sub();
      if (s.kind() != StateKind::kAtom)
        throw std::logic_error(
            "state operands must be abstracted into atoms before "
            "translation: " +
            s.text());
      return LtlFormula::atom(level_atom(s.atom_name(), level));
    }
    case PathKind::kNot:
      return LtlFormula::negation(translate_tk(p.left(), 1));
    case PathKind::kAnd:
      return LtlFormula::conj(translate_tk(p.left(), level),
                              translate_tk(p.right(), level));
    case PathKind::kOr:
      return LtlFormula::disj(translate_tk(p.left(), level),
                              translate_tk(p.right(), level));
    case PathKind::kImplies: {
      LtlFormula here = LtlFormula::implies(translate_tk(p.left(), level),
                                            translate_tk(p.right(), level));
      if (level == 4) return here;
      return LtlFormula::conj(std::move(here), translate_tk(p, level + 1));
    }
    case PathKind::kNext:
      return LtlFormula::next(translate_tk(p.left(), level));
    case PathKind::kEventually:
      return LtlFormula::eventually(translate_tk(p.left(), level));
    case PathKind::kAlways: {
      LtlFormula sub = translate_tk(p.left(), level);
      switch (level) {
        case 1:
          return LtlFormula::always(std::move(sub));
        case 2:
          return LtlFormula::eventually(LtlFormula::always(std::move(sub)));
        case 3:
          return LtlFormula::always(LtlFormula::eventually(std::move(sub)));
        default:
          return LtlFormula::eventually(std::move(sub));
      }
    }
    case PathKind::kUntil:
      return LtlFormula::until(translate_tk(p.left(), level),
                               translate_tk(p.right(), level));
    case PathKind::kWeakUntil: {
      LtlFormula l = translate_tk(p.left(), level);
      LtlFormula r = translate_tk(p.right(), level);
      switch (level) {
        case 1:
          return LtlFormula::weak_until(std::move(l), std::move(r));
        case 2:
          return LtlFormula::disj(
              LtlFormula::eventually(LtlFormula::always(std::move(l))),
              LtlFormula::eventually(std::move(r)));
        case 3:
          return LtlFormula::disj(
              LtlFormula::always(LtlFormula::eventually(std::move(l))),
              LtlFormula::eventually(std::move(r)));
        default:
          return LtlFormula::disj(LtlFormula::eventually(std::move(l)),
                                  LtlFormula::eventually(std::move(r)));
      }
    }
  }
  throw std::logic_error("unreachable path kind");
}

namespace {

// Row of a quantified subformula at one nonzero value for the full logic.
StateSet star_quant_row(const KripkeStructure& m, const SatTable& t,
                        const StateFormula& g, TruthValue b) {
  const bool exists = g.kind() == StateKind::kExists;
  PathSkeleton skeleton = maximal_state_subformulas(g.path());

  LtlFormula ltl = translate_tk(skeleton.rewritten, b.level());
  if (!exists) ltl = LtlFormula::negation(ltl);
  const Nba aut = degeneralize(ltl_to_buchi(ltl));

  std::map<std::string, const StateFormula*> originals;
  for (const StateSubstitution& sub : skeleton.substitutions)
    originals[sub.atom] = &sub.original;

  // Ground "base@j" in the rows already computed for the state subformulas.
  std::vector<StateSet> atom_sets;
  atom_sets.reserve(aut.atoms.size());
  for (const std::string& name : aut.atoms) {
    const auto at = name.rfind('@');
    if (at == std::string::npos)
      throw std::logic_error("automaton atom without a level tag: " + name);
    const StateFormula& original = *originals.at(name.substr(0, at));
    const int level = std::stoi(name.substr(at + 1));
    atom_sets.push_back(t.sat(original, TruthValue::from_level(level)));
  }

  // Exists: some matched path.  Forall: no path matching the negation.
  const StateSet some = nonempty_from(aut, m, atom_sets);
  return exists ? some : m.full_set() - some;
}

}  // namespace

SatTable compute_sat_star(const KripkeStructure& m, const StateFormula& f) {
  return detail::compute_sat_table(m, f, star_quant_row);
}

CheckResult check_star(const KripkeStructure& m, const StateFormula& f,
                       TruthValue b0) {
  const SatTable t = compute_sat_star(m, f);
  CheckResult r;
  r.value = TruthValue::top();
  const StateSet& row = t.sat(f, b0);
  m.initial_states().for_each([&](std::size_t s) {
    r.value = meet(r.value, t.state_value(s));
    if (!row.test(s)) r.failing_initial.push_back(s);
  });
  r.holds = r.failing_initial.empty();
  return r;
}

}  // namespace rmc
