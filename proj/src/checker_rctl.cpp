#include "robustmc/checker_rctl.hpp"

#include <stdexcept>

#include "robustmc/fixpoint.hpp"

namespace rmc {

bool SatTable::has(const StateFormula& g) const {
  return index_.count(g.text()) != 0;
}

std::size_t SatTable::index_of(const StateFormula& g) const {
  auto it = index_.find(g.text());
  if (it == index_.end())
    throw std::out_of_range("no table rows for '" + g.text() + "'");
  return it->second;
}

const StateSet& SatTable::sat(const StateFormula& g, TruthValue b) const {
  return rows_[index_of(g)][std::size_t(b.rank())];
}

TruthValue SatTable::state_value(const StateFormula& g, std::size_t s) const {
  const std::vector<StateSet>& rows = rows_[index_of(g)];
  for (int rank = 4; rank > 0; --rank)
    if (rows[std::size_t(rank)].test(s)) return TruthValue::from_rank(rank);
  return TruthValue::bottom();
}

TruthValue SatTable::state_value(std::size_t s) const {
  return state_value(root(), s);
}

namespace {

// Row of a quantified subformula at one nonzero value, for the restricted
// fragment: one temporal operator, evaluated as a (possibly nested) fixpoint
// over the rows of its state operands.
StateSet restricted_quant_row(const KripkeStructure& m, const SatTable& t,
                              const StateFormula& g, TruthValue b) {
  const bool exists = g.kind() == StateKind::kExists;
  const PathFormula& p = g.path();

  auto operand = [&](const PathFormula& side) -> const StateSet& {
    return t.sat(side.state_sub(), b);
  };

  // F(T) with the operator's first/second slots bound.
  auto step = [&](const StateSet& s1, const StateSet& s2) {
    return std::function<StateSet(const StateSet&)>(
        [&m, exists, s1, s2](const StateSet& T) {
          return exists ? f_exists(m, T, s1, s2) : f_forall(m, T, s1, s2);
        });
  };
  auto nested = [&](const StateSet& s1, const StateSet& s2) {
    return std::function<StateSet(const StateSet&, const StateSet&)>(
        [&m, exists, s1, s2](const StateSet& T1, const StateSet& T2) {
          return exists ? g_exists(m, T1, T2, s1, s2)
                        : g_forall(m, T1, T2, s1, s2);
        });
  };

  const std::size_t n = m.num_states();
  const int level = b.level();  // 1 at the top value, 4 at the lowest nonzero

  switch (p.kind()) {
    case PathKind::kNext: {
      const StateSet& phi = operand(p.left());
      return exists ? m.pre_exists(phi) : m.pre_forall(phi);
    }
    case PathKind::kEventually:
      return lfp(n, step(operand(p.left()), m.full_set()));
    case PathKind::kAlways: {
      const StateSet& phi = operand(p.left());
      switch (level) {
        case 1:
          return gfp(n, step(m.empty_set(), phi));
        case 2:
          return lfp_gfp(n, nested(m.empty_set(), phi));
        case 3:
          return gfp_lfp(n, nested(m.empty_set(), phi));
        default:
          return lfp(n, step(phi, m.full_set()));
      }
    }
    case PathKind::kUntil:
      return lfp(n, step(operand(p.right()), operand(p.left())));
    case PathKind::kWeakUntil: {
      const StateSet& phi = operand(p.left());
      const StateSet& psi = operand(p.right());
      switch (level) {
        case 1:
          return gfp(n, step(psi, phi));
        case 2:
          return lfp_gfp(n, nested(psi, phi));
        case 3:
          return gfp_lfp(n, nested(psi, phi));
        default:
          return lfp(n, step(phi | psi, m.full_set()));
      }
    }
    default:
      throw std::logic_error("path operator outside the restricted fragment: " +
                             p.text());
  }
}

}  // namespace

namespace detail {

SatTable compute_sat_table(
    const KripkeStructure& m, const StateFormula& root,
    const std::function<StateSet(const KripkeStructure&, const SatTable&,
                                 const StateFormula&, TruthValue)>& quant_row) {
  SatTable t;
  t.subs_ = subformulas(root);
  const StateSet everything = m.full_set();

  for (const StateFormula& g : t.subs_) {
    // rows[rank] = sat(g, value of that rank); rank 0 is trivially full.
    std::vector<StateSet> rows(5, everything);
    for (int rank = 4; rank >= 1; --rank) {
      const TruthValue b = TruthValue::from_rank(rank);
      switch (g.kind()) {
        case StateKind::kTrue:
          break;  // full at every value
        case StateKind::kAtom: {
          auto prop = m.prop_index(g.atom_name());
          rows[std::size_t(rank)] =
              prop ? m.states_with(*prop) : m.empty_set();
          break;
        }
        case StateKind::kNot:
          rows[std::size_t(rank)] =
              everything - t.sat(g.left(), TruthValue::top());
          break;
        case StateKind::kAnd:
          rows[std::size_t(rank)] = t.sat(g.left(), b) & t.sat(g.right(), b);
          break;
        case StateKind::kOr:
          rows[std::size_t(rank)] = t.sat(g.left(), b) | t.sat(g.right(), b);
          break;
        case StateKind::kImplies: {
          if (rank == 4) {
            StateSet acc = everything;
            for (int r = 4; r >= 1; --r) {
              const TruthValue bp = TruthValue::from_rank(r);
              acc &= t.sat(g.right(), bp) | (everything - t.sat(g.left(), bp));
            }
            rows[4] = std::move(acc);
          } else {
            rows[std::size_t(rank)] = rows[4] | t.sat(g.right(), b);
          }
          break;
        }
        case StateKind::kExists:
        case StateKind::kForall:
          rows[std::size_t(rank)] = quant_row(m, t, g, b);
          break;
      }
    }
    for (int rank = 4; rank >= 1; --rank) {
      if (!rows[std::size_t(rank - 1)].contains(rows[std::size_t(rank)]))
        throw std::logic_error("truth rows are not antitone for '" + g.text() +
                               "'");
    }
    t.index_[g.text()] = t.rows_.size();
    t.rows_.push_back(std::move(rows));
  }
  return t;
}

}  // namespace detail

SatTable compute_sat(const KripkeStructure& m, const StateFormula& f) {
  if (auto why = fragment_violation(f, Fragment::kRestricted))
    throw FragmentError(*why);
  return detail::compute_sat_table(m, f, restricted_quant_row);
}

CheckResult check(const KripkeStructure& m, const StateFormula& f,
                  TruthValue b0) {
  const SatTable t = compute_sat(m, f);
  CheckResult r;
  r.value = TruthValue::top();  // meet over no states
  const StateSet& row = t.sat(f, b0);
  m.initial_states().for_each([&](std::size_t s) {
    r.value = meet(r.value, t.state_value(s));
    if (!row.test(s)) r.failing_initial.push_back(s);
  });
  r.holds = r.failing_initial.empty();
  return r;
}

}  // namespace rmc
