#include "robustmc/oracle.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>

namespace rmc {

std::size_t Lasso::state_at_class(std::size_t c) const {
  return c < prefix.size() ? prefix[c] : cycle[c - prefix.size()];
}

std::string Lasso::to_string(const KripkeStructure& m) const {
  std::string out;
  for (std::size_t s : prefix) {
    out += m.state_name(s);
    out += ' ';
  }
  out += '(';
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i > 0) out += ' ';
    out += m.state_name(cycle[i]);
  }
  out += ")^w";
  return out;
}

bool valid_lasso(const KripkeStructure& m, const Lasso& l) {
  if (l.cycle.empty()) return false;
  const std::size_t n = m.num_states();
  for (std::size_t s : l.prefix)
    if (s >= n) return false;
  for (std::size_t s : l.cycle)
    if (s >= n) return false;
  for (std::size_t i = 0; i + 1 < l.prefix.size(); ++i)
    if (!m.post(l.prefix[i]).test(l.prefix[i + 1])) return false;
  if (!l.prefix.empty() && !m.post(l.prefix.back()).test(l.cycle.front()))
    return false;
  for (std::size_t i = 0; i + 1 < l.cycle.size(); ++i)
    if (!m.post(l.cycle[i]).test(l.cycle[i + 1])) return false;
  return m.post(l.cycle.back()).test(l.cycle.front());
}

namespace {

class LassoEnumerator {
 public:
  LassoEnumerator(const KripkeStructure& m, std::size_t max_prefix,
                  std::size_t max_cycle, bool closed_walks,
                  const std::function<bool(const Lasso&)>& visit)
      : m_(m),
        max_prefix_(max_prefix),
        max_cycle_(max_cycle),
        closed_walks_(closed_walks),
        visit_(visit) {}

  void run(std::size_t start) {
    for (std::size_t len = 0; len < max_prefix_ && !stopped_; ++len) {
      current_.prefix.clear();
      if (len == 0) {
        cycles_from(start);
      } else {
        current_.prefix.push_back(start);
        extend_prefix(len);
        current_.prefix.pop_back();
      }
    }
  }

 private:
  // Grow the prefix to exactly `len` states, then hand each successor of its
  // last state to the cycle enumeration as the cycle anchor.
  void extend_prefix(std::size_t len) {
    if (stopped_) return;
    const std::size_t last = current_.prefix.back();
    if (current_.prefix.size() == len) {
      m_.post(last).for_each([&](std::size_t anchor) {
        if (!stopped_) cycles_from(anchor);
      });
      return;
    }
    m_.post(last).for_each([&](std::size_t next) {
      if (stopped_) return;
      current_.prefix.push_back(next);
      extend_prefix(len);
      current_.prefix.pop_back();
    });
  }

  void cycles_from(std::size_t anchor) {
    current_.cycle.push_back(anchor);
    grow_cycle(anchor);
    current_.cycle.pop_back();
  }

  // Depth-first: emit whenever the wrap edge closes the cycle, then extend.
  void grow_cycle(std::size_t anchor) {
    if (stopped_) return;
    const std::size_t last = current_.cycle.back();
    if (m_.post(last).test(anchor)) {
      if (!visit_(current_)) {
        stopped_ = true;
        return;
      }
    }
    if (current_.cycle.size() >= max_cycle_) return;
    m_.post(last).for_each([&](std::size_t next) {
      if (stopped_) return;
      if (!closed_walks_) {
        for (std::size_t seen : current_.cycle)
          if (seen == next) return;
      }
      current_.cycle.push_back(next);
      grow_cycle(anchor);
      current_.cycle.pop_back();
    });
  }

  const KripkeStructure& m_;
  std::size_t max_prefix_;
  std::size_t max_cycle_;
  bool closed_walks_;
  const std::function<bool(const Lasso&)>& visit_;
  Lasso current_;
  bool stopped_ = false;
};

}  // namespace

void for_each_lasso(const KripkeStructure& m, std::size_t start,
                    std::size_t max_prefix, std::size_t max_cycle,
                    bool closed_walk_cycles,
                    const std::function<bool(const Lasso&)>& visit) {
  if (start >= m.num_states())
    throw std::out_of_range("start state out of range");
  LassoEnumerator e(m, max_prefix, max_cycle, closed_walk_cycles, visit);
  e.run(start);
}

std::vector<Lasso> enumerate_lassos(const KripkeStructure& m,
                                    std::size_t start, std::size_t max_prefix,
                                    std::size_t max_cycle) {
  std::vector<Lasso> out;
  for_each_lasso(m, start, max_prefix, max_cycle, false,
                 [&](const Lasso& l) {
                   out.push_back(l);
                   return true;
                 });
  return out;
}

// ---------------------------------------------------------------------------
// Path evaluation over suffix classes

namespace {

class PathEvaluator {
 public:
  PathEvaluator(const Lasso& l, const StateValueFn& state_values)
      : lasso_(l), state_values_(state_values), n_(l.length()),
        cycle_start_(l.prefix.size()) {}

  TruthValue at_origin(const PathFormula& p) { return eval(p)[0]; }

 private:
  using Values = std::vector<TruthValue>;

  std::size_t succ(std::size_t c) const {
    return c + 1 < n_ ? c + 1 : cycle_start_;
  }
  std::size_t reach_begin(std::size_t c) const {
    return c < cycle_start_ ? c : cycle_start_;
  }

  const Values& eval(const PathFormula& p) {
    auto it = memo_.find(p.text());
    if (it != memo_.end()) return it->second;
    return memo_.emplace(p.text(), compute(p)).first->second;
  }

  Values compute(const PathFormula& p) {
    Values out(n_, TruthValue::bottom());
    switch (p.kind()) {
      case PathKind::kState: {
        const StateFormula& f = p.state_sub();
        for (std::size_t c = 0; c < n_; ++c)
          out[c] = state_values_(f, lasso_.state_at_class(c));
        return out;
      }
      case PathKind::kNot: {
        const Values& v = eval(p.left());
        for (std::size_t c = 0; c < n_; ++c) out[c] = negate(v[c]);
        return out;
      }
      case PathKind::kAnd: {
        const Values& l = eval(p.left());
        const Values& r = eval(p.right());
        for (std::size_t c = 0; c < n_; ++c) out[c] = meet(l[c], r[c]);
        return out;
      }
      case PathKind::kOr: {
        const Values& l = eval(p.left());
        const Values& r = eval(p.right());
        for (std::size_t c = 0; c < n_; ++c) out[c] = join(l[c], r[c]);
        return out;
      }
      case PathKind::kImplies: {
        const Values& l = eval(p.left());
        const Values& r = eval(p.right());
        for (std::size_t c = 0; c < n_; ++c) out[c] = implies(l[c], r[c]);
        return out;
      }
      case PathKind::kNext: {
        const Values& v = eval(p.left());
        for (std::size_t c = 0; c < n_; ++c) out[c] = v[succ(c)];
        return out;
      }
      case PathKind::kEventually: {
        // Join of the operand over every reachable suffix.
        const Values& v = eval(p.left());
        for (std::size_t c = 0; c < n_; ++c) {
          TruthValue acc = TruthValue::bottom();
          for (std::size_t r = reach_begin(c); r < n_; ++r)
            acc = join(acc, v[r]);
          out[c] = acc;
        }
        return out;
      }
      case PathKind::kAlways: {
        // Bits: always / eventually-always / infinitely-often / eventually.
        // The middle two depend only on the cycle classes.
        const Values& v = eval(p.left());
        bool ea = true, io = false;
        for (std::size_t c = cycle_start_; c < n_; ++c) {
          ea = ea && v[c].bit(2);
          io = io || v[c].bit(3);
        }
        for (std::size_t c = 0; c < n_; ++c) {
          bool always = true, eventually = false;
          for (std::size_t r = reach_begin(c); r < n_; ++r) {
            always = always && v[r].bit(1);
            eventually = eventually || v[r].bit(4);
          }
          out[c] = assemble(always, ea, io, eventually);
        }
        return out;
      }
      case PathKind::kUntil: {
        // Componentwise least solution of z = psi | (phi & next z); exact on
        // the chain domain.
        const Values& phi = eval(p.left());
        const Values& psi = eval(p.right());
        Values z(n_, TruthValue::bottom());
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t c = n_; c-- > 0;) {
            TruthValue v = join(psi[c], meet(phi[c], z[succ(c)]));
            if (v != z[c]) {
              z[c] = v;
              changed = true;
            }
          }
        }
        return z;
      }
      case PathKind::kWeakUntil: {
        const Values& phi = eval(p.left());
        const Values& psi = eval(p.right());
        // First bit: classical weak until, greatest solution.
        std::vector<char> hold(n_, 1);
        for (bool changed = true; changed;) {
          changed = false;
          for (std::size_t c = n_; c-- > 0;) {
            const char v =
                psi[c].bit(1) || (phi[c].bit(1) && hold[succ(c)]) ? 1 : 0;
            if (v != hold[c]) {
              hold[c] = v;
              changed = true;
            }
          }
        }
        bool phi_ea = true, phi_io = false;
        for (std::size_t c = cycle_start_; c < n_; ++c) {
          phi_ea = phi_ea && phi[c].bit(2);
          phi_io = phi_io || phi[c].bit(3);
        }
        for (std::size_t c = 0; c < n_; ++c) {
          bool psi2 = false, psi3 = false, any4 = false;
          for (std::size_t r = reach_begin(c); r < n_; ++r) {
            psi2 = psi2 || psi[r].bit(2);
            psi3 = psi3 || psi[r].bit(3);
            any4 = any4 || phi[r].bit(4) || psi[r].bit(4);
          }
          out[c] = assemble(hold[c] != 0, psi2 || phi_ea, psi3 || phi_io,
                            any4);
        }
        return out;
      }
    }
    throw std::logic_error("unreachable path kind");
  }

  static TruthValue assemble(bool b1, bool b2, bool b3, bool b4) {
    auto v = TruthValue::from_bits(b1, b2, b3, b4);
    assert(v.has_value());  // the per-bit extrema are monotone by containment
    if (!v) throw std::logic_error("path bits out of order");
    return *v;
  }

  const Lasso& lasso_;
  const StateValueFn& state_values_;
  std::size_t n_;
  std::size_t cycle_start_;
  std::map<std::string, Values> memo_;
};

}  // namespace

TruthValue eval_path(const KripkeStructure& m, const Lasso& l,
                     const PathFormula& p, const StateValueFn& state_values) {
  if (!valid_lasso(m, l)) throw std::invalid_argument("invalid lasso");
  PathEvaluator ev(l, state_values);
  return ev.at_origin(p);
}

// ---------------------------------------------------------------------------
// State-level brute force

namespace {

class BruteforceOracle {
 public:
  BruteforceOracle(const KripkeStructure& m, const OracleLimits& limits)
      : m_(m), limits_(limits) {}

  TruthValue state(std::size_t s, const StateFormula& f) {
    const auto key = std::make_pair(s, f.text());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const TruthValue v = compute(s, f);
    memo_.emplace(key, v);
    return v;
  }

  // Join/meet over every lasso, remembering the first strict improvement so
  // the reported lasso is the first one attaining the final optimum.
  struct QuantifierRun {
    TruthValue value;
    std::optional<Lasso> extremal;
    std::optional<TruthValue> extremal_value;
  };

  QuantifierRun quantify(std::size_t s, const StateFormula& f) {
    const bool exists = f.kind() == StateKind::kExists;
    assert(exists || f.kind() == StateKind::kForall);
    QuantifierRun run{exists ? TruthValue::bottom() : TruthValue::top(), {},
                      {}};
    const StateValueFn fn = [this](const StateFormula& g, std::size_t st) {
      return state(st, g);
    };
    bool any = false;
    for_each_lasso(
        m_, s, limits_.max_prefix, limits_.max_cycle,
        limits_.closed_walk_cycles, [&](const Lasso& l) {
          any = true;
          const TruthValue v = eval_path(m_, l, f.path(), fn);
          const TruthValue next = exists ? join(run.value, v)
                                         : meet(run.value, v);
          if (!run.extremal || next != run.value) {
            run.extremal = l;
            run.extremal_value = v;
          }
          run.value = next;
          // The optimum cannot move past the lattice ends.
          return exists ? run.value != TruthValue::top()
                        : run.value != TruthValue::bottom();
        });
    if (!any)
      throw std::runtime_error("no lasso within the oracle limits from '" +
                               m_.state_name(s) + "'");
    return run;
  }

 private:
  TruthValue compute(std::size_t s, const StateFormula& f) {
    switch (f.kind()) {
      case StateKind::kTrue:
        return TruthValue::top();
      case StateKind::kAtom: {
        const auto prop = m_.prop_index(f.atom_name());
        return prop && m_.state_has_prop(s, *prop) ? TruthValue::top()
                                                   : TruthValue::bottom();
      }
      case StateKind::kNot:
        return negate(state(s, f.left()));
      case StateKind::kAnd:
        return meet(state(s, f.left()), state(s, f.right()));
      case StateKind::kOr:
        return join(state(s, f.left()), state(s, f.right()));
      case StateKind::kImplies:
        return implies(state(s, f.left()), state(s, f.right()));
      case StateKind::kExists:
      case StateKind::kForall:
        return quantify(s, f).value;
    }
    throw std::logic_error("unreachable state kind");
  }

  const KripkeStructure& m_;
  OracleLimits limits_;
  std::map<std::pair<std::size_t, std::string>, TruthValue> memo_;
};

}  // namespace

TruthValue eval_state_bruteforce(const KripkeStructure& m, std::size_t s,
                                 const StateFormula& f,
                                 const OracleLimits& limits) {
  BruteforceOracle oracle(m, limits);
  return oracle.state(s, f);
}

TruthValue eval_state_bruteforce(const KripkeStructure& m, std::size_t s,
                                 const StateFormula& f, std::size_t bound) {
  return eval_state_bruteforce(m, s, f, OracleLimits{bound, bound, false});
}

std::optional<ExtremalLasso> extremal_lasso(const KripkeStructure& m,
                                            std::size_t s,
                                            const StateFormula& f,
                                            const OracleLimits& limits) {
  if (f.kind() != StateKind::kExists && f.kind() != StateKind::kForall)
    throw std::invalid_argument(
        "extremal lassos exist only for quantified formulas: " + f.text());
  BruteforceOracle oracle(m, limits);
  BruteforceOracle::QuantifierRun run;
  try {
    run = oracle.quantify(s, f);
  } catch (const std::runtime_error&) {
    return std::nullopt;  // no lasso within the limits
  }
  if (!run.extremal) return std::nullopt;
  return ExtremalLasso{*run.extremal, *run.extremal_value, run.value};
}

// ---------------------------------------------------------------------------
// Classical reference semantics

namespace {

StateSet sat_ctl_rec(const KripkeStructure& m, const StateFormula& f) {
  const StateSet full = m.full_set();
  switch (f.kind()) {
    case StateKind::kTrue:
      return full;
    case StateKind::kAtom: {
      const auto prop = m.prop_index(f.atom_name());
      return prop ? m.states_with(*prop) : m.empty_set();
    }
    case StateKind::kNot:
      return full - sat_ctl_rec(m, f.left());
    case StateKind::kAnd:
      return sat_ctl_rec(m, f.left()) & sat_ctl_rec(m, f.right());
    case StateKind::kOr:
      return sat_ctl_rec(m, f.left()) | sat_ctl_rec(m, f.right());
    case StateKind::kImplies:
      return (full - sat_ctl_rec(m, f.left())) | sat_ctl_rec(m, f.right());
    case StateKind::kExists:
    case StateKind::kForall:
      break;
  }

  // Exists-form primitives; the universal cases reduce through negation.
  auto eu = [&](const StateSet& hold, const StateSet& goal) {
    StateSet t = goal;
    for (;;) {
      StateSet next = goal | (hold & m.pre_exists(t));
      if (next == t) return t;
      t = std::move(next);
    }
  };
  auto eg = [&](const StateSet& hold) {
    StateSet t = hold;
    for (;;) {
      StateSet next = hold & m.pre_exists(t);
      if (next == t) return t;
      t = std::move(next);
    }
  };

  const bool exists = f.kind() == StateKind::kExists;
  const PathFormula& p = f.path();
  const StateSet sphi = sat_ctl_rec(m, p.left().state_sub());

  switch (p.kind()) {
    case PathKind::kNext:
      return exists ? m.pre_exists(sphi) : m.pre_forall(sphi);
    case PathKind::kEventually:
      return exists ? eu(full, sphi) : full - eg(full - sphi);
    case PathKind::kAlways:
      return exists ? eg(sphi) : full - eu(full, full - sphi);
    case PathKind::kUntil: {
      const StateSet spsi = sat_ctl_rec(m, p.right().state_sub());
      if (exists) return eu(sphi, spsi);
      const StateSet npsi = full - spsi;
      return full - (eu(npsi, (full - sphi) & npsi) | eg(npsi));
    }
    case PathKind::kWeakUntil: {
      const StateSet spsi = sat_ctl_rec(m, p.right().state_sub());
      if (exists) return eu(sphi, spsi) | eg(sphi);
      const StateSet npsi = full - spsi;
      return full - eu(npsi, (full - sphi) & npsi);
    }
    default:
      throw std::logic_error("path operator outside the classical shape: " +
                             p.text());
  }
}

}  // namespace

StateSet sat_ctl(const KripkeStructure& m, const StateFormula& f) {
  if (auto why = fragment_violation(f, Fragment::kClassical))
    throw FragmentError(*why);
  return sat_ctl_rec(m, f);
}

bool eval_ctl(const KripkeStructure& m, std::size_t s, const StateFormula& f) {
  return sat_ctl(m, f).test(s);
}

}  // namespace rmc
