#include "robustmc/fixpoint.hpp"

#include <stdexcept>

namespace rmc {

StateSet f_exists(const KripkeStructure& m, const StateSet& t,
                  const StateSet& s1, const StateSet& s2) {
  StateSet out = s1;
  s2.for_each([&](std::size_t s) {
    if (m.post(s).intersects(t)) out.set(s);
  });
  return out;
}

StateSet f_forall(const KripkeStructure& m, const StateSet& t,
                  const StateSet& s1, const StateSet& s2) {
  StateSet out = s1;
  s2.for_each([&](std::size_t s) {
    if (t.contains(m.post(s))) out.set(s);
  });
  return out;
}

StateSet g_exists(const KripkeStructure& m, const StateSet& t1,
                  const StateSet& t2, const StateSet& s1, const StateSet& s2) {
  StateSet out = m.pre_exists(t1);
  out |= s1;
  s2.for_each([&](std::size_t s) {
    if (m.post(s).intersects(t2)) out.set(s);
  });
  return out;
}

StateSet g_forall(const KripkeStructure& m, const StateSet& t1,
                  const StateSet& t2, const StateSet& s1, const StateSet& s2) {
  StateSet out = m.pre_forall(t1);
  out |= s1;
  s2.for_each([&](std::size_t s) {
    if (t2.contains(m.post(s))) out.set(s);
  });
  return out;
}

namespace {

// Iterates to a fixed point; `ascending` selects the direction the Kleene
// chain must move.  n+2 iterations suffice for any monotone body over n
// states, so exceeding them means the body is not monotone.
StateSet iterate(std::size_t n, StateSet current,
                 const std::function<StateSet(const StateSet&)>& f,
                 bool ascending) {
  for (std::size_t round = 0; round <= n + 1; ++round) {
    StateSet next = f(current);
    const bool ok = ascending ? next.contains(current) : current.contains(next);
    if (!ok)
      throw std::logic_error("fixpoint body is not monotone: chain reversed");
    if (next == current) return current;
    current = std::move(next);
  }
  throw std::logic_error("fixpoint iteration failed to converge");
}

}  // namespace

StateSet lfp(std::size_t n,
             const std::function<StateSet(const StateSet&)>& f) {
  return iterate(n, StateSet(n), f, true);
}

StateSet gfp(std::size_t n,
             const std::function<StateSet(const StateSet&)>& f) {
  return iterate(n, StateSet::full(n), f, false);
}

StateSet lfp_gfp(std::size_t n,
                 const std::function<StateSet(const StateSet&,
                                              const StateSet&)>& g) {
  return lfp(n, [&](const StateSet& t1) {
    return gfp(n, [&](const StateSet& t2) { return g(t1, t2); });
  });
}

StateSet gfp_lfp(std::size_t n,
                 const std::function<StateSet(const StateSet&,
                                              const StateSet&)>& g) {
  return gfp(n, [&](const StateSet& t2) {
    return lfp(n, [&](const StateSet& t1) { return g(t1, t2); });
  });
}

}  // namespace rmc
