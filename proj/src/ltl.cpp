#include "robustmc/ltl.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace rmc {

namespace {

constexpr int kPrecImplies = 1;
constexpr int kPrecOr = 2;
constexpr int kPrecAnd = 3;
constexpr int kPrecBinaryTemporal = 4;
constexpr int kPrecUnary = 5;
constexpr int kPrecAtom = 6;

std::string wrap(const std::string& text, int prec, int min_prec) {
  return prec < min_prec ? "(" + text + ")" : text;
}

}  // namespace

struct LtlFormula::Node {
  LtlKind kind;
  std::string atom;
  std::optional<LtlFormula> l, r;
  std::size_t size = 1;
  std::string text;
  int prec = kPrecAtom;
};

LtlKind LtlFormula::kind() const { return node_->kind; }
const std::string& LtlFormula::atom_name() const { return node_->atom; }
const LtlFormula& LtlFormula::left() const { return *node_->l; }
const LtlFormula& LtlFormula::right() const { return *node_->r; }
std::size_t LtlFormula::size() const { return node_->size; }
const std::string& LtlFormula::text() const { return node_->text; }

LtlFormula LtlFormula::make(Node n) {
  return LtlFormula{std::make_shared<const Node>(std::move(n))};
}

LtlFormula LtlFormula::tt() {
  Node n{LtlKind::kTrue};
  n.text = "true";
  return make(std::move(n));
}

LtlFormula LtlFormula::ff() {
  Node n{LtlKind::kFalse};
  n.text = "false";
  return make(std::move(n));
}

LtlFormula LtlFormula::atom(std::string name) {
  Node n{LtlKind::kAtom};
  n.text = name;
  n.atom = std::move(name);
  return make(std::move(n));
}

LtlFormula LtlFormula::negation(LtlFormula f) {
  Node n{LtlKind::kNot};
  n.size = 1 + f.size();
  n.text = "!" + wrap(f.text(), f.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.l = std::move(f);
  return make(std::move(n));
}

namespace {

struct BinarySpec {
  const char* op;
  int prec;
  bool right_assoc;
};

BinarySpec binary_spec(LtlKind k) {
  switch (k) {
    case LtlKind::kAnd:
      return {"&", kPrecAnd, false};
    case LtlKind::kOr:
      return {"|", kPrecOr, false};
    case LtlKind::kImplies:
      return {"->", kPrecImplies, true};
    case LtlKind::kUntil:
      return {"U", kPrecBinaryTemporal, true};
    case LtlKind::kWeakUntil:
      return {"W", kPrecBinaryTemporal, true};
    case LtlKind::kRelease:
      return {"R", kPrecBinaryTemporal, true};
    default:
      throw std::logic_error("not a binary operator");
  }
}

}  // namespace

LtlFormula LtlFormula::binary(LtlKind kind, LtlFormula l, LtlFormula r) {
  const BinarySpec spec = binary_spec(kind);
  Node n{kind};
  n.size = 1 + l.size() + r.size();
  n.text = wrap(l.text(), l.node_->prec,
                spec.right_assoc ? spec.prec + 1 : spec.prec) +
           " " + spec.op + " " +
           wrap(r.text(), r.node_->prec,
                spec.right_assoc ? spec.prec : spec.prec + 1);
  n.prec = spec.prec;
  n.l = std::move(l);
  n.r = std::move(r);
  return make(std::move(n));
}

LtlFormula LtlFormula::unary(LtlKind kind, LtlFormula f, const char* op) {
  Node n{kind};
  n.size = 1 + f.size();
  n.text = std::string(op) + " " + wrap(f.text(), f.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.l = std::move(f);
  return make(std::move(n));
}

LtlFormula LtlFormula::conj(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kAnd, std::move(l), std::move(r));
}
LtlFormula LtlFormula::disj(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kOr, std::move(l), std::move(r));
}
LtlFormula LtlFormula::implies(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kImplies, std::move(l), std::move(r));
}
LtlFormula LtlFormula::next(LtlFormula f) {
  return unary(LtlKind::kNext, std::move(f), "X");
}
LtlFormula LtlFormula::eventually(LtlFormula f) {
  return unary(LtlKind::kEventually, std::move(f), "F");
}
LtlFormula LtlFormula::always(LtlFormula f) {
  return unary(LtlKind::kAlways, std::move(f), "G");
}
LtlFormula LtlFormula::until(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kUntil, std::move(l), std::move(r));
}
LtlFormula LtlFormula::weak_until(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kWeakUntil, std::move(l), std::move(r));
}
LtlFormula LtlFormula::release(LtlFormula l, LtlFormula r) {
  return binary(LtlKind::kRelease, std::move(l), std::move(r));
}

std::vector<std::string> LtlFormula::atoms() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::function<void(const LtlFormula&)> walk = [&](const LtlFormula& f) {
    switch (f.kind()) {
      case LtlKind::kTrue:
      case LtlKind::kFalse:
        return;
      case LtlKind::kAtom:
        if (seen.insert(f.atom_name()).second) out.push_back(f.atom_name());
        return;
      case LtlKind::kNot:
      case LtlKind::kNext:
      case LtlKind::kEventually:
      case LtlKind::kAlways:
        walk(f.left());
        return;
      default:
        walk(f.left());
        walk(f.right());
        return;
    }
  };
  walk(*this);
  return out;
}

namespace {

LtlFormula nnf_rec(const LtlFormula& f, bool negated);

LtlFormula nnf_not(const LtlFormula& f) { return nnf_rec(f, true); }
LtlFormula nnf_pos(const LtlFormula& f) { return nnf_rec(f, false); }

LtlFormula nnf_rec(const LtlFormula& f, bool negated) {
  switch (f.kind()) {
    case LtlKind::kTrue:
      return negated ? LtlFormula::ff() : LtlFormula::tt();
    case LtlKind::kFalse:
      return negated ? LtlFormula::tt() : LtlFormula::ff();
    case LtlKind::kAtom:
      return negated ? LtlFormula::negation(f) : f;
    case LtlKind::kNot:
      return nnf_rec(f.left(), !negated);
    case LtlKind::kAnd:
      return negated ? LtlFormula::disj(nnf_not(f.left()), nnf_not(f.right()))
                     : LtlFormula::conj(nnf_pos(f.left()), nnf_pos(f.right()));
    case LtlKind::kOr:
      return negated ? LtlFormula::conj(nnf_not(f.left()), nnf_not(f.right()))
                     : LtlFormula::disj(nnf_pos(f.left()), nnf_pos(f.right()));
    case LtlKind::kImplies:
      return negated ? LtlFormula::conj(nnf_pos(f.left()), nnf_not(f.right()))
                     : LtlFormula::disj(nnf_not(f.left()), nnf_pos(f.right()));
    case LtlKind::kNext:
      return LtlFormula::next(nnf_rec(f.left(), negated));
    case LtlKind::kEventually:
      return negated
                 ? LtlFormula::release(LtlFormula::ff(), nnf_not(f.left()))
                 : LtlFormula::until(LtlFormula::tt(), nnf_pos(f.left()));
    case LtlKind::kAlways:
      return negated
                 ? LtlFormula::until(LtlFormula::tt(), nnf_not(f.left()))
                 : LtlFormula::release(LtlFormula::ff(), nnf_pos(f.left()));
    case LtlKind::kUntil:
      return negated
                 ? LtlFormula::release(nnf_not(f.left()), nnf_not(f.right()))
                 : LtlFormula::until(nnf_pos(f.left()), nnf_pos(f.right()));
    case LtlKind::kRelease:
      return negated
                 ? LtlFormula::until(nnf_not(f.left()), nnf_not(f.right()))
                 : LtlFormula::release(nnf_pos(f.left()), nnf_pos(f.right()));
    case LtlKind::kWeakUntil: {
      // phi W psi == psi R (phi | psi)
      LtlFormula rewritten = LtlFormula::release(
          f.right(), LtlFormula::disj(f.left(), f.right()));
      return nnf_rec(rewritten, negated);
    }
  }
  throw std::logic_error("unreachable ltl kind");
}

}  // namespace

LtlFormula ltl_nnf(const LtlFormula& f) { return nnf_rec(f, false); }

// ---------------------------------------------------------------------------
// Evaluation on ultimately periodic words

namespace {

class LassoEvaluator {
 public:
  LassoEvaluator(const std::vector<std::string>& atoms,
                 const std::vector<std::vector<bool>>& word,
                 std::size_t cycle_start)
      : atoms_(atoms), word_(word), cycle_start_(cycle_start) {
    if (word.empty()) throw std::invalid_argument("empty lasso word");
    if (cycle_start >= word.size())
      throw std::invalid_argument("cycle start out of range");
  }

  std::vector<bool> eval(const LtlFormula& f) {
    auto it = memo_.find(f.text());
    if (it != memo_.end()) return it->second;
    std::vector<bool> result = compute(f);
    memo_.emplace(f.text(), result);
    return result;
  }

 private:
  std::size_t n() const { return word_.size(); }
  std::size_t succ(std::size_t c) const {
    return c + 1 < n() ? c + 1 : cycle_start_;
  }

  std::vector<bool> compute(const LtlFormula& f) {
    const std::size_t len = n();
    std::vector<bool> out(len, false);
    switch (f.kind()) {
      case LtlKind::kTrue:
        out.assign(len, true);
        return out;
      case LtlKind::kFalse:
        return out;
      case LtlKind::kAtom: {
        std::size_t col = atoms_.size();
        for (std::size_t a = 0; a < atoms_.size(); ++a)
          if (atoms_[a] == f.atom_name()) col = a;
        for (std::size_t c = 0; c < len; ++c)
          out[c] = col < atoms_.size() && word_[c][col];
        return out;
      }
      case LtlKind::kNot: {
        auto v = eval(f.left());
        for (std::size_t c = 0; c < len; ++c) out[c] = !v[c];
        return out;
      }
      case LtlKind::kAnd: {
        auto l = eval(f.left()), r = eval(f.right());
        for (std::size_t c = 0; c < len; ++c) out[c] = l[c] && r[c];
        return out;
      }
      case LtlKind::kOr: {
        auto l = eval(f.left()), r = eval(f.right());
        for (std::size_t c = 0; c < len; ++c) out[c] = l[c] || r[c];
        return out;
      }
      case LtlKind::kImplies: {
        auto l = eval(f.left()), r = eval(f.right());
        for (std::size_t c = 0; c < len; ++c) out[c] = !l[c] || r[c];
        return out;
      }
      case LtlKind::kNext: {
        auto v = eval(f.left());
        for (std::size_t c = 0; c < len; ++c) out[c] = v[succ(c)];
        return out;
      }
      case LtlKind::kEventually:
        return least_fixpoint(eval(f.left()), std::vector<bool>(len, true));
      case LtlKind::kAlways:
        return greatest_fixpoint(std::vector<bool>(len, false),
                                 eval(f.left()));
      case LtlKind::kUntil:
        return least_fixpoint(eval(f.right()), eval(f.left()));
      case LtlKind::kWeakUntil:
        return greatest_fixpoint(eval(f.right()), eval(f.left()));
      case LtlKind::kRelease: {
        // l R r == r W (l & r)
        auto l = eval(f.left()), r = eval(f.right());
        std::vector<bool> both(len);
        for (std::size_t c = 0; c < len; ++c) both[c] = l[c] && r[c];
        return greatest_fixpoint(both, r);
      }
    }
    throw std::logic_error("unreachable ltl kind");
  }

  // z(c) = goal(c) | (hold(c) & z(succ(c))); least solution starts false,
  // greatest starts true.  Convergence within n rounds.
  std::vector<bool> solve(std::vector<bool> z, const std::vector<bool>& goal,
                          const std::vector<bool>& hold) {
    const std::size_t len = n();
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t c = len; c-- > 0;) {
        bool v = goal[c] || (hold[c] && z[succ(c)]);
        if (v != z[c]) {
          z[c] = v;
          changed = true;
        }
      }
    }
    return z;
  }

  std::vector<bool> least_fixpoint(const std::vector<bool>& goal,
                                   const std::vector<bool>& hold) {
    return solve(std::vector<bool>(n(), false), goal, hold);
  }

  std::vector<bool> greatest_fixpoint(const std::vector<bool>& goal,
                                      const std::vector<bool>& hold) {
    return solve(std::vector<bool>(n(), true), goal, hold);
  }

  const std::vector<std::string>& atoms_;
  const std::vector<std::vector<bool>>& word_;
  std::size_t cycle_start_;
  std::map<std::string, std::vector<bool>> memo_;
};

}  // namespace

std::vector<bool> eval_ltl_lasso_classes(
    const LtlFormula& f, const std::vector<std::string>& atoms,
    const std::vector<std::vector<bool>>& word, std::size_t cycle_start) {
  LassoEvaluator ev(atoms, word, cycle_start);
  return ev.eval(f);
}

bool eval_ltl_lasso(const LtlFormula& f, const std::vector<std::string>& atoms,
                    const std::vector<std::vector<bool>>& word,
                    std::size_t cycle_start) {
  return eval_ltl_lasso_classes(f, atoms, word, cycle_start)[0];
}

}  // namespace rmc
