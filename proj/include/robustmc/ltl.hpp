#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rmc {

enum class LtlKind : std::uint8_t {
  kTrue,
  kFalse,
  kAtom,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kNext,
  kEventually,
  kAlways,
  kUntil,
  kWeakUntil,
  kRelease,
};

// Classical linear-time formula over named atoms.  Release is the dual of
// until; it only appears through normalisation.
class LtlFormula {
 public:
  LtlKind kind() const;
  const std::string& atom_name() const;
  const LtlFormula& left() const;   // unary operand or left child
  const LtlFormula& right() const;

  std::size_t size() const;
  const std::string& text() const;

  static LtlFormula tt();
  static LtlFormula ff();
  static LtlFormula atom(std::string name);
  static LtlFormula negation(LtlFormula f);
  static LtlFormula conj(LtlFormula l, LtlFormula r);
  static LtlFormula disj(LtlFormula l, LtlFormula r);
  static LtlFormula implies(LtlFormula l, LtlFormula r);
  static LtlFormula next(LtlFormula f);
  static LtlFormula eventually(LtlFormula f);
  static LtlFormula always(LtlFormula f);
  static LtlFormula until(LtlFormula l, LtlFormula r);
  static LtlFormula weak_until(LtlFormula l, LtlFormula r);
  static LtlFormula release(LtlFormula l, LtlFormula r);

  // Atom names in first-occurrence order.
  std::vector<std::string> atoms() const;

  friend bool operator==(const LtlFormula& a, const LtlFormula& b) {
    return a.text() == b.text();
  }
  friend bool operator!=(const LtlFormula& a, const LtlFormula& b) {
    return !(a == b);
  }

 private:
  struct Node;
  explicit LtlFormula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static LtlFormula make(Node n);
  static LtlFormula binary(LtlKind kind, LtlFormula l, LtlFormula r);
  static LtlFormula unary(LtlKind kind, LtlFormula f, const char* op);
  std::shared_ptr<const Node> node_;
};

// Negation normal form: negation only on atoms, connectives limited to
// and/or/next/until/release plus literals.  Weak until, eventually, always
// and implication are rewritten away.
LtlFormula ltl_nnf(const LtlFormula& f);

// Evaluates a formula on the ultimately periodic word
//   word[0] .. word[cycle_start-1] (word[cycle_start] .. word[n-1])^omega
// where word[i][a] is the truth of atoms[a] at position i.  Returns the
// truth at every position class.
std::vector<bool> eval_ltl_lasso_classes(
    const LtlFormula& f, const std::vector<std::string>& atoms,
    const std::vector<std::vector<bool>>& word, std::size_t cycle_start);

// Truth at position 0.
bool eval_ltl_lasso(const LtlFormula& f, const std::vector<std::string>& atoms,
                    const std::vector<std::vector<bool>>& word,
                    std::size_t cycle_start);

}  // namespace rmc
