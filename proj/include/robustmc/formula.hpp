#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmc {

// Grammar restriction applied after parsing.  The full language nests path
// operators freely under a quantifier; the restricted fragment allows
// exactly one temporal operator per quantifier, applied to state formulas.
// The classical fragment shares the restricted shape and differs only in
// how it is evaluated.
enum class Fragment { kRestricted, kFull, kClassical };

enum class StateKind : std::uint8_t {
  kTrue,
  kAtom,
  kNot,
  kAnd,
  kOr,
  kImplies,
  kExists,
  kForall,
};

enum class PathKind : std::uint8_t {
  kState,  // embedded state formula
  kNot,
  kAnd,
  kOr,
  kImplies,
  kNext,
  kEventually,
  kAlways,
  kUntil,
  kWeakUntil,
};

// Syntax error with position information.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Well-formed formula outside the requested fragment.
class FragmentError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class PathFormula;

// Immutable state formula.  Nodes are shared; equality is structural and
// equals canonical-text equality, since printing is injective on the
// canonical forms produced by the constructors below.
class StateFormula {
 public:
  StateKind kind() const;
  const std::string& atom_name() const;     // kAtom
  const StateFormula& left() const;         // kNot/kAnd/kOr/kImplies
  const StateFormula& right() const;        // kAnd/kOr/kImplies
  const PathFormula& path() const;          // kExists/kForall

  std::size_t size() const;                 // node count
  const std::string& text() const;          // canonical print

  static StateFormula truth();
  static StateFormula atom(std::string name);
  static StateFormula negation(StateFormula f);
  static StateFormula conj(StateFormula l, StateFormula r);
  static StateFormula disj(StateFormula l, StateFormula r);
  static StateFormula implies(StateFormula l, StateFormula r);
  static StateFormula exists(PathFormula p);
  static StateFormula forall(PathFormula p);

  friend bool operator==(const StateFormula& a, const StateFormula& b) {
    return a.text() == b.text();
  }
  friend bool operator!=(const StateFormula& a, const StateFormula& b) {
    return !(a == b);
  }

 private:
  friend class PathFormula;
  struct Node;
  explicit StateFormula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static StateFormula binary(StateKind kind, StateFormula l, StateFormula r,
                             const char* op, int prec, bool right_assoc);
  static StateFormula quantified(StateKind kind, PathFormula p,
                                 const char* op);
  std::shared_ptr<const Node> node_;
};

// Immutable path formula.  Boolean connectives over pure state operands are
// canonicalised into embedded state formulas, so in any reachable path
// formula a boolean path node has at least one temporally rooted child.
class PathFormula {
 public:
  PathKind kind() const;
  const StateFormula& state_sub() const;    // kState
  const PathFormula& left() const;          // unary ops and binaries
  const PathFormula& right() const;         // binaries

  std::size_t size() const;
  const std::string& text() const;

  static PathFormula state(StateFormula f);
  static PathFormula negation(PathFormula f);
  static PathFormula conj(PathFormula l, PathFormula r);
  static PathFormula disj(PathFormula l, PathFormula r);
  static PathFormula implies(PathFormula l, PathFormula r);
  static PathFormula next(PathFormula f);
  static PathFormula eventually(PathFormula f);
  static PathFormula always(PathFormula f);
  static PathFormula until(PathFormula l, PathFormula r);
  static PathFormula weak_until(PathFormula l, PathFormula r);

  friend bool operator==(const PathFormula& a, const PathFormula& b) {
    return a.text() == b.text();
  }
  friend bool operator!=(const PathFormula& a, const PathFormula& b) {
    return !(a == b);
  }

 private:
  friend class StateFormula;
  struct Node;
  explicit PathFormula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  static PathFormula binary(PathKind kind, PathFormula l, PathFormula r,
                            const char* op, int prec, bool right_assoc);
  static PathFormula unary(PathKind kind, PathFormula f, const char* op);
  std::shared_ptr<const Node> node_;
};

// Parses the ASCII syntax
//
//   state/path:  !f   f & g   f | g   f -> g   (f)   true   false   atom
//   temporal:    X f   F f   G f   f U g   f W g
//   quantifier:  E f   A f
//
// Precedence, tightest first: unary (including X F G E A), then U/W
// (right-associative), then &, then |, then -> (right-associative).
// The result must be a state formula inside the requested fragment; throws
// ParseError for syntax and FragmentError for fragment violations.
StateFormula parse_state_formula(std::string_view text, Fragment fragment);

// Returns a description of the first fragment violation, if any.
std::optional<std::string> fragment_violation(const StateFormula& f,
                                              Fragment fragment);

bool contains_implication(const StateFormula& f);

// All state subformulas (through path operators), deduplicated, ordered by
// ascending size so every formula follows its proper subformulas; ties are
// broken by canonical text.
std::vector<StateFormula> subformulas(const StateFormula& f);

struct StateSubstitution {
  StateFormula original;
  std::string atom;  // fresh name, derived from a hash of the original text
};

struct PathSkeleton {
  PathFormula rewritten;  // the input with state operands replaced by atoms
  std::vector<StateSubstitution> substitutions;  // first-occurrence order
};

// Replaces every maximal proper state subformula of a path formula by a
// fresh atom.  Repeated occurrences share one atom.
PathSkeleton maximal_state_subformulas(const PathFormula& p);

}  // namespace rmc
