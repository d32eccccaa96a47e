#include "robustmc/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdio>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace rmc {

namespace {

// Precedence, loosest first; used both for printing and parsing.
constexpr int kPrecImplies = 1;
constexpr int kPrecOr = 2;
constexpr int kPrecAnd = 3;
constexpr int kPrecUntil = 4;
constexpr int kPrecUnary = 5;
constexpr int kPrecAtom = 6;

std::string wrap(const std::string& text, int prec, int min_prec) {
  return prec < min_prec ? "(" + text + ")" : text;
}

}  // namespace

struct StateFormula::Node {
  StateKind kind;
  std::string atom;
  std::optional<StateFormula> l, r;
  std::optional<PathFormula> p;
  std::size_t size = 1;
  std::string text;
  int prec = kPrecAtom;
};

struct PathFormula::Node {
  PathKind kind;
  std::optional<StateFormula> s;
  std::optional<PathFormula> l, r;
  std::size_t size = 1;
  std::string text;
  int prec = kPrecAtom;
};

StateKind StateFormula::kind() const { return node_->kind; }
const std::string& StateFormula::atom_name() const { return node_->atom; }
const StateFormula& StateFormula::left() const { return *node_->l; }
const StateFormula& StateFormula::right() const { return *node_->r; }
const PathFormula& StateFormula::path() const { return *node_->p; }
std::size_t StateFormula::size() const { return node_->size; }
const std::string& StateFormula::text() const { return node_->text; }

PathKind PathFormula::kind() const { return node_->kind; }
const StateFormula& PathFormula::state_sub() const { return *node_->s; }
const PathFormula& PathFormula::left() const { return *node_->l; }
const PathFormula& PathFormula::right() const { return *node_->r; }
std::size_t PathFormula::size() const { return node_->size; }
const std::string& PathFormula::text() const { return node_->text; }

StateFormula StateFormula::truth() {
  Node n{StateKind::kTrue};
  n.text = "true";
  return StateFormula{std::make_shared<const Node>(std::move(n))};
}

StateFormula StateFormula::atom(std::string name) {
  Node n{StateKind::kAtom};
  n.text = name;
  n.atom = std::move(name);
  return StateFormula{std::make_shared<const Node>(std::move(n))};
}

StateFormula StateFormula::negation(StateFormula f) {
  Node n{StateKind::kNot};
  n.size = 1 + f.size();
  n.text = "!" + wrap(f.text(), f.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.l = std::move(f);
  return StateFormula{std::make_shared<const Node>(std::move(n))};
}

StateFormula StateFormula::binary(StateKind kind, StateFormula l,
                                  StateFormula r, const char* op, int prec,
                                  bool right_assoc) {
  Node n{kind};
  n.size = 1 + l.size() + r.size();
  const int lp = l.node_->prec, rp = r.node_->prec;
  n.text = wrap(l.text(), lp, right_assoc ? prec + 1 : prec) + " " + op + " " +
           wrap(r.text(), rp, right_assoc ? prec : prec + 1);
  n.prec = prec;
  n.l = std::move(l);
  n.r = std::move(r);
  return StateFormula{std::make_shared<const Node>(std::move(n))};
}

StateFormula StateFormula::conj(StateFormula l, StateFormula r) {
  return binary(StateKind::kAnd, std::move(l), std::move(r), "&", kPrecAnd,
                false);
}

StateFormula StateFormula::disj(StateFormula l, StateFormula r) {
  return binary(StateKind::kOr, std::move(l), std::move(r), "|", kPrecOr,
                false);
}

StateFormula StateFormula::implies(StateFormula l, StateFormula r) {
  return binary(StateKind::kImplies, std::move(l), std::move(r), "->",
                kPrecImplies, true);
}

StateFormula StateFormula::quantified(StateKind kind, PathFormula p,
                                      const char* op) {
  Node n{kind};
  n.size = 1 + p.size();
  n.text = std::string(op) + " " + wrap(p.text(), p.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.p = std::move(p);
  return StateFormula{std::make_shared<const Node>(std::move(n))};
}

StateFormula StateFormula::exists(PathFormula p) {
  return quantified(StateKind::kExists, std::move(p), "E");
}

StateFormula StateFormula::forall(PathFormula p) {
  return quantified(StateKind::kForall, std::move(p), "A");
}

PathFormula PathFormula::state(StateFormula f) {
  Node n{PathKind::kState};
  n.size = f.size();
  n.text = f.text();
  n.prec = f.node_->prec;
  n.s = std::move(f);
  return PathFormula{std::make_shared<const Node>(std::move(n))};
}

PathFormula PathFormula::negation(PathFormula f) {
  if (f.kind() == PathKind::kState)
    return state(StateFormula::negation(f.state_sub()));
  Node n{PathKind::kNot};
  n.size = 1 + f.size();
  n.text = "!" + wrap(f.text(), f.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.l = std::move(f);
  return PathFormula{std::make_shared<const Node>(std::move(n))};
}

PathFormula PathFormula::binary(PathKind kind, PathFormula l, PathFormula r,
                                const char* op, int prec, bool right_assoc) {
  Node n{kind};
  n.size = 1 + l.size() + r.size();
  const int lp = l.node_->prec, rp = r.node_->prec;
  n.text = wrap(l.text(), lp, right_assoc ? prec + 1 : prec) + " " + op + " " +
           wrap(r.text(), rp, right_assoc ? prec : prec + 1);
  n.prec = prec;
  n.l = std::move(l);
  n.r = std::move(r);
  return PathFormula{std::make_shared<const Node>(std::move(n))};
}

PathFormula PathFormula::unary(PathKind kind, PathFormula f, const char* op) {
  Node n{kind};
  n.size = 1 + f.size();
  n.text = std::string(op) + " " + wrap(f.text(), f.node_->prec, kPrecUnary);
  n.prec = kPrecUnary;
  n.l = std::move(f);
  return PathFormula{std::make_shared<const Node>(std::move(n))};
}

namespace {

bool both_state(const PathFormula& l, const PathFormula& r) {
  return l.kind() == PathKind::kState && r.kind() == PathKind::kState;
}

}  // namespace

PathFormula PathFormula::conj(PathFormula l, PathFormula r) {
  if (both_state(l, r))
    return state(StateFormula::conj(l.state_sub(), r.state_sub()));
  return binary(PathKind::kAnd, std::move(l), std::move(r), "&", kPrecAnd,
                false);
}

PathFormula PathFormula::disj(PathFormula l, PathFormula r) {
  if (both_state(l, r))
    return state(StateFormula::disj(l.state_sub(), r.state_sub()));
  return binary(PathKind::kOr, std::move(l), std::move(r), "|", kPrecOr,
                false);
}

PathFormula PathFormula::implies(PathFormula l, PathFormula r) {
  if (both_state(l, r))
    return state(StateFormula::implies(l.state_sub(), r.state_sub()));
  return binary(PathKind::kImplies, std::move(l), std::move(r), "->",
                kPrecImplies, true);
}

PathFormula PathFormula::next(PathFormula f) {
  return unary(PathKind::kNext, std::move(f), "X");
}

PathFormula PathFormula::eventually(PathFormula f) {
  return unary(PathKind::kEventually, std::move(f), "F");
}

PathFormula PathFormula::always(PathFormula f) {
  return unary(PathKind::kAlways, std::move(f), "G");
}

PathFormula PathFormula::until(PathFormula l, PathFormula r) {
  return binary(PathKind::kUntil, std::move(l), std::move(r), "U", kPrecUntil,
                true);
}

PathFormula PathFormula::weak_until(PathFormula l, PathFormula r) {
  return binary(PathKind::kWeakUntil, std::move(l), std::move(r), "W",
                kPrecUntil, true);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Kind {
    kLParen,
    kRParen,
    kBang,
    kAmp,
    kPipe,
    kArrow,
    kIdent,
    kTrue,
    kFalse,
    kExists,
    kForall,
    kNext,
    kEventually,
    kAlways,
    kUntil,
    kWeakUntil,
    kEnd,
  };
  Kind kind;
  std::string text;
  int line;
  int column;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto push = [&](Token::Kind k, std::string t) {
    out.push_back({k, std::move(t), line, column});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    if (c == '(') {
      push(Token::Kind::kLParen, "(");
      ++i, ++column;
    } else if (c == ')') {
      push(Token::Kind::kRParen, ")");
      ++i, ++column;
    } else if (c == '!') {
      push(Token::Kind::kBang, "!");
      ++i, ++column;
    } else if (c == '&') {
      push(Token::Kind::kAmp, "&");
      ++i, ++column;
    } else if (c == '|') {
      push(Token::Kind::kPipe, "|");
      ++i, ++column;
    } else if (c == '-') {
      if (i + 1 >= text.size() || text[i + 1] != '>')
        throw ParseError(line, column, "expected '->'");
      push(Token::Kind::kArrow, "->");
      i += 2;
      column += 2;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      Token::Kind k = Token::Kind::kIdent;
      if (word == "true")
        k = Token::Kind::kTrue;
      else if (word == "false")
        k = Token::Kind::kFalse;
      else if (word == "E")
        k = Token::Kind::kExists;
      else if (word == "A")
        k = Token::Kind::kForall;
      else if (word == "X")
        k = Token::Kind::kNext;
      else if (word == "F")
        k = Token::Kind::kEventually;
      else if (word == "G")
        k = Token::Kind::kAlways;
      else if (word == "U")
        k = Token::Kind::kUntil;
      else if (word == "W")
        k = Token::Kind::kWeakUntil;
      push(k, std::move(word));
      column += static_cast<int>(j - i);
      i = j;
    } else {
      throw ParseError(line, column,
                       std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::Kind::kEnd, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  PathFormula parse() {
    PathFormula f = parse_implies();
    expect(Token::Kind::kEnd, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }
  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Token::Kind k, const char* what) {
    if (!accept(k)) {
      const Token& t = peek();
      throw ParseError(t.line, t.column,
                       "expected " + std::string(what) + ", found '" +
                           (t.kind == Token::Kind::kEnd ? "end of input"
                                                        : t.text) +
                           "'");
    }
  }

  PathFormula parse_implies() {
    PathFormula l = parse_or();
    if (accept(Token::Kind::kArrow))
      return PathFormula::implies(std::move(l), parse_implies());
    return l;
  }

  PathFormula parse_or() {
    PathFormula f = parse_and();
    while (accept(Token::Kind::kPipe))
      f = PathFormula::disj(std::move(f), parse_and());
    return f;
  }

  PathFormula parse_and() {
    PathFormula f = parse_until();
    while (accept(Token::Kind::kAmp))
      f = PathFormula::conj(std::move(f), parse_until());
    return f;
  }

  PathFormula parse_until() {
    PathFormula l = parse_unary();
    if (accept(Token::Kind::kUntil))
      return PathFormula::until(std::move(l), parse_until());
    if (accept(Token::Kind::kWeakUntil))
      return PathFormula::weak_until(std::move(l), parse_until());
    return l;
  }

  PathFormula parse_unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::kBang:
        ++pos_;
        return PathFormula::negation(parse_unary());
      case Token::Kind::kNext:
        ++pos_;
        return PathFormula::next(parse_unary());
      case Token::Kind::kEventually:
        ++pos_;
        return PathFormula::eventually(parse_unary());
      case Token::Kind::kAlways:
        ++pos_;
        return PathFormula::always(parse_unary());
      case Token::Kind::kExists:
        ++pos_;
        return PathFormula::state(StateFormula::exists(parse_unary()));
      case Token::Kind::kForall:
        ++pos_;
        return PathFormula::state(StateFormula::forall(parse_unary()));
      case Token::Kind::kLParen: {
        ++pos_;
        PathFormula f = parse_implies();
        expect(Token::Kind::kRParen, "')'");
        return f;
      }
      case Token::Kind::kTrue:
        ++pos_;
        return PathFormula::state(StateFormula::truth());
      case Token::Kind::kFalse:
        ++pos_;
        return PathFormula::state(
            StateFormula::negation(StateFormula::truth()));
      case Token::Kind::kIdent:
        ++pos_;
        return PathFormula::state(StateFormula::atom(t.text));
      default:
        throw ParseError(t.line, t.column,
                         "expected formula, found '" +
                             (t.kind == Token::Kind::kEnd ? "end of input"
                                                          : t.text) +
                             "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::optional<std::string> check_restricted_state(const StateFormula& f);

std::optional<std::string> check_restricted_operand(const PathFormula& p) {
  if (p.kind() != PathKind::kState)
    return "'" + p.text() +
           "': nested path operators are outside the restricted fragment";
  return check_restricted_state(p.state_sub());
}

std::optional<std::string> check_restricted_quantifier(const PathFormula& p) {
  switch (p.kind()) {
    case PathKind::kNext:
    case PathKind::kEventually:
    case PathKind::kAlways:
      return check_restricted_operand(p.left());
    case PathKind::kUntil:
    case PathKind::kWeakUntil:
      if (auto v = check_restricted_operand(p.left())) return v;
      return check_restricted_operand(p.right());
    default:
      return "'" + p.text() +
             "': a quantifier must apply exactly one temporal operator in "
             "the restricted fragment";
  }
}

std::optional<std::string> check_restricted_state(const StateFormula& f) {
  switch (f.kind()) {
    case StateKind::kTrue:
    case StateKind::kAtom:
      return std::nullopt;
    case StateKind::kNot:
      return check_restricted_state(f.left());
    case StateKind::kAnd:
    case StateKind::kOr:
    case StateKind::kImplies:
      if (auto v = check_restricted_state(f.left())) return v;
      return check_restricted_state(f.right());
    case StateKind::kExists:
    case StateKind::kForall:
      return check_restricted_quantifier(f.path());
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> fragment_violation(const StateFormula& f,
                                              Fragment fragment) {
  if (fragment == Fragment::kFull) return std::nullopt;
  return check_restricted_state(f);
}

StateFormula parse_state_formula(std::string_view text, Fragment fragment) {
  Parser parser(tokenize(text));
  PathFormula p = parser.parse();
  if (p.kind() != PathKind::kState)
    throw FragmentError("'" + p.text() +
                        "' is a path formula; a state formula (with every "
                        "temporal operator under E or A) is required");
  StateFormula f = p.state_sub();
  if (auto violation = fragment_violation(f, fragment))
    throw FragmentError(*violation);
  return f;
}

bool contains_implication(const StateFormula& f) {
  switch (f.kind()) {
    case StateKind::kTrue:
    case StateKind::kAtom:
      return false;
    case StateKind::kNot:
      return contains_implication(f.left());
    case StateKind::kImplies:
      return true;
    case StateKind::kAnd:
    case StateKind::kOr:
      return contains_implication(f.left()) ||
             contains_implication(f.right());
    case StateKind::kExists:
    case StateKind::kForall: {
      bool found = false;
      // Path-level booleans only occur in the full fragment.
      struct Walk {
        bool* found;
        void path(const PathFormula& p) {
          switch (p.kind()) {
            case PathKind::kState:
              *found = *found || contains_implication(p.state_sub());
              return;
            case PathKind::kImplies:
              *found = true;
              return;
            case PathKind::kNot:
            case PathKind::kNext:
            case PathKind::kEventually:
            case PathKind::kAlways:
              path(p.left());
              return;
            case PathKind::kAnd:
            case PathKind::kOr:
            case PathKind::kUntil:
            case PathKind::kWeakUntil:
              path(p.left());
              path(p.right());
              return;
          }
        }
      } walk{&found};
      walk.path(f.path());
      return found;
    }
  }
  return false;
}

namespace {

void collect_state(const StateFormula& f, std::set<std::string>& seen,
                   std::vector<StateFormula>& out);

void collect_path(const PathFormula& p, std::set<std::string>& seen,
                  std::vector<StateFormula>& out) {
  switch (p.kind()) {
    case PathKind::kState:
      collect_state(p.state_sub(), seen, out);
      return;
    case PathKind::kNot:
    case PathKind::kNext:
    case PathKind::kEventually:
    case PathKind::kAlways:
      collect_path(p.left(), seen, out);
      return;
    case PathKind::kAnd:
    case PathKind::kOr:
    case PathKind::kImplies:
    case PathKind::kUntil:
    case PathKind::kWeakUntil:
      collect_path(p.left(), seen, out);
      collect_path(p.right(), seen, out);
      return;
  }
}

void collect_state(const StateFormula& f, std::set<std::string>& seen,
                   std::vector<StateFormula>& out) {
  if (!seen.insert(f.text()).second) return;
  switch (f.kind()) {
    case StateKind::kTrue:
    case StateKind::kAtom:
      break;
    case StateKind::kNot:
      collect_state(f.left(), seen, out);
      break;
    case StateKind::kAnd:
    case StateKind::kOr:
    case StateKind::kImplies:
      collect_state(f.left(), seen, out);
      collect_state(f.right(), seen, out);
      break;
    case StateKind::kExists:
    case StateKind::kForall:
      collect_path(f.path(), seen, out);
      break;
  }
  out.push_back(f);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::vector<StateFormula> subformulas(const StateFormula& f) {
  std::set<std::string> seen;
  std::vector<StateFormula> out;
  collect_state(f, seen, out);
  std::sort(out.begin(), out.end(),
            [](const StateFormula& a, const StateFormula& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a.text() < b.text();
            });
  return out;
}

namespace {

class Substituter {
 public:
  PathFormula rewrite(const PathFormula& p) {
    switch (p.kind()) {
      case PathKind::kState:
        return PathFormula::state(StateFormula::atom(assign(p.state_sub())));
      case PathKind::kNot:
        return PathFormula::negation(rewrite(p.left()));
      case PathKind::kNext:
        return PathFormula::next(rewrite(p.left()));
      case PathKind::kEventually:
        return PathFormula::eventually(rewrite(p.left()));
      case PathKind::kAlways:
        return PathFormula::always(rewrite(p.left()));
      case PathKind::kAnd:
      case PathKind::kOr:
      case PathKind::kImplies:
      case PathKind::kUntil:
      case PathKind::kWeakUntil: {
        // Sequenced explicitly so substitution order is left to right
        // regardless of argument evaluation order.
        PathFormula l = rewrite(p.left());
        PathFormula r = rewrite(p.right());
        switch (p.kind()) {
          case PathKind::kAnd: return PathFormula::conj(l, r);
          case PathKind::kOr: return PathFormula::disj(l, r);
          case PathKind::kImplies: return PathFormula::implies(l, r);
          case PathKind::kUntil: return PathFormula::until(l, r);
          default: return PathFormula::weak_until(l, r);
        }
      }
    }
    throw std::logic_error("unreachable path kind");
  }

  std::vector<StateSubstitution> take() { return std::move(substitutions_); }

 private:
  std::string assign(const StateFormula& f) {
    auto it = by_text_.find(f.text());
    if (it != by_text_.end()) return it->second;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%08llx",
                  static_cast<unsigned long long>(fnv1a(f.text()) &
                                                  0xffffffffull));
    std::string name = "a_" + std::string(hex);
    int suffix = 0;
    while (!used_.insert(name).second)
      name = "a_" + std::string(hex) + "_" + std::to_string(++suffix);
    by_text_.emplace(f.text(), name);
    substitutions_.push_back({f, name});
    return name;
  }

  std::unordered_map<std::string, std::string> by_text_;
  std::unordered_set<std::string> used_;
  std::vector<StateSubstitution> substitutions_;
};

}  // namespace

PathSkeleton maximal_state_subformulas(const PathFormula& p) {
  Substituter sub;
  PathFormula rewritten = sub.rewrite(p);
  return {std::move(rewritten), sub.take()};
}

}  // namespace rmc
