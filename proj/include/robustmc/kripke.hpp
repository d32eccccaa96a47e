#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "robustmc/state_set.hpp"

namespace rmc {

// Raised on malformed model text or ill-formed construction requests.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct ModelIssue {
  bool is_error;  // false: warning only, checks may proceed
  std::string message;
};

class KripkeStructure;

// Accumulates states, propositions and edges by name, then builds an
// immutable structure with dense indices and precomputed successor,
// predecessor and label bitsets.
class KripkeBuilder {
 public:
  void add_prop(const std::string& name);
  std::size_t add_state(const std::string& name, bool initial,
                        const std::vector<std::string>& labels);
  void add_edge(const std::string& from, const std::string& to);
  void add_edge(std::size_t from, std::size_t to);

  bool has_state(const std::string& name) const {
    return state_index_.count(name) != 0;
  }
  std::size_t num_states() const { return state_names_.size(); }

  KripkeStructure build() const;

 private:
  std::vector<std::string> props_;
  std::unordered_map<std::string, std::size_t> prop_index_;
  std::vector<std::string> state_names_;
  std::unordered_map<std::string, std::size_t> state_index_;
  std::vector<bool> initial_;
  std::vector<std::vector<std::size_t>> labels_;  // per state, prop ids
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

// Finite transition structure: states carry proposition labels, edges are
// unlabelled.  Immutable after construction.  Checking assumes totality
// (every state has a successor); validate() reports violations instead of
// failing construction.
class KripkeStructure {
 public:
  std::size_t num_states() const { return state_names_.size(); }
  const std::vector<std::string>& state_names() const { return state_names_; }
  const std::string& state_name(std::size_t s) const { return state_names_[s]; }
  std::optional<std::size_t> state_index(std::string_view name) const;

  const std::vector<std::string>& prop_names() const { return prop_names_; }
  std::optional<std::size_t> prop_index(std::string_view name) const;

  const StateSet& initial_states() const { return initial_; }
  const StateSet& post(std::size_t s) const { return succ_[s]; }
  const StateSet& pre(std::size_t s) const { return pred_[s]; }

  // All states labelled with the proposition.
  const StateSet& states_with(std::size_t prop) const { return labels_[prop]; }
  bool state_has_prop(std::size_t s, std::size_t prop) const {
    return labels_[prop].test(s);
  }

  StateSet empty_set() const { return StateSet(num_states()); }
  StateSet full_set() const { return StateSet::full(num_states()); }

  // {s | post(s) meets t} and {s | post(s) within t}.
  StateSet pre_exists(const StateSet& t) const;
  StateSet pre_forall(const StateSet& t) const;

  std::vector<ModelIssue> validate() const;

  std::string to_text() const;

 private:
  friend class KripkeBuilder;
  KripkeStructure() = default;

  std::vector<std::string> state_names_;
  std::unordered_map<std::string, std::size_t> state_index_;
  std::vector<std::string> prop_names_;
  std::unordered_map<std::string, std::size_t> prop_index_;
  StateSet initial_;
  std::vector<StateSet> succ_;
  std::vector<StateSet> pred_;
  std::vector<StateSet> labels_;  // per prop
};

// Parses the line-oriented model format:
//
//   # comment
//   props p q
//   state s0 init p q
//   state s1 p
//   edge s0 s1
//
// Propositions and states must be declared before use; "init" marks initial
// states and is reserved.  Throws ModelError with a line number.
KripkeStructure parse_model(std::string_view text);

// Seeded random structure: each ordered pair becomes an edge with the given
// density, every childless state receives one uniform successor so the
// result is total, each state/prop pair is labelled with probability 1/2,
// state 0 is always initial.  Deterministic for a fixed seed.
KripkeStructure random_structure(std::size_t n_states, double edge_density,
                                 std::size_t n_props, std::uint64_t seed);

}  // namespace rmc
