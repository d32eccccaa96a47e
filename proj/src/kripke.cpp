#include "robustmc/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace rmc {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' &&
        c != '-')
      return false;
  return true;
}

}  // namespace

void KripkeBuilder::add_prop(const std::string& name) {
  if (!valid_name(name) || name == "init")
    throw ModelError("invalid proposition name '" + name + "'");
  if (!prop_index_.emplace(name, props_.size()).second)
    throw ModelError("duplicate proposition '" + name + "'");
  props_.push_back(name);
}

std::size_t KripkeBuilder::add_state(const std::string& name, bool initial,
                                     const std::vector<std::string>& labels) {
  if (!valid_name(name))
    throw ModelError("invalid state name '" + name + "'");
  if (!state_index_.emplace(name, state_names_.size()).second)
    throw ModelError("duplicate state '" + name + "'");
  std::vector<std::size_t> ids;
  for (const auto& label : labels) {
    auto it = prop_index_.find(label);
    if (it == prop_index_.end())
      throw ModelError("undeclared proposition '" + label + "' on state '" +
                       name + "'");
    ids.push_back(it->second);
  }
  state_names_.push_back(name);
  initial_.push_back(initial);
  labels_.push_back(std::move(ids));
  return state_names_.size() - 1;
}

void KripkeBuilder::add_edge(const std::string& from, const std::string& to) {
  auto f = state_index_.find(from);
  if (f == state_index_.end())
    throw ModelError("edge from undeclared state '" + from + "'");
  auto t = state_index_.find(to);
  if (t == state_index_.end())
    throw ModelError("edge to undeclared state '" + to + "'");
  edges_.emplace_back(f->second, t->second);
}

void KripkeBuilder::add_edge(std::size_t from, std::size_t to) {
  edges_.emplace_back(from, to);
}

KripkeStructure KripkeBuilder::build() const {
  KripkeStructure m;
  const std::size_t n = state_names_.size();
  m.state_names_ = state_names_;
  m.state_index_ = state_index_;
  m.prop_names_ = props_;
  m.prop_index_ = prop_index_;
  m.initial_ = StateSet(n);
  for (std::size_t s = 0; s < n; ++s)
    if (initial_[s]) m.initial_.set(s);
  m.succ_.assign(n, StateSet(n));
  m.pred_.assign(n, StateSet(n));
  for (auto [from, to] : edges_) {
    m.succ_[from].set(to);
    m.pred_[to].set(from);
  }
  m.labels_.assign(props_.size(), StateSet(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t p : labels_[s]) m.labels_[p].set(s);
  return m;
}

std::optional<std::size_t> KripkeStructure::state_index(
    std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  return it == state_index_.end() ? std::nullopt
                                  : std::optional<std::size_t>(it->second);
}

std::optional<std::size_t> KripkeStructure::prop_index(
    std::string_view name) const {
  auto it = prop_index_.find(std::string(name));
  return it == prop_index_.end() ? std::nullopt
                                 : std::optional<std::size_t>(it->second);
}

StateSet KripkeStructure::pre_exists(const StateSet& t) const {
  StateSet out(num_states());
  for (std::size_t s = 0; s < num_states(); ++s)
    if (succ_[s].intersects(t)) out.set(s);
  return out;
}

StateSet KripkeStructure::pre_forall(const StateSet& t) const {
  StateSet out(num_states());
  for (std::size_t s = 0; s < num_states(); ++s)
    if (t.contains(succ_[s])) out.set(s);
  return out;
}

std::vector<ModelIssue> KripkeStructure::validate() const {
  std::vector<ModelIssue> issues;
  for (std::size_t s = 0; s < num_states(); ++s)
    if (succ_[s].empty())
      issues.push_back(
          {true, "state '" + state_names_[s] + "' has no outgoing edge"});
  if (initial_.empty())
    issues.push_back(
        {false, "no initial state: every check is vacuously true"});
  return issues;
}

std::string KripkeStructure::to_text() const {
  std::ostringstream out;
  if (!prop_names_.empty()) {
    out << "props";
    for (const auto& p : prop_names_) out << ' ' << p;
    out << '\n';
  }
  for (std::size_t s = 0; s < num_states(); ++s) {
    out << "state " << state_names_[s];
    if (initial_.test(s)) out << " init";
    for (std::size_t p = 0; p < prop_names_.size(); ++p)
      if (labels_[p].test(s)) out << ' ' << prop_names_[p];
    out << '\n';
  }
  for (std::size_t s = 0; s < num_states(); ++s)
    succ_[s].for_each([&](std::size_t t) {
      out << "edge " << state_names_[s] << ' ' << state_names_[t] << '\n';
    });
  return out.str();
}

KripkeStructure parse_model(std::string_view text) {
  KripkeBuilder builder;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    try {
      const std::string& head = tokens[0];
      if (head == "props") {
        for (std::size_t i = 1; i < tokens.size(); ++i)
          builder.add_prop(tokens[i]);
      } else if (head == "state") {
        if (tokens.size() < 2) throw ModelError("missing state name");
        bool initial = tokens.size() > 2 && tokens[2] == "init";
        std::vector<std::string> labels(tokens.begin() + (initial ? 3 : 2),
                                        tokens.end());
        builder.add_state(tokens[1], initial, labels);
      } else if (head == "edge") {
        if (tokens.size() != 3)
          throw ModelError("edge needs exactly two state names");
        builder.add_edge(tokens[1], tokens[2]);
      } else {
        throw ModelError("unknown directive '" + head + "'");
      }
    } catch (const ModelError& e) {
      throw ModelError(e.what(), line_no);
    }
  }
  return builder.build();
}

KripkeStructure random_structure(std::size_t n_states, double edge_density,
                                 std::size_t n_props, std::uint64_t seed) {
  if (n_states == 0) throw ModelError("random structure needs >= 1 state");
  std::mt19937_64 rng(seed);
  // Thresholded raw draws keep the generator portable; the standard library
  // distributions are implementation-defined.
  auto coin = [&](double p) {
    return double(rng() >> 11) * 0x1.0p-53 < p;
  };
  KripkeBuilder builder;
  for (std::size_t p = 0; p < n_props; ++p)
    builder.add_prop("p" + std::to_string(p));
  for (std::size_t s = 0; s < n_states; ++s) {
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < n_props; ++p)
      if (coin(0.5)) labels.push_back("p" + std::to_string(p));
    builder.add_state("s" + std::to_string(s), s == 0 || coin(0.2), labels);
  }
  std::vector<bool> has_succ(n_states, false);
  for (std::size_t from = 0; from < n_states; ++from)
    for (std::size_t to = 0; to < n_states; ++to)
      if (coin(edge_density)) {
        builder.add_edge(from, to);
        has_succ[from] = true;
      }
  for (std::size_t from = 0; from < n_states; ++from)
    if (!has_succ[from]) builder.add_edge(from, rng() % n_states);
  return builder.build();
}

}  // namespace rmc
