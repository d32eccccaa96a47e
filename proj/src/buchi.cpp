#include "robustmc/buchi.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace rmc {

namespace {

// Interning table for the subformulas met during tableau expansion.
class FormulaTable {
 public:
  int intern(const LtlFormula& f) {
    auto [it, inserted] = ids_.try_emplace(f.text(), int(items_.size()));
    if (inserted) items_.push_back(f);
    return it->second;
  }

  // Id of the complementary literal, or -1 if it was never interned.
  int complement_of(int literal) const {
    const LtlFormula& f = items_[std::size_t(literal)];
    std::string other = f.kind() == LtlKind::kNot
                            ? f.left().text()
                            : "!" + f.text();
    auto it = ids_.find(other);
    return it == ids_.end() ? -1 : it->second;
  }

  const LtlFormula& operator[](int id) const {
    return items_[std::size_t(id)];
  }
  std::size_t size() const { return items_.size(); }

 private:
  std::map<std::string, int> ids_;
  std::vector<LtlFormula> items_;
};

struct BuildNode {
  bool from_start = false;       // reachable as an initial node
  std::set<std::size_t> incoming;
  std::set<int> todo;            // obligations not yet decomposed
  std::set<int> old;             // decomposed obligations
  std::set<int> next;            // obligations deferred to the successor
};

void add_todo(BuildNode& n, int id) {
  if (!n.old.count(id)) n.todo.insert(id);
}

}  // namespace

BuchiAutomaton ltl_to_buchi(const LtlFormula& f) {
  const LtlFormula root = ltl_nnf(f);

  FormulaTable table;
  const int root_id = table.intern(root);

  std::vector<BuildNode> done;
  std::vector<BuildNode> pending;
  {
    BuildNode start;
    start.from_start = true;
    start.todo.insert(root_id);
    pending.push_back(std::move(start));
  }

  while (!pending.empty()) {
    BuildNode node = std::move(pending.back());
    pending.pop_back();

    if (node.todo.empty()) {
      // Merge with an existing node carrying the same obligations.
      bool merged = false;
      for (std::size_t i = 0; i < done.size(); ++i) {
        if (done[i].old == node.old && done[i].next == node.next) {
          done[i].from_start |= node.from_start;
          done[i].incoming.insert(node.incoming.begin(), node.incoming.end());
          merged = true;
          break;
        }
      }
      if (merged) continue;
      const std::size_t id = done.size();
      done.push_back(node);
      BuildNode succ;
      succ.incoming.insert(id);
      succ.todo = node.next;
      pending.push_back(std::move(succ));
      continue;
    }

    const int fid = *node.todo.begin();
    node.todo.erase(node.todo.begin());
    // By value: interning subformulas below may reallocate the table.
    const LtlFormula g = table[fid];

    switch (g.kind()) {
      case LtlKind::kTrue:
        // Recorded, not just discharged: until acceptance below looks for
        // the fulfilled right-hand side in `old`, and a trivial goal under
        // a regenerating release would otherwise never count as met.
        node.old.insert(fid);
        pending.push_back(std::move(node));
        break;
      case LtlKind::kFalse:
        break;  // inconsistent branch
      case LtlKind::kAtom:
      case LtlKind::kNot: {
        assert(g.kind() == LtlKind::kAtom ||
               g.left().kind() == LtlKind::kAtom);
        const int comp = table.complement_of(fid);
        if (comp >= 0 && node.old.count(comp)) break;  // inconsistent
        node.old.insert(fid);
        pending.push_back(std::move(node));
        break;
      }
      case LtlKind::kAnd: {
        node.old.insert(fid);
        add_todo(node, table.intern(g.left()));
        add_todo(node, table.intern(g.right()));
        pending.push_back(std::move(node));
        break;
      }
      case LtlKind::kOr: {
        node.old.insert(fid);
        BuildNode other = node;
        add_todo(node, table.intern(g.left()));
        add_todo(other, table.intern(g.right()));
        pending.push_back(std::move(node));
        pending.push_back(std::move(other));
        break;
      }
      case LtlKind::kNext: {
        node.old.insert(fid);
        node.next.insert(table.intern(g.left()));
        pending.push_back(std::move(node));
        break;
      }
      case LtlKind::kUntil: {
        node.old.insert(fid);
        BuildNode other = node;
        add_todo(node, table.intern(g.left()));
        node.next.insert(fid);
        add_todo(other, table.intern(g.right()));
        pending.push_back(std::move(node));
        pending.push_back(std::move(other));
        break;
      }
      case LtlKind::kRelease: {
        node.old.insert(fid);
        BuildNode other = node;
        add_todo(node, table.intern(g.right()));
        node.next.insert(fid);
        add_todo(other, table.intern(g.left()));
        add_todo(other, table.intern(g.right()));
        pending.push_back(std::move(node));
        pending.push_back(std::move(other));
        break;
      }
      default:
        throw std::logic_error("tableau input not in negation normal form: " +
                               g.text());
    }
  }

  BuchiAutomaton aut;
  aut.atoms = root.atoms();
  aut.nodes.resize(done.size());

  std::map<std::string, int> atom_index;
  for (std::size_t i = 0; i < aut.atoms.size(); ++i)
    atom_index[aut.atoms[i]] = int(i);

  for (std::size_t i = 0; i < done.size(); ++i) {
    BuchiNode& q = aut.nodes[i];
    q.initial = done[i].from_start;
    for (int fid : done[i].old) {
      const LtlFormula& g = table[fid];
      if (g.kind() == LtlKind::kAtom)
        q.pos_atoms.push_back(atom_index.at(g.atom_name()));
      else if (g.kind() == LtlKind::kNot)
        q.neg_atoms.push_back(atom_index.at(g.left().atom_name()));
    }
    std::sort(q.pos_atoms.begin(), q.pos_atoms.end());
    std::sort(q.neg_atoms.begin(), q.neg_atoms.end());
    for (std::size_t src : done[i].incoming)
      aut.nodes[src].succ.push_back(i);
  }
  for (BuchiNode& q : aut.nodes) std::sort(q.succ.begin(), q.succ.end());

  // One acceptance set per until obligation: a node is fair for l U r when
  // it either carries no such obligation or has already discharged it.
  for (int fid = 0; fid < int(table.size()); ++fid) {
    if (table[fid].kind() != LtlKind::kUntil) continue;
    const int rhs = table.intern(table[fid].right());
    std::vector<std::size_t> fair;
    for (std::size_t i = 0; i < done.size(); ++i)
      if (!done[i].old.count(fid) || done[i].old.count(rhs))
        fair.push_back(i);
    if (fair.size() < done.size()) aut.accept_sets.push_back(std::move(fair));
  }
  if (aut.accept_sets.empty()) {
    std::vector<std::size_t> all(done.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    aut.accept_sets.push_back(std::move(all));
  }
  return aut;
}

Nba degeneralize(const BuchiAutomaton& gba) {
  const std::size_t k = gba.accept_sets.size();
  assert(k >= 1);
  const std::size_t nq = gba.nodes.size();

  std::vector<std::vector<bool>> in_set(k, std::vector<bool>(nq, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t q : gba.accept_sets[i]) in_set[i][q] = true;

  Nba out;
  out.atoms = gba.atoms;
  out.nodes.resize(nq * k);
  out.accepting.assign(nq * k, false);
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t i = 0; i < k; ++i) {
      BuchiNode& n = out.nodes[q * k + i];
      n.pos_atoms = gba.nodes[q].pos_atoms;
      n.neg_atoms = gba.nodes[q].neg_atoms;
      n.initial = i == 0 && gba.nodes[q].initial;
      const std::size_t j = in_set[i][q] ? (i + 1) % k : i;
      for (std::size_t qs : gba.nodes[q].succ) n.succ.push_back(qs * k + j);
    }
    if (in_set[0][q]) out.accepting[q * k] = true;
  }
  return out;
}

namespace {

struct TarjanFrame {
  int v;
  std::size_t edge;
};

}  // namespace

StateSet nonempty_from(const Nba& aut, const KripkeStructure& m,
                       const std::vector<StateSet>& atom_sets) {
  assert(atom_sets.size() == aut.atoms.size());
  const std::size_t ns = m.num_states();
  const std::size_t nq = aut.nodes.size();
  StateSet result(ns);
  if (nq == 0 || ns == 0) return result;

  auto compatible = [&](std::size_t s, std::size_t q) {
    for (int a : aut.nodes[q].pos_atoms)
      if (!atom_sets[std::size_t(a)].test(s)) return false;
    for (int a : aut.nodes[q].neg_atoms)
      if (atom_sets[std::size_t(a)].test(s)) return false;
    return true;
  };

  // Explore the product from every compatible (state, initial node) pair.
  std::vector<int> compact(ns * nq, -1);
  std::vector<std::pair<std::size_t, std::size_t>> prod;  // compact -> (s, q)
  std::vector<std::pair<std::size_t, int>> seeds;         // (s, compact id)

  auto visit = [&](std::size_t s, std::size_t q) {
    int& slot = compact[s * nq + q];
    if (slot < 0) {
      slot = int(prod.size());
      prod.emplace_back(s, q);
    }
    return slot;
  };

  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t q = 0; q < nq; ++q)
      if (aut.nodes[q].initial && compatible(s, q))
        seeds.emplace_back(s, visit(s, q));

  std::vector<std::vector<int>> adj;
  for (std::size_t head = 0; head < prod.size(); ++head) {
    const auto [s, q] = prod[head];
    adj.emplace_back();
    m.post(s).for_each([&](std::size_t sn) {
      for (std::size_t qn : aut.nodes[q].succ)
        if (compatible(sn, qn)) adj[head].push_back(visit(sn, qn));
    });
  }

  const int n = int(prod.size());

  // Iterative Tarjan decomposition of the reachable product.
  std::vector<int> order(n, -1), low(n, 0), scc(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0, scc_count = 0;
  for (int root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<TarjanFrame> call{{root, 0}};
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      TarjanFrame& frame = call.back();
      if (frame.edge < adj[std::size_t(frame.v)].size()) {
        const int w = adj[std::size_t(frame.v)][frame.edge++];
        if (order[w] < 0) {
          order[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[frame.v] = std::min(low[frame.v], order[w]);
        }
      } else {
        const int v = frame.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
        if (low[v] == order[v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            scc[w] = scc_count;
            if (w == v) break;
          }
          ++scc_count;
        }
      }
    }
  }

  // An SCC sustains an accepting run iff it contains a cycle through an
  // accepting node.
  std::vector<int> scc_size(scc_count, 0);
  std::vector<bool> scc_loop(scc_count, false);
  std::vector<bool> scc_acc(scc_count, false);
  for (int v = 0; v < n; ++v) {
    scc_size[scc[v]]++;
    if (aut.accepting[prod[std::size_t(v)].second]) scc_acc[scc[v]] = true;
    for (int w : adj[std::size_t(v)])
      if (w == v) scc_loop[scc[v]] = true;
  }

  std::vector<bool> good(std::size_t(n), false);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    const int c = scc[v];
    if (scc_acc[c] && (scc_size[c] >= 2 || scc_loop[c])) {
      good[std::size_t(v)] = true;
      queue.push_back(v);
    }
  }

  std::vector<std::vector<int>> radj(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    for (int w : adj[std::size_t(v)]) radj[std::size_t(w)].push_back(v);
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    for (int w : radj[std::size_t(v)]) {
      if (!good[std::size_t(w)]) {
        good[std::size_t(w)] = true;
        queue.push_back(w);
      }
    }
  }

  for (const auto& [s, id] : seeds)
    if (good[std::size_t(id)]) result.set(s);
  return result;
}

}  // namespace rmc
