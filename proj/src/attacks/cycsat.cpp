#include "lockeval/attacks/cycsat.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "lockeval/error.hpp"

namespace lockeval {

namespace {

constexpr int kAlways = -1;

struct Edge {
  std::size_t to;
  int cond;  // kAlways, or 2*key_index + selected value
};

/// Johnson's elementary-cycle enumeration over a graph restricted to the
/// nodes of one strongly connected component at a time.
class CycleFinder {
 public:
  CycleFinder(std::vector<std::vector<Edge>> adj, std::size_t cap) : adj_(std::move(adj)), cap_(cap) {}

  template <class Visit>
  void run(Visit&& visit) {
    const std::size_t n = adj_.size();
    blocked_.assign(n, false);
    b_.assign(n, {});
    for (std::size_t s = 0; s < n; ++s) {
      const std::vector<bool> comp = component_of(s);
      if (comp.empty()) continue;
      start_ = s;
      in_comp_ = comp;
      for (std::size_t v = 0; v < n; ++v) {
        if (in_comp_[v]) {
          blocked_[v] = false;
          b_[v].clear();
        }
      }
      circuit(s, visit);
    }
  }

 private:
  /// Nodes of the SCC containing s within the subgraph of nodes >= s, or an
  /// empty vector when that SCC has no cycle.
  std::vector<bool> component_of(std::size_t s) {
    const std::size_t n = adj_.size();
    std::vector<bool> fwd(n, false);
    std::vector<bool> bwd(n, false);
    std::vector<std::size_t> stack{s};
    fwd[s] = true;
    bool self_loop = false;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (const Edge& e : adj_[v]) {
        if (e.to == s && v == s) self_loop = true;
        if (e.to >= s && !fwd[e.to]) {
          fwd[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    if (rev_.empty()) {
      rev_.assign(n, {});
      for (std::size_t v = 0; v < n; ++v) {
        for (const Edge& e : adj_[v]) rev_[e.to].push_back(v);
      }
    }
    stack.push_back(s);
    bwd[s] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : rev_[v]) {
        if (u >= s && !bwd[u]) {
          bwd[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::vector<bool> comp(n, false);
    std::size_t size = 0;
    for (std::size_t v = 0; v < n; ++v) {
      comp[v] = fwd[v] && bwd[v];
      size += comp[v] ? 1 : 0;
    }
    if (size == 1 && !self_loop) return {};
    return comp;
  }

  void unblock(std::size_t u) {
    std::vector<std::size_t> work{u};
    while (!work.empty()) {
      const std::size_t v = work.back();
      work.pop_back();
      if (!blocked_[v]) continue;
      blocked_[v] = false;
      for (std::size_t w : b_[v]) work.push_back(w);
      b_[v].clear();
    }
  }

  template <class Visit>
  bool circuit(std::size_t v, Visit& visit) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (const Edge& e : adj_[v]) {
      if (!in_comp_[e.to]) continue;
      conds_.push_back(e.cond);
      if (e.to == start_) {
        if (++count_ > cap_) {
          throw AttackError("more than " + std::to_string(cap_) +
                            " combinational cycles; lock fewer cyclic sites or raise the cap");
        }
        visit(conds_);
        found = true;
      } else if (!blocked_[e.to] && circuit(e.to, visit)) {
        found = true;
      }
      conds_.pop_back();
    }
    if (found) {
      unblock(v);
    } else {
      for (const Edge& e : adj_[v]) {
        if (in_comp_[e.to] && std::ranges::find(b_[e.to], v) == b_[e.to].end()) b_[e.to].push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::vector<std::size_t>> rev_;
  std::size_t cap_;
  std::size_t count_ = 0;
  std::size_t start_ = 0;
  std::vector<bool> in_comp_;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> b_;
  std::vector<std::size_t> path_;
  std::vector<int> conds_;
};

}  // namespace

cnf::CnfFormula cycsat_conditions(const LockedCircuit& cl, std::size_t max_cycles) {
  cl.validate();
  const Circuit& c = cl.circuit;
  const std::size_t n = cl.num_data_inputs();
  std::unordered_map<std::string, int> key_index;
  for (std::size_t i = 0; i < cl.key_width(); ++i) key_index.emplace(c.inputs()[n + i], static_cast<int>(i));

  std::vector<std::vector<Edge>> adj(c.gates().size());
  for (std::size_t g = 0; g < c.gates().size(); ++g) {
    const Gate& gate = c.gates()[g];
    const auto sel = gate.kind == GateKind::Mux ? key_index.find(gate.fanins[0]) : key_index.end();
    for (std::size_t j = 0; j < gate.fanins.size(); ++j) {
      int cond = kAlways;
      if (sel != key_index.end() && j > 0) cond = 2 * sel->second + (j == 2 ? 1 : 0);
      adj[c.index_of(gate.fanins[j])].push_back({g, cond});
    }
  }

  std::set<std::vector<cnf::Lit>> clauses;
  CycleFinder finder(std::move(adj), max_cycles);
  finder.run([&](const std::vector<int>& conds) {
    std::vector<cnf::Lit> clause;
    for (int cond : conds) {
      if (cond == kAlways) continue;
      // The cycle needs key_i == value; forbid that conjunction.
      const int i = cond / 2;
      const bool value = (cond % 2) != 0;
      clause.push_back(cnf::Lit(i + 1, !value));
    }
    if (clause.empty()) throw AttackError("combinational cycle that no key can break");
    std::ranges::sort(clause);
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t j = 1; j < clause.size(); ++j) {
      if (clause[j] == ~clause[j - 1]) return;  // needs key_i at both values: never closes
    }
    clauses.insert(std::move(clause));
  });

  cnf::CnfFormula out;
  out.ensure_vars(static_cast<int>(cl.key_width()));
  for (const auto& clause : clauses) out.add_clause(clause);
  return out;
}

}  // namespace lockeval
