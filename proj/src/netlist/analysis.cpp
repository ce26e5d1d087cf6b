#include "lockeval/netlist/analysis.hpp"

#include <algorithm>

#include "lockeval/error.hpp"

namespace lockeval {

namespace {

// Kahn's algorithm; returns a partial order when the circuit is cyclic.
std::vector<std::size_t> kahn_order(const Circuit& c) {
  const auto& gates = c.gates();
  std::vector<std::size_t> pending(gates.size(), 0);
  std::vector<std::vector<std::size_t>> readers(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (const auto& f : gates[i].fanins) {
      readers[c.index_of(f)].push_back(i);
      ++pending[i];
    }
  }
  std::vector<std::size_t> order;
  order.reserve(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (pending[i] == 0) order.push_back(i);
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (std::size_t r : readers[order[head]]) {
      if (--pending[r] == 0) order.push_back(r);
    }
  }
  return order;
}

}  // namespace

bool is_acyclic(const Circuit& c) { return kahn_order(c).size() == c.gates().size(); }

std::vector<std::size_t> topological_order(const Circuit& c) {
  auto order = kahn_order(c);
  if (order.size() != c.gates().size()) throw CircuitError("circuit '" + c.name() + "' is cyclic");
  return order;
}

StructuralStats structural_stats(const Circuit& c) {
  const auto order = topological_order(c);
  const auto& gates = c.gates();
  std::vector<std::size_t> level(gates.size(), 0);
  StructuralStats stats;
  for (std::size_t i : order) {
    const Gate& g = gates[i];
    if (g.is_pseudo()) continue;
    ++stats.gate_count;
    std::size_t deepest = 0;
    for (const auto& f : g.fanins) deepest = std::max(deepest, level[c.index_of(f)]);
    level[i] = deepest + 1;
  }
  for (const auto& o : c.outputs()) stats.depth = std::max(stats.depth, level[c.index_of(o)]);
  return stats;
}

std::unordered_set<std::string> fanin_cone(const Circuit& c, const std::string& net) {
  std::unordered_set<std::string> seen;
  std::vector<std::string> stack{c.gate(net).fanins};
  while (!stack.empty()) {
    std::string n = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& f : c.gate(n).fanins) stack.push_back(f);
  }
  seen.erase(net);
  return seen;
}

std::unordered_set<std::string> fanout_cone(const Circuit& c, const std::string& net) {
  (void)c.gate(net);
  const auto readers = c.fanouts();
  std::unordered_set<std::string> seen;
  std::vector<std::string> stack;
  if (auto it = readers.find(net); it != readers.end()) stack = it->second;
  while (!stack.empty()) {
    std::string n = std::move(stack.back());
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (auto it = readers.find(n); it != readers.end()) {
      for (const auto& r : it->second) stack.push_back(r);
    }
  }
  seen.erase(net);
  return seen;
}

}  // namespace lockeval
