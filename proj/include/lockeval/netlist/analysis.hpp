#ifndef LOCKEVAL_NETLIST_ANALYSIS_HPP
#define LOCKEVAL_NETLIST_ANALYSIS_HPP

#include <cstddef>
#include <string>
#include <unordered_set>
#include <vector>

#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

struct StructuralStats {
  std::size_t gate_count = 0;  // excludes INPUT and CONST pseudo-gates
  std::size_t depth = 0;       // longest input-to-output path, in gates

  friend bool operator==(const StructuralStats&, const StructuralStats&) = default;
};

bool is_acyclic(const Circuit& c);

/// Gate indices (into c.gates()) in topological order. Throws CircuitError if cyclic.
std::vector<std::size_t> topological_order(const Circuit& c);

StructuralStats structural_stats(const Circuit& c);

/// Transitive fan-in of `net`, not including `net` itself.
std::unordered_set<std::string> fanin_cone(const Circuit& c, const std::string& net);
/// Transitive fan-out of `net`, not including `net` itself.
std::unordered_set<std::string> fanout_cone(const Circuit& c, const std::string& net);

}  // namespace lockeval

#endif
