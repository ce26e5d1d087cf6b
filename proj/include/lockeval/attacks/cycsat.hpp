#ifndef LOCKEVAL_ATTACKS_CYCSAT_HPP
#define LOCKEVAL_ATTACKS_CYCSAT_HPP

#include <cstddef>

#include "lockeval/cnf/formula.hpp"
#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// Key conditions that rule out every combinational cycle of a key-MUX
/// locked netlist. Variable i+1 stands for key_i.
///
/// Simple cycles of the netlist graph are enumerated (Johnson's algorithm).
/// A MUX data edge is live only under the select value that picks it, so a
/// cycle through key-selected edges closes exactly when all those selects take
/// their cycle values; each cycle contributes one clause negating that
/// conjunction. Duplicate clauses are dropped. Any key satisfying the result
/// leaves an acyclic effective circuit.
///
/// Throws AttackError if a cycle does not pass through any key-selected edge,
/// or if more than `max_cycles` cycles exist.
cnf::CnfFormula cycsat_conditions(const LockedCircuit& cl, std::size_t max_cycles = 100000);

}  // namespace lockeval

#endif
