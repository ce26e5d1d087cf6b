#ifndef LOCKEVAL_LOCKS_EQUIVALENCE_HPP
#define LOCKEVAL_LOCKS_EQUIVALENCE_HPP

#include <optional>

#include "lockeval/cnf/solver.hpp"
#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

struct EquivalenceResult {
  bool equivalent = false;
  bool timed_out = false;
  /// A distinguishing data input when not equivalent.
  std::optional<BitVector> counterexample;
};

/// Miter check: same data-input names and output count required. Cyclic
/// circuits are encoded by their fixed points.
EquivalenceResult check_equivalence(const Circuit& a, const Circuit& b, const cnf::Budget& budget = {});

/// Miter between the original circuit and the locked one with its key inputs
/// tied to `key`.
EquivalenceResult check_equivalence(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                    const cnf::Budget& budget = {});

}  // namespace lockeval

#endif
