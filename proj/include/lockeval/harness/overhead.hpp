#ifndef LOCKEVAL_HARNESS_OVERHEAD_HPP
#define LOCKEVAL_HARNESS_OVERHEAD_HPP

#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// Structural stand-ins for synthesis results. Area and power both use the
/// gate-count ratio, delay uses the logic-depth ratio.
struct OverheadProxy {
  double area_ratio = 1;
  double delay_ratio = 1;
  double power_ratio = 1;
  /// area * delay * power - 1.
  double combined = 0;
};

/// Cyclic locks are measured on the circuit with the correct key bound.
/// Throws MetricError if that circuit is still cyclic or the original is
/// empty.
OverheadProxy overhead_proxy(const Circuit& original, const LockedCircuit& locked);

}  // namespace lockeval

#endif
