#include "lockeval/harness/overhead.hpp"

#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval {

OverheadProxy overhead_proxy(const Circuit& original, const LockedCircuit& locked) {
  if (!is_acyclic(original)) throw MetricError("overhead needs an acyclic original circuit");
  const StructuralStats base = structural_stats(original);
  if (base.gate_count == 0 || base.depth == 0) throw MetricError("original circuit has no logic gates");

  StructuralStats lk;
  if (is_acyclic(locked.circuit)) {
    lk = structural_stats(locked.circuit);
  } else {
    const Circuit resolved = bind_key(locked, locked.correct_key);
    if (!is_acyclic(resolved)) throw MetricError("locked circuit stays cyclic under the correct key");
    lk = structural_stats(resolved);
  }

  OverheadProxy o;
  o.area_ratio = static_cast<double>(lk.gate_count) / static_cast<double>(base.gate_count);
  o.power_ratio = o.area_ratio;
  o.delay_ratio = static_cast<double>(lk.depth) / static_cast<double>(base.depth);
  o.combined = o.area_ratio * o.delay_ratio * o.power_ratio - 1;
  return o;
}

}  // namespace lockeval
