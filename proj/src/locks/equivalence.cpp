#include "lockeval/locks/equivalence.hpp"

#include "lockeval/cnf/encode.hpp"
#include "lockeval/error.hpp"

namespace lockeval {

EquivalenceResult check_equivalence(const Circuit& a, const Circuit& b, const cnf::Budget& budget) {
  if (a.num_outputs() != b.num_outputs()) {
    throw CircuitError("output count differs: " + std::to_string(a.num_outputs()) + " vs " +
                       std::to_string(b.num_outputs()));
  }
  if (a.num_inputs() != b.num_inputs()) throw CircuitError("input count differs");
  for (const auto& in : a.inputs()) {
    if (!b.contains(in) || b.gate(in).kind != GateKind::Input) throw CircuitError("input '" + in + "' missing");
  }
  const cnf::EncodeOptions opts{.allow_cycles = true};
  cnf::CnfFormula f;
  const cnf::NetLits la = cnf::encode(a, f, {}, opts);
  const std::vector<cnf::Lit> x = cnf::lits_of(la, a.inputs());
  const cnf::NetLits lb = cnf::encode(b, f, cnf::bind(a.inputs(), x), opts);
  f.add_clause({cnf::make_differ(f, cnf::lits_of(la, a.outputs()), cnf::lits_of(lb, b.outputs()))});

  const cnf::SolveResult r = cnf::solve(f, {}, budget);
  EquivalenceResult out;
  if (r.status == cnf::Status::Timeout) {
    out.timed_out = true;
    return out;
  }
  out.equivalent = r.status == cnf::Status::Unsat;
  if (!out.equivalent) {
    BitVector cex(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) cex.set(i, r.value(x[i]));
    out.counterexample = std::move(cex);
  }
  return out;
}

EquivalenceResult check_equivalence(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                    const cnf::Budget& budget) {
  return check_equivalence(original, bind_key(cl, key), budget);
}

}  // namespace lockeval
