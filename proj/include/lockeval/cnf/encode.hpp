#ifndef LOCKEVAL_CNF_ENCODE_HPP
#define LOCKEVAL_CNF_ENCODE_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "lockeval/cnf/formula.hpp"
#include "lockeval/netlist/bitvector.hpp"
#include "lockeval/netlist/circuit.hpp"

namespace lockeval::cnf {

/// Literal of every net of one encoded circuit copy.
using NetLits = std::unordered_map<std::string, Lit>;

/// Net literals for several circuit copies, keyed by copy label.
struct VarMap {
  std::map<std::string, NetLits> copies;

  const NetLits& copy(const std::string& label) const { return copies.at(label); }
  Lit at(const std::string& label, const std::string& net) const { return copies.at(label).at(net); }
};

struct EncodeOptions {
  /// Encode cyclic circuits too: every gate gets a variable tied to its
  /// function, so the clauses describe the circuit's fixed points.
  bool allow_cycles = false;
};

/// Tseitin-encodes one copy of `c` into `f`.
///
/// Nets listed in `shared` take the given literal instead of a fresh variable
/// (miter inputs, keys, or constants from f.constant()); their driving gate is
/// not encoded. Every other input gets a fresh variable. Gates fed by
/// constants are folded, NOT/BUF become negated/aliased literals. Throws
/// CircuitError for a cyclic circuit unless allow_cycles is set.
NetLits encode(const Circuit& c, CnfFormula& f, const NetLits& shared = {}, const EncodeOptions& options = {});

/// Same, recording the copy under `label` in `map`.
const NetLits& encode(const Circuit& c, CnfFormula& f, VarMap& map, const std::string& label,
                      const NetLits& shared = {}, const EncodeOptions& options = {});

// Gate constructors with constant folding. Each returns a literal equivalent
// to the gate output, allocating a variable only when nothing folds.
Lit make_and(CnfFormula& f, std::vector<Lit> ins);
Lit make_or(CnfFormula& f, std::vector<Lit> ins);
Lit make_xor(CnfFormula& f, std::vector<Lit> ins);
/// sel ? d1 : d0
Lit make_mux(CnfFormula& f, Lit sel, Lit d0, Lit d1);

/// Literal true iff the two literal vectors differ in at least one position.
Lit make_differ(CnfFormula& f, const std::vector<Lit>& a, const std::vector<Lit>& b);
/// Literal true iff at least `t` of `lits` are true.
Lit make_at_least(CnfFormula& f, const std::vector<Lit>& lits, std::size_t t);

/// Literals of the named nets, in order.
std::vector<Lit> lits_of(const NetLits& lits, const std::vector<std::string>& nets);
/// Constant literals for the bits of `v`.
std::vector<Lit> constant_lits(CnfFormula& f, const BitVector& v);
/// Shared-net map binding `nets[i]` to `lits[i]`.
NetLits bind(const std::vector<std::string>& nets, const std::vector<Lit>& lits);

}  // namespace lockeval::cnf

#endif
