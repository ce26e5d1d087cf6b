#ifndef LOCKEVAL_LOCKS_INSERTION_HPP
#define LOCKEVAL_LOCKS_INSERTION_HPP

#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// Splices an XOR (correct bit 0) or XNOR (correct bit 1) against key_i into
/// `width` distinct internal nets chosen at random. Key bits are random.
LockedCircuit lock_xor(const Circuit& c, const LockConfig& cfg);

/// Inserts `width` key-selected MUXes, each choosing between a true net and a
/// decoy that lies outside the true net's fan-out cone.
LockedCircuit lock_mux(const Circuit& c, const LockConfig& cfg);

/// Replaces floor(width / 2^arity) gates of fan-in `lut_arity` by key-programmed
/// truth tables, each a MUX tree over 2^arity key bits. Table index is
/// sum_j fanin_j * 2^(arity-1-j), so the first fan-in is the most significant.
LockedCircuit lock_lut(const Circuit& c, const LockConfig& cfg);

/// lock_mux with decoys taken from the true net's fan-out cone, producing
/// key-dependent combinational cycles that the correct key breaks.
LockedCircuit lock_cyclic_mux(const Circuit& c, const LockConfig& cfg);

}  // namespace lockeval

#endif
