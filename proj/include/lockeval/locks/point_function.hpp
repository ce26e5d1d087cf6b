#ifndef LOCKEVAL_LOCKS_POINT_FUNCTION_HPP
#define LOCKEVAL_LOCKS_POINT_FUNCTION_HPP

#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// Single-pattern flip/restore lock over p = cfg.width data inputs.
///
/// A hard-wired comparator flips one randomly chosen output when the chosen
/// inputs equal a random protected pattern P; a key comparator
/// AND_i XNOR(x_i, key_i) flips it back when they equal the key. The correct
/// key is P. Every wrong key corrupts exactly the inputs matching P or the key.
LockedCircuit lock_point_fn(const Circuit& c, const LockConfig& cfg);

}  // namespace lockeval

#endif
