#ifndef LOCKEVAL_LOCKS_ROUTING_HPP
#define LOCKEVAL_LOCKS_ROUTING_HPP

#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

/// Routes N mutually independent wires (none in another's fan-in or fan-out
/// cone) through a key-controlled Benes network whose inputs are wired in a
/// random order. The correct key undoes that wiring. Actual key width is
/// N*log2(N) - N/2; metadata records N and the wiring.
LockedCircuit lock_routing(const Circuit& c, const LockConfig& cfg);

}  // namespace lockeval

#endif
