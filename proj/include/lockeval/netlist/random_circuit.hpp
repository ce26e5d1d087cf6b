#ifndef LOCKEVAL_NETLIST_RANDOM_CIRCUIT_HPP
#define LOCKEVAL_NETLIST_RANDOM_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>

#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

struct RandomCircuitSpec {
  std::size_t inputs = 6;
  std::size_t gates = 30;
  std::size_t min_outputs = 2;
  std::size_t layers = 5;
  std::size_t max_fanin = 3;
  std::uint64_t seed = 1;
};

/// Layered random DAG. Gate i of layer l reads at least one net of layer l-1
/// (inputs are layer 0) and the rest from any earlier layer. Every gate without
/// readers becomes an output; more outputs are added if fewer than min_outputs.
/// Same spec, same circuit.
Circuit random_circuit(const RandomCircuitSpec& spec);

}  // namespace lockeval

#endif
