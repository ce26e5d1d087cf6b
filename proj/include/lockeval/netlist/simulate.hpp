#ifndef LOCKEVAL_NETLIST_SIMULATE_HPP
#define LOCKEVAL_NETLIST_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lockeval/netlist/bitvector.hpp"
#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

/// Bit-parallel evaluator: one 64-bit word per net carries 64 patterns.
/// Compiles the circuit once into a topologically ordered instruction list;
/// evaluation is const and safe to call from several threads.
class Simulator {
 public:
  /// Throws CircuitError if `c` is cyclic or references undefined nets.
  explicit Simulator(const Circuit& c);

  std::size_t num_inputs() const { return input_slots_.size(); }
  std::size_t num_outputs() const { return output_slots_.size(); }

  /// inputs[i] holds 64 patterns of primary input i; outputs[j] receives the
  /// 64 results of output j.
  void run(std::span<const std::uint64_t> inputs, std::span<std::uint64_t> outputs) const;

  BitVector eval(const BitVector& x) const;
  std::vector<BitVector> eval_batch(std::span<const BitVector> xs) const;

 private:
  struct Op {
    GateKind kind;
    std::uint32_t out;
    std::uint32_t first;  // offset into operands_
    std::uint32_t count;
  };

  std::size_t num_slots_ = 0;
  std::vector<std::uint32_t> input_slots_;
  std::vector<std::uint32_t> output_slots_;
  std::vector<Op> ops_;
  std::vector<std::uint32_t> operands_;
};

/// Single-pattern evaluation. Throws on cyclic circuits or width mismatch.
BitVector simulate(const Circuit& c, const BitVector& x);
/// Elementwise equal to simulate(); packs 64 patterns per word.
std::vector<BitVector> simulate_batch(const Circuit& c, std::span<const BitVector> xs);

}  // namespace lockeval

#endif
