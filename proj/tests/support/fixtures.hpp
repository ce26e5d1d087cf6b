#ifndef LOCKEVAL_TESTS_FIXTURES_HPP
#define LOCKEVAL_TESTS_FIXTURES_HPP

#include <string>

#include "lockeval/locks/locked_circuit.hpp"
#include "lockeval/netlist/bench.hpp"

namespace fixtures {

using lockeval::parse_bench;

inline lockeval::Circuit identity_wire() { return parse_bench("INPUT(a)\nOUTPUT(y)\ny = BUF(a)\n", "wire"); }

inline lockeval::Circuit single_and() {
  return parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n", "and");
}

inline lockeval::Circuit four_input() {
  return parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(y)\nOUTPUT(z)\n"
                     "t = AND(a, b)\ny = OR(t, c)\nz = XOR(c, d)\n",
                     "four");
}

// Smallest circuit where a feedback MUX has somewhere to go.
inline lockeval::Circuit cyclic_base() {
  return parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nOUTPUT(g2)\ng1 = AND(a, b)\ng2 = OR(g1, c)\n", "cyc");
}

inline lockeval::Circuit independent_nots(int n) {
  std::string text;
  for (int i = 0; i < n; ++i) text += "INPUT(i" + std::to_string(i) + ")\n";
  for (int i = 0; i < n; ++i) text += "OUTPUT(o" + std::to_string(i) + ")\n";
  for (int i = 0; i < n; ++i) text += "o" + std::to_string(i) + " = NOT(i" + std::to_string(i) + ")\n";
  return parse_bench(text, "nots");
}

// Two 4-input, 2-key locks of y = AND(a, b) with the same Cor (1/2) but
// different per-key profiles. In L0 key_0 = 1 breaks every input and key_1
// does nothing; in L1 the keys 01/10 are wrong on half the inputs and 11 on
// all of them. The correct key is 00 in both.
inline lockeval::Circuit fig_original() {
  return parse_bench("INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nOUTPUT(y)\ny = AND(a, b)\n", "fig");
}

inline lockeval::LockedCircuit fig_l0() {
  auto c = parse_bench(
      "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nINPUT(key_0)\nINPUT(key_1)\nOUTPUT(y)\n"
      "t = AND(a, b)\ny = XOR(t, key_0)\n",
      "l0");
  return lockeval::make_locked(std::move(c), lockeval::LockKind::Xor, lockeval::BitVector{0, 0});
}

inline lockeval::LockedCircuit fig_l1() {
  auto c = parse_bench(
      "INPUT(a)\nINPUT(b)\nINPUT(c)\nINPUT(d)\nINPUT(key_0)\nINPUT(key_1)\nOUTPUT(y)\n"
      "t = AND(a, b)\nboth = AND(key_0, key_1)\none = XOR(key_0, key_1)\nhalf = AND(one, c)\n"
      "flip = OR(both, half)\ny = XOR(t, flip)\n",
      "l1");
  return lockeval::make_locked(std::move(c), lockeval::LockKind::Xor, lockeval::BitVector{0, 0});
}

}  // namespace fixtures

#endif
