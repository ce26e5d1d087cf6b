#include <random>
#include <string>

#include "doctest.h"
#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/netlist/bench.hpp"
#include "lockeval/netlist/random_circuit.hpp"
#include "lockeval/netlist/simulate.hpp"
#include "support/oracle.hpp"

using namespace lockeval;

namespace {

const char* kAnd = "INPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = AND(a, b)\n";

std::size_t count_occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<BitVector> random_patterns(std::size_t count, std::size_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BitVector> xs;
  for (std::size_t i = 0; i < count; ++i) {
    BitVector x(width);
    for (std::size_t b = 0; b < width; ++b) x.set(b, rng() & 1U);
    xs.push_back(x);
  }
  return xs;
}

}  // namespace

TEST_CASE("parse minimal AND") {
  const auto c = parse_bench(kAnd);
  CHECK(c.num_inputs() == 2);
  CHECK(c.num_outputs() == 1);
  CHECK(c.internal_nets().size() == 1);
  CHECK(c.gate("y").kind == GateKind::And);
}

TEST_CASE("parse c17") {
  const auto c = oracle::c17();
  CHECK(c.num_inputs() == 5);
  CHECK(c.num_outputs() == 2);
  CHECK(c.internal_nets().size() == 6);
  for (const auto& g : c.gates())
    if (!g.is_pseudo()) CHECK(g.kind == GateKind::Nand);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_bench("OUTPUT(y)\ny = AND(a, b)\n"), ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = FOO(a)\n"), ParseError);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a)\ny = BUF(a)\n"), Error);
  CHECK_THROWS_AS(parse_bench("INPUT(a)\nOUTPUT(y)\ny = NOT(a, a)\n"), ParseError);
  try {
    parse_bench("INPUT(a)\nOUTPUT(y)\n\ny = AND(a, zz)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("serialize") {
  const auto c = parse_bench(kAnd);
  CHECK(count_occurrences(serialize_bench(c), "= AND(") == 1);

  const auto c17 = oracle::c17();
  const auto once = serialize_bench(parse_bench(serialize_bench(c17)));
  CHECK(once == serialize_bench(parse_bench(once)));
  CHECK(parse_bench(once) == c17);

  const auto m = parse_bench("INPUT(s)\nINPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = MUX(s, a, b)\n");
  const auto text = serialize_bench(m);
  REQUIRE(count_occurrences(text, "= MUX(") == 1);
  CHECK(text.find("= MUX(s, a, b)") != std::string::npos);
}

TEST_CASE("round trip on random circuits") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = random_circuit({.inputs = 6, .gates = 30, .seed = seed});
    CHECK(parse_bench(serialize_bench(c)) == c);
  }
}

TEST_CASE("simulate AND and MUX") {
  const auto c = parse_bench(kAnd);
  CHECK(simulate(c, BitVector{1, 1}) == BitVector{1});
  CHECK(simulate(c, BitVector{1, 0}) == BitVector{0});
  CHECK_THROWS_AS(simulate(c, BitVector{1}), CircuitError);

  // data1 when select is 1
  const auto m = parse_bench("INPUT(s)\nINPUT(a)\nINPUT(b)\nOUTPUT(y)\ny = MUX(s, a, b)\n");
  CHECK(simulate(m, BitVector{0, 1, 0}) == BitVector{1});
  CHECK(simulate(m, BitVector{1, 1, 0}) == BitVector{0});
}

TEST_CASE("simulate c17 against the recursive oracle") {
  const auto c = oracle::c17();
  for (std::uint64_t v = 0; v < 32; ++v) {
    const auto x = BitVector::from_uint(v, 5);
    CHECK(simulate(c, x) == oracle::eval(c, x));
  }
}

TEST_CASE("simulate_batch") {
  const auto c17 = oracle::c17();
  const auto xs = random_patterns(64, 5, 3);
  const auto ys = simulate_batch(c17, xs);
  REQUIRE(ys.size() == 64);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(ys[i] == simulate(c17, xs[i]));
  CHECK(simulate_batch(c17, {}).empty());

  const auto c432 = oracle::c432();
  const auto big = random_patterns(10000, c432.num_inputs(), 4);
  const auto out = simulate_batch(c432, big);
  for (std::size_t i = 0; i < big.size(); i += 100) CHECK(out[i] == oracle::eval(c432, big[i]));
}

TEST_CASE("simulate_batch equals simulate on random circuits") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto c = random_circuit({.inputs = 7, .gates = 30, .seed = seed});
    const auto xs = random_patterns(100, c.num_inputs(), seed);
    const auto ys = simulate_batch(c, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      CHECK(ys[i] == simulate(c, xs[i]));
      CHECK(ys[i] == oracle::eval(c, xs[i]));
    }
  }
}

TEST_CASE("structural stats") {
  CHECK(structural_stats(parse_bench(kAnd)) == StructuralStats{1, 1});
  const auto chain = parse_bench("INPUT(a)\nOUTPUT(d)\nb = NOT(a)\nc = NOT(b)\nd = NOT(c)\n");
  CHECK(structural_stats(chain) == StructuralStats{3, 3});
  CHECK(structural_stats(oracle::c17()) == StructuralStats{6, 3});

  const auto loop = parse_bench("INPUT(a)\nINPUT(s)\nOUTPUT(y)\ny = MUX(s, a, z)\nz = NOT(y)\n");
  CHECK_THROWS_AS(structural_stats(loop), CircuitError);
}

TEST_CASE("depth does not drop when a gate is inserted on a path") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto c = random_circuit({.inputs = 6, .gates = 30, .seed = seed});
    const auto before = structural_stats(c);
    const auto nets = c.internal_nets();
    const auto& net = nets[seed % nets.size()];
    const auto old = c.fresh_name(net + "_old");
    c.rename_gate(net, old);
    c.add_gate(net, GateKind::Buf, {old});
    c.validate();
    const auto after = structural_stats(c);
    CHECK(after.gate_count == before.gate_count + 1);
    CHECK(after.depth >= before.depth);
  }
}

TEST_CASE("acyclicity and cones") {
  const auto c17 = oracle::c17();
  CHECK(is_acyclic(c17));
  const auto loop = parse_bench("INPUT(a)\nINPUT(s)\nOUTPUT(y)\ny = MUX(s, a, z)\nz = NOT(y)\n");
  CHECK_FALSE(is_acyclic(loop));
  CHECK_THROWS_AS(Simulator{loop}, CircuitError);

  const auto cone = fanin_cone(c17, "N22");
  for (const auto& in : {"N1", "N2", "N3", "N6"}) CHECK(cone.contains(in));
  const auto cone23 = fanin_cone(c17, "N23");
  CHECK(cone23.contains("N7"));
  std::size_t inputs = 0;
  for (const auto& in : c17.inputs()) inputs += (cone.contains(in) || cone23.contains(in)) ? 1 : 0;
  CHECK(inputs == 5);
  CHECK(fanout_cone(c17, "N11").contains("N23"));
  CHECK_THROWS_AS(fanin_cone(c17, "nope"), CircuitError);
}

TEST_CASE("bitvector text forms") {
  const auto v = BitVector::from_string("0110");
  CHECK(v.to_uint() == 6);
  CHECK(v.to_hex() == "6");
  CHECK(BitVector::from_hex("6", 4) == v);
  CHECK(BitVector::from_uint(0x1f3, 9).to_hex() == "1f3");
  CHECK_THROWS(BitVector::from_hex("1f", 4));
  CHECK(v.popcount() == 2);
  CHECK(v.hamming_distance(~v) == 4);
}

TEST_CASE("random circuits are reproducible") {
  const RandomCircuitSpec spec{.inputs = 8, .gates = 30, .seed = 9};
  CHECK(random_circuit(spec) == random_circuit(spec));
  const auto c = random_circuit(spec);
  CHECK(is_acyclic(c));
  CHECK(c.num_outputs() >= 2);
  for (const auto& g : c.gates()) CHECK(g.fanins.size() <= 3);
}
