#include <set>

#include "doctest.h"
#include "lockeval/error.hpp"
#include "lockeval/locks/benes.hpp"
#include "lockeval/locks/equivalence.hpp"
#include "lockeval/locks/insertion.hpp"
#include "lockeval/locks/lock_io.hpp"
#include "lockeval/locks/point_function.hpp"
#include "lockeval/locks/routing.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/netlist/bench.hpp"
#include "lockeval/netlist/random_circuit.hpp"
#include "lockeval/netlist/simulate.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace lockeval;

namespace {

LockConfig config_for(LockKind kind, std::size_t n_inputs, std::uint64_t seed) {
  LockConfig cfg;
  cfg.seed = seed;
  switch (kind) {
    case LockKind::Lut: cfg.width = 8; break;
    case LockKind::PointFunction: cfg.width = std::min<std::size_t>(4, n_inputs); break;
    case LockKind::Routing: cfg.width = 1; break;
    case LockKind::CyclicMux: cfg.width = 2; break;
    default: cfg.width = 6; break;
  }
  return cfg;
}

bool same_on_all_inputs(const Circuit& a, const Circuit& b) {
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << a.num_inputs()); ++v) {
    const auto x = BitVector::from_uint(v, a.num_inputs());
    if (oracle::eval(a, x) != oracle::eval(b, x)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("XOR lock on an identity wire") {
  const auto c = fixtures::identity_wire();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto cl = lock_xor(c, {.width = 1, .seed = seed});
    REQUIRE(cl.key_width() == 1);
    CHECK(cl.key_inputs() == std::vector<std::string>{"key_0"});
    std::size_t key_gates = 0;
    for (const auto& g : cl.circuit.gates()) {
      const bool reads_key = std::ranges::find(g.fanins, std::string("key_0")) != g.fanins.end();
      if (!reads_key) continue;
      ++key_gates;
      CHECK(g.kind == (cl.correct_key[0] ? GateKind::Xnor : GateKind::Xor));
    }
    CHECK(key_gates == 1);
    const auto kc = cl.correct_key;
    for (bool a : {false, true}) {
      CHECK(oracle::eval(cl.circuit, oracle::concat(BitVector{a}, kc)) == BitVector{a});
      CHECK(oracle::eval(cl.circuit, oracle::concat(BitVector{a}, ~kc)) == BitVector{!a});
    }
    CHECK(oracle::keycor(c, cl, ~kc) == 1.0);
  }
}

TEST_CASE("XOR lock on c17") {
  const auto c = oracle::c17();
  const auto cl = lock_xor(c, {.width = 8, .seed = 3});
  CHECK(cl.key_width() == 8);
  CHECK(check_equivalence(c, cl, cl.correct_key).equivalent);
  bool some_wrong = false;
  for (std::uint64_t k = 0; k < 256 && !some_wrong; ++k) {
    const auto key = BitVector::from_uint(k, 8);
    if (key == cl.correct_key) continue;
    const auto r = check_equivalence(c, cl, key);
    if (!r.equivalent) {
      some_wrong = true;
      REQUIRE(r.counterexample);
      const auto x = *r.counterexample;
      CHECK(oracle::eval(c, x) != oracle::eval(cl.circuit, oracle::concat(x, key)));
    }
  }
  CHECK(some_wrong);
  CHECK_THROWS_AS(lock_xor(fixtures::identity_wire(), {.width = 3}), LockError);
}

TEST_CASE("MUX lock") {
  const auto two = parse_bench("INPUT(a)\nINPUT(b)\nOUTPUT(y)\nOUTPUT(z)\ny = NOT(a)\nz = NOT(b)\n");
  const auto cl = lock_mux(two, {.width = 1, .seed = 2});
  std::size_t muxes = 0;
  for (const auto& g : cl.circuit.gates()) muxes += g.kind == GateKind::Mux ? 1 : 0;
  CHECK(muxes == 1);
  CHECK(is_acyclic(cl.circuit));
  CHECK(check_equivalence(two, cl, cl.correct_key).equivalent);

  const auto c432 = oracle::c432();
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto l = lock_mux(c432, {.width = 16, .seed = seed});
    CHECK(is_acyclic(l.circuit));
  }
}

TEST_CASE("LUT lock on a single AND") {
  const auto c = fixtures::single_and();
  const auto cl = lock_lut(c, {.width = 4, .seed = 1, .lut_arity = 2});
  REQUIRE(cl.key_width() == 4);
  CHECK(cl.correct_key == BitVector::from_string("0001"));
  const auto as_or = bind_key(cl, BitVector::from_string("0111"));
  for (std::uint64_t v = 0; v < 4; ++v) {
    const auto x = BitVector::from_uint(v, 2);
    CHECK(oracle::eval(as_or, x)[0] == (x[0] || x[1]));
  }
  // AND and OR differ on 01 and 10
  CHECK(oracle::keycor(c, cl, BitVector::from_string("0111")) == 0.5);
  CHECK(check_equivalence(c, cl, cl.correct_key).equivalent);
  // width below one LUT
  CHECK_THROWS_AS(lock_lut(c, {.width = 3, .lut_arity = 2}), LockError);
}

TEST_CASE("LUT lock uses floor(w / 2^arity) tables") {
  const auto cl = lock_lut(oracle::c432(), {.width = 18, .seed = 4, .lut_arity = 2});
  CHECK(cl.key_width() == 16);
}

TEST_CASE("point-function lock, n = p = 4") {
  const auto c = fixtures::four_input();
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto cl = lock_point_fn(c, {.width = 4, .seed = seed});
    REQUIRE(cl.key_width() == 4);
    for (std::uint64_t k = 0; k < 16; ++k) {
      const auto key = BitVector::from_uint(k, 4);
      CHECK(oracle::keycor(c, cl, key) == (key == cl.correct_key ? 0.0 : 2.0 / 16));
    }
    CHECK(oracle::cor(c, cl) == doctest::Approx(2.0 * 15 / 16 / 16).epsilon(1e-12));
  }
  CHECK_THROWS_AS(lock_point_fn(c, {.width = 5}), LockError);
}

TEST_CASE("Benes network") {
  CHECK(benes_key_width(2) == 1);
  CHECK(benes_key_width(4) == 6);
  CHECK(benes_key_width(8) == 20);
  BenesNetwork n2(2);
  CHECK(n2.apply({false}) == std::vector<std::size_t>{0, 1});
  CHECK(n2.apply({true}) == std::vector<std::size_t>{1, 0});

  BenesNetwork n8(8);
  CHECK(n8.num_stages() == 5);
  std::vector<std::size_t> perm{3, 7, 0, 5, 1, 6, 2, 4};
  do {
    CHECK(n8.apply(n8.route(perm)) == perm);
  } while (std::next_permutation(perm.begin(), perm.end()) && perm[0] < 4);
  CHECK_THROWS_AS(n8.route({0, 0, 1, 2, 3, 4, 5, 6}), std::invalid_argument);
  CHECK_THROWS(BenesNetwork(6));
}

TEST_CASE("routing lock") {
  const auto two = fixtures::independent_nots(2);
  const auto cl = lock_routing(two, {.width = 1, .seed = 1});
  CHECK(cl.key_width() == 1);
  CHECK(check_equivalence(two, cl, cl.correct_key).equivalent);
  CHECK(oracle::keycor(two, cl, ~cl.correct_key) > 0);

  const auto four = fixtures::independent_nots(4);
  const auto cl4 = lock_routing(four, {.width = 6, .seed = 5});
  REQUIRE(cl4.key_width() == 6);
  std::size_t identity_keys = 0;
  for (std::uint64_t k = 0; k < 64; ++k) {
    if (same_on_all_inputs(four, bind_key(cl4, BitVector::from_uint(k, 6)))) ++identity_keys;
  }
  CHECK(identity_keys > 1);
  CHECK(same_on_all_inputs(four, bind_key(cl4, cl4.correct_key)));

  // width 7 still fits only N = 4
  CHECK(lock_routing(four, {.width = 7, .seed = 5}).key_width() == 6);
  CHECK_THROWS_AS(lock_routing(four, {.width = 6, .routing_wires = 3}), LockError);
  CHECK_THROWS_AS(lock_routing(four, {.width = 20, .routing_wires = 8}), LockError);
}

TEST_CASE("cyclic MUX lock on the minimal fixture") {
  const auto c = fixtures::cyclic_base();
  const auto cl = lock_cyclic_mux(c, {.width = 1, .seed = 1});
  CHECK(cl.kind == LockKind::CyclicMux);
  CHECK_FALSE(is_acyclic(cl.circuit));
  const auto resolved = bind_key(cl, cl.correct_key);
  CHECK(is_acyclic(resolved));
  for (std::uint64_t v = 0; v < 8; ++v) {
    const auto x = BitVector::from_uint(v, 3);
    CHECK(oracle::eval(cl.circuit, oracle::concat(x, cl.correct_key)) == oracle::eval(c, x));
    CHECK(simulate(resolved, x) == simulate(c, x));
  }
  CHECK(check_equivalence(c, resolved).equivalent);
}

TEST_CASE("every lock kind is correct under its key") {
  std::vector<Circuit> fixtures{oracle::c17(), random_circuit({.inputs = 8, .gates = 30, .seed = 1}),
                                random_circuit({.inputs = 8, .gates = 30, .seed = 2})};
  for (const auto& c : fixtures) {
    for (LockKind kind : all_lock_kinds()) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        CAPTURE(c.name());
        CAPTURE(to_string(kind));
        CAPTURE(seed);
        const auto cfg = config_for(kind, c.num_inputs(), seed);
        const auto cl = lock(c, kind, cfg);
        CHECK(cl.kind == kind);
        CHECK(cl.data_inputs() == c.inputs());
        std::size_t keys = 0;
        for (const auto& in : cl.circuit.inputs()) keys += is_key_name(in) ? 1 : 0;
        CHECK(keys == cl.key_width());
        CHECK(is_acyclic(cl.circuit) == (kind != LockKind::CyclicMux));
        CHECK(check_equivalence(c, cl, cl.correct_key).equivalent);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << c.num_inputs()); v += 7) {
          const auto x = BitVector::from_uint(v, c.num_inputs());
          CHECK(oracle::eval(cl.circuit, oracle::concat(x, cl.correct_key)) == oracle::eval(c, x));
        }
        const auto again = lock(c, kind, cfg);
        CHECK(serialize_bench(again.circuit) == serialize_bench(cl.circuit));
        CHECK(again.correct_key == cl.correct_key);
      }
    }
  }
}

TEST_CASE("locked netlist files") {
  const auto cl = lock_xor(oracle::c17(), {.width = 5, .seed = 9});
  const auto text = serialize_locked(cl);
  CHECK(text.rfind("# LOCK kind=XOR width=5 seed=9", 0) == 0);
  CHECK(text.find(cl.correct_key.to_hex() + "\n") == std::string::npos);
  const auto back = parse_locked(text, cl.correct_key.to_hex());
  CHECK(back.circuit == cl.circuit);
  CHECK(back.correct_key == cl.correct_key);
  CHECK(back.kind == LockKind::Xor);

  const auto dir = std::filesystem::temp_directory_path() / "lockeval_test_locks";
  std::filesystem::create_directories(dir);
  const auto path = dir / "c17_xor.bench";
  write_locked(path, cl);
  CHECK(std::filesystem::exists(key_path_for(path)));
  const auto read = read_locked(path);
  CHECK(read.correct_key == cl.correct_key);
  CHECK(read.circuit == cl.circuit);
  std::filesystem::remove_all(dir);

  const auto unknown = parse_locked(text, "");
  CHECK(unknown.metadata.at("key_known") == "0");
}

TEST_CASE("key inputs are moved behind data inputs") {
  Circuit c("k");
  c.add_input("key_0");
  c.add_input("a");
  c.add_gate("y", GateKind::Xor, {"a", "key_0"});
  c.add_output("y");
  const auto cl = make_locked(c, LockKind::Xor, BitVector{0});
  CHECK(cl.circuit.inputs() == std::vector<std::string>{"a", "key_0"});
  CHECK(is_key_name("key_12"));
  CHECK_FALSE(is_key_name("key_"));
  CHECK_FALSE(is_key_name("keyx_1"));
}
