#ifndef LOCKEVAL_TESTS_ORACLE_HPP
#define LOCKEVAL_TESTS_ORACLE_HPP

// Slow reference implementations used to check the library. Nothing here
// shares code with src/ beyond the data types.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "lockeval/cnf/formula.hpp"
#include "lockeval/locks/locked_circuit.hpp"
#include "lockeval/netlist/bench.hpp"
#include "lockeval/netlist/bitvector.hpp"
#include "lockeval/netlist/circuit.hpp"

namespace oracle {

using lockeval::BitVector;
using lockeval::Circuit;
using lockeval::GateKind;

inline std::string data_path(const std::string& file) { return std::string(LOCKEVAL_TEST_DATA) + "/" + file; }
inline Circuit c17() { return lockeval::read_bench(data_path("c17.bench")); }
inline Circuit c432() { return lockeval::read_bench(data_path("c432.bench")); }

// Recursive evaluation straight from the gate definitions. MUX reads its select
// first and only then the chosen input, so a cycle broken by the select values
// evaluates fine; a live cycle throws.
inline BitVector eval(const Circuit& c, const BitVector& x) {
  if (x.width() != c.num_inputs()) throw std::invalid_argument("oracle::eval width");
  std::unordered_map<std::string, int> state;  // 0/1 value, 2 in progress
  for (std::size_t i = 0; i < c.num_inputs(); ++i) state[c.inputs()[i]] = x[i] ? 1 : 0;
  std::function<bool(const std::string&)> net = [&](const std::string& name) -> bool {
    auto it = state.find(name);
    if (it != state.end()) {
      if (it->second == 2) throw std::runtime_error("oracle::eval live cycle at " + name);
      return it->second == 1;
    }
    state[name] = 2;
    const auto& g = c.gate(name);
    bool v = false;
    auto all = [&](bool want) {
      for (const auto& f : g.fanins)
        if (net(f) != want) return false;
      return true;
    };
    auto parity = [&] {
      bool p = false;
      for (const auto& f : g.fanins) p ^= net(f);
      return p;
    };
    switch (g.kind) {
      case GateKind::And: v = all(true); break;
      case GateKind::Nand: v = !all(true); break;
      case GateKind::Or: v = !all(false); break;
      case GateKind::Nor: v = all(false); break;
      case GateKind::Xor: v = parity(); break;
      case GateKind::Xnor: v = !parity(); break;
      case GateKind::Not: v = !net(g.fanins[0]); break;
      case GateKind::Buf: v = net(g.fanins[0]); break;
      case GateKind::Mux: v = net(g.fanins[0]) ? net(g.fanins[2]) : net(g.fanins[1]); break;
      case GateKind::Const0: v = false; break;
      case GateKind::Const1: v = true; break;
      case GateKind::Input: throw std::logic_error("unbound input " + name);
    }
    state[name] = v ? 1 : 0;
    return v;
  };
  BitVector y;
  for (const auto& o : c.outputs()) y.push_back(net(o));
  return y;
}

inline BitVector concat(const BitVector& a, const BitVector& b) {
  BitVector r = a;
  for (std::size_t i = 0; i < b.width(); ++i) r.push_back(b[i]);
  return r;
}

// Inputs with at least `t` wrong output bits, over all 2^n data inputs.
inline std::uint64_t failing_inputs(const Circuit& original, const lockeval::LockedCircuit& cl, const BitVector& key,
                                    std::size_t t = 1) {
  const std::size_t n = original.num_inputs();
  std::uint64_t bad = 0;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const auto x = BitVector::from_uint(v, n);
    const auto diff = eval(original, x).hamming_distance(eval(cl.circuit, concat(x, key)));
    if (diff >= t) ++bad;
  }
  return bad;
}

inline double keycor(const Circuit& original, const lockeval::LockedCircuit& cl, const BitVector& key,
                     std::size_t t = 1) {
  return static_cast<double>(failing_inputs(original, cl, key, t)) /
         static_cast<double>(std::uint64_t{1} << original.num_inputs());
}

inline double cor(const Circuit& original, const lockeval::LockedCircuit& cl) {
  const std::size_t w = cl.key_width();
  double sum = 0;
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << w); ++k) sum += keycor(original, cl, BitVector::from_uint(k, w));
  return sum / static_cast<double>(std::uint64_t{1} << w);
}

inline bool satisfies(const lockeval::cnf::CnfFormula& f, std::uint64_t assignment) {
  std::vector<bool> model(static_cast<std::size_t>(f.num_vars()) + 1);
  for (int v = 1; v <= f.num_vars(); ++v) model[v] = ((assignment >> (v - 1)) & 1U) != 0;
  return f.satisfied_by(model);
}

// Number of distinct projections of the models of f. f must have <= 24 vars.
inline std::uint64_t projected_count(const lockeval::cnf::CnfFormula& f, const std::vector<int>& projection) {
  if (f.num_vars() > 24) throw std::invalid_argument("oracle::projected_count too many vars");
  std::vector<char> seen(std::size_t{1} << projection.size());
  std::uint64_t count = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars()); ++a) {
    if (!satisfies(f, a)) continue;
    std::size_t key = 0;
    for (std::size_t i = 0; i < projection.size(); ++i)
      if ((a >> (projection[i] - 1)) & 1U) key |= std::size_t{1} << i;
    if (!seen[key]) {
      seen[key] = 1;
      ++count;
    }
  }
  return count;
}

// Random k-CNF over vars 1..n.
template <class Rng>
lockeval::cnf::CnfFormula random_cnf(Rng& rng, int n, int clauses, int k) {
  lockeval::cnf::CnfFormula f;
  f.ensure_vars(n);
  for (int i = 0; i < clauses; ++i) {
    std::vector<lockeval::cnf::Lit> c;
    for (int j = 0; j < k; ++j)
      c.push_back(lockeval::cnf::Lit(static_cast<int>(rng() % n) + 1, (rng() & 1U) != 0));
    f.add_clause(std::move(c));
  }
  return f;
}

}  // namespace oracle

#endif
