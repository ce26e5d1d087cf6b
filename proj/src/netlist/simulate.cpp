#include "lockeval/netlist/simulate.hpp"

#include <algorithm>

#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval {

Simulator::Simulator(const Circuit& c) {
  c.validate();
  const auto order = topological_order(c);
  const auto& gates = c.gates();
  num_slots_ = gates.size();
  for (const auto& in : c.inputs()) input_slots_.push_back(static_cast<std::uint32_t>(c.index_of(in)));
  for (const auto& out : c.outputs()) output_slots_.push_back(static_cast<std::uint32_t>(c.index_of(out)));
  for (std::size_t i : order) {
    const Gate& g = gates[i];
    if (g.kind == GateKind::Input) continue;
    Op op{g.kind, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(operands_.size()),
          static_cast<std::uint32_t>(g.fanins.size())};
    for (const auto& f : g.fanins) operands_.push_back(static_cast<std::uint32_t>(c.index_of(f)));
    ops_.push_back(op);
  }
}

void Simulator::run(std::span<const std::uint64_t> inputs, std::span<std::uint64_t> outputs) const {
  if (inputs.size() != input_slots_.size()) throw CircuitError("simulate: input width mismatch");
  if (outputs.size() != output_slots_.size()) throw CircuitError("simulate: output width mismatch");
  std::vector<std::uint64_t> v(num_slots_, 0);
  for (std::size_t i = 0; i < inputs.size(); ++i) v[input_slots_[i]] = inputs[i];
  for (const Op& op : ops_) {
    const std::uint32_t* a = operands_.data() + op.first;
    std::uint64_t r = 0;
    switch (op.kind) {
      case GateKind::And:
      case GateKind::Nand:
        r = ~std::uint64_t{0};
        for (std::uint32_t k = 0; k < op.count; ++k) r &= v[a[k]];
        if (op.kind == GateKind::Nand) r = ~r;
        break;
      case GateKind::Or:
      case GateKind::Nor:
        for (std::uint32_t k = 0; k < op.count; ++k) r |= v[a[k]];
        if (op.kind == GateKind::Nor) r = ~r;
        break;
      case GateKind::Xor:
      case GateKind::Xnor:
        for (std::uint32_t k = 0; k < op.count; ++k) r ^= v[a[k]];
        if (op.kind == GateKind::Xnor) r = ~r;
        break;
      case GateKind::Not:
        r = ~v[a[0]];
        break;
      case GateKind::Buf:
        r = v[a[0]];
        break;
      case GateKind::Mux:
        r = (v[a[0]] & v[a[2]]) | (~v[a[0]] & v[a[1]]);
        break;
      case GateKind::Const0:
        r = 0;
        break;
      case GateKind::Const1:
        r = ~std::uint64_t{0};
        break;
      case GateKind::Input:
        break;
    }
    v[op.out] = r;
  }
  for (std::size_t j = 0; j < outputs.size(); ++j) outputs[j] = v[output_slots_[j]];
}

BitVector Simulator::eval(const BitVector& x) const {
  if (x.width() != num_inputs()) throw CircuitError("simulate: input width mismatch");
  std::vector<std::uint64_t> in(num_inputs()), out(num_outputs());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = x[i] ? 1U : 0U;
  run(in, out);
  BitVector y(num_outputs());
  for (std::size_t j = 0; j < out.size(); ++j) y.set(j, out[j] & 1U);
  return y;
}

std::vector<BitVector> Simulator::eval_batch(std::span<const BitVector> xs) const {
  std::vector<BitVector> ys;
  ys.reserve(xs.size());
  std::vector<std::uint64_t> in(num_inputs()), out(num_outputs());
  for (std::size_t base = 0; base < xs.size(); base += 64) {
    const std::size_t lanes = std::min<std::size_t>(64, xs.size() - base);
    std::ranges::fill(in, 0);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const BitVector& x = xs[base + lane];
      if (x.width() != num_inputs()) throw CircuitError("simulate: input width mismatch");
      for (std::size_t i = 0; i < in.size(); ++i) {
        if (x[i]) in[i] |= std::uint64_t{1} << lane;
      }
    }
    run(in, out);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      BitVector y(num_outputs());
      for (std::size_t j = 0; j < out.size(); ++j) y.set(j, (out[j] >> lane) & 1U);
      ys.push_back(std::move(y));
    }
  }
  return ys;
}

BitVector simulate(const Circuit& c, const BitVector& x) {
  if (x.width() != c.num_inputs()) throw CircuitError("simulate: input width mismatch");
  return Simulator(c).eval(x);
}

std::vector<BitVector> simulate_batch(const Circuit& c, std::span<const BitVector> xs) {
  return Simulator(c).eval_batch(xs);
}

}  // namespace lockeval
