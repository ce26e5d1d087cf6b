#include "lockeval/netlist/random_circuit.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <unordered_set>

namespace lockeval {

Circuit random_circuit(const RandomCircuitSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Circuit c("rand_" + std::to_string(spec.seed));

  std::vector<std::vector<std::string>> layers(1);
  for (std::size_t i = 0; i < spec.inputs; ++i) {
    const std::string name = "i" + std::to_string(i);
    c.add_input(name);
    layers[0].push_back(name);
  }

  static constexpr std::array kKinds{GateKind::And, GateKind::Nand, GateKind::Or,  GateKind::Nor,
                                     GateKind::Xor, GateKind::Xnor, GateKind::Not, GateKind::Mux};
  const std::size_t num_layers = std::max<std::size_t>(1, spec.layers);
  std::vector<std::string> all = layers[0];
  std::unordered_set<std::string> read;

  for (std::size_t g = 0; g < spec.gates; ++g) {
    const std::size_t layer = 1 + g * num_layers / std::max<std::size_t>(1, spec.gates);
    if (layers.size() <= layer) layers.emplace_back();
    // Nets strictly before this layer.
    std::vector<std::string> earlier;
    for (std::size_t l = 0; l < layer; ++l) earlier.insert(earlier.end(), layers[l].begin(), layers[l].end());
    const auto& prev = layers[layer - 1].empty() ? earlier : layers[layer - 1];

    GateKind kind = kKinds[std::uniform_int_distribution<std::size_t>(0, kKinds.size() - 1)(rng)];
    std::size_t arity = 0;
    if (kind == GateKind::Not) {
      arity = 1;
    } else if (kind == GateKind::Mux) {
      arity = 3;
    } else {
      arity = std::uniform_int_distribution<std::size_t>(2, std::max<std::size_t>(2, spec.max_fanin))(rng);
    }
    if (arity > spec.max_fanin || earlier.size() < arity) {
      kind = earlier.size() >= 2 ? GateKind::Nand : GateKind::Not;
      arity = kind == GateKind::Not ? 1 : 2;
    }

    std::vector<std::string> fanins;
    fanins.push_back(prev[std::uniform_int_distribution<std::size_t>(0, prev.size() - 1)(rng)]);
    while (fanins.size() < arity) {
      const auto& pick = earlier[std::uniform_int_distribution<std::size_t>(0, earlier.size() - 1)(rng)];
      if (std::ranges::find(fanins, pick) == fanins.end()) fanins.push_back(pick);
    }
    std::ranges::shuffle(fanins, rng);
    for (const auto& f : fanins) read.insert(f);

    const std::string name = "g" + std::to_string(g);
    c.add_gate(name, kind, std::move(fanins));
    layers[layer].push_back(name);
    all.push_back(name);
  }

  std::vector<std::string> extra;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Input) continue;
    if (!read.contains(g.name)) {
      c.add_output(g.name);
    } else {
      extra.push_back(g.name);
    }
  }
  std::ranges::shuffle(extra, rng);
  for (std::size_t i = 0; c.num_outputs() < spec.min_outputs && i < extra.size(); ++i) c.add_output(extra[i]);
  return c;
}

}  // namespace lockeval
