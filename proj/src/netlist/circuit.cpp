#include "lockeval/netlist/circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

#include "lockeval/error.hpp"

namespace lockeval {

namespace {

struct KindName {
  std::string_view name;
  GateKind kind;
};

constexpr std::array<KindName, 13> kKindNames{{
    {"INPUT", GateKind::Input},
    {"AND", GateKind::And},
    {"NAND", GateKind::Nand},
    {"OR", GateKind::Or},
    {"NOR", GateKind::Nor},
    {"XOR", GateKind::Xor},
    {"XNOR", GateKind::Xnor},
    {"NOT", GateKind::Not},
    {"BUF", GateKind::Buf},
    {"BUFF", GateKind::Buf},
    {"MUX", GateKind::Mux},
    {"CONST0", GateKind::Const0},
    {"CONST1", GateKind::Const1},
}};

}  // namespace

std::string_view to_string(GateKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "?";
}

std::optional<GateKind> gate_kind_from_string(std::string_view name) {
  std::string upper(name);
  std::ranges::transform(upper, upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& entry : kKindNames) {
    if (entry.name == upper) return entry.kind;
  }
  return std::nullopt;
}

void check_arity(GateKind kind, std::size_t fanin_count) {
  bool ok = false;
  switch (kind) {
    case GateKind::Input:
    case GateKind::Const0:
    case GateKind::Const1:
      ok = fanin_count == 0;
      break;
    case GateKind::Not:
    case GateKind::Buf:
      ok = fanin_count == 1;
      break;
    case GateKind::Mux:
      ok = fanin_count == 3;
      break;
    default:
      ok = fanin_count >= 2;
      break;
  }
  if (!ok) {
    throw CircuitError(std::string(to_string(kind)) + " gate cannot have " + std::to_string(fanin_count) +
                       " fan-ins");
  }
}

void Circuit::add_named(Gate gate) {
  if (index_.contains(gate.name)) throw CircuitError("duplicate definition of net '" + gate.name + "'");
  index_.emplace(gate.name, gates_.size());
  gates_.push_back(std::move(gate));
}

void Circuit::add_input(const std::string& name) {
  add_named(Gate{name, GateKind::Input, {}});
  inputs_.push_back(name);
}

void Circuit::add_gate(const std::string& name, GateKind kind, std::vector<std::string> fanins) {
  if (kind == GateKind::Input) throw CircuitError("use add_input for primary input '" + name + "'");
  check_arity(kind, fanins.size());
  add_named(Gate{name, kind, std::move(fanins)});
}

void Circuit::add_output(const std::string& name) {
  if (std::ranges::find(outputs_, name) != outputs_.end()) {
    throw CircuitError("duplicate output '" + name + "'");
  }
  outputs_.push_back(name);
}

void Circuit::set_gate(const std::string& name, GateKind kind, std::vector<std::string> fanins) {
  const std::size_t i = index_of(name);
  if (gates_[i].kind == GateKind::Input || kind == GateKind::Input) {
    throw CircuitError("cannot redefine primary input '" + name + "'");
  }
  check_arity(kind, fanins.size());
  gates_[i].kind = kind;
  gates_[i].fanins = std::move(fanins);
}

void Circuit::rename_gate(const std::string& from, const std::string& to) {
  const std::size_t i = index_of(from);
  if (gates_[i].kind == GateKind::Input) throw CircuitError("cannot rename primary input '" + from + "'");
  if (index_.contains(to)) throw CircuitError("duplicate definition of net '" + to + "'");
  index_.erase(from);
  index_.emplace(to, i);
  gates_[i].name = to;
}

void Circuit::replace_fanin(const std::string& gate_name, const std::string& from, const std::string& to) {
  auto& fanins = gates_[index_of(gate_name)].fanins;
  std::ranges::replace(fanins, from, to);
}

const Gate& Circuit::gate(std::string_view name) const { return gates_[index_of(name)]; }

std::size_t Circuit::index_of(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  if (it == index_.end()) throw CircuitError("unknown net '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> Circuit::internal_nets() const {
  std::vector<std::string> nets;
  for (const auto& g : gates_) {
    if (!g.is_pseudo()) nets.push_back(g.name);
  }
  return nets;
}

std::unordered_map<std::string, std::vector<std::string>> Circuit::fanouts() const {
  std::unordered_map<std::string, std::vector<std::string>> out;
  for (const auto& g : gates_) {
    for (const auto& f : g.fanins) out[f].push_back(g.name);
  }
  return out;
}

std::string Circuit::fresh_name(std::string_view base) const {
  std::string candidate(base);
  for (std::size_t n = 1; index_.contains(candidate); ++n) {
    candidate = std::string(base) + "_" + std::to_string(n);
  }
  return candidate;
}

void Circuit::validate() const {
  for (const auto& g : gates_) {
    check_arity(g.kind, g.fanins.size());
    for (const auto& f : g.fanins) {
      if (!index_.contains(f)) {
        throw CircuitError("net '" + f + "' used by '" + g.name + "' is undefined");
      }
    }
  }
  for (const auto& o : outputs_) {
    if (!index_.contains(o)) throw CircuitError("output '" + o + "' is undefined");
  }
}

bool operator==(const Circuit& a, const Circuit& b) {
  if (a.inputs_ != b.inputs_ || a.outputs_ != b.outputs_ || a.gates_.size() != b.gates_.size()) return false;
  for (const auto& g : a.gates_) {
    const auto it = b.index_.find(g.name);
    if (it == b.index_.end()) return false;
    const Gate& h = b.gates_[it->second];
    if (g.kind != h.kind || g.fanins != h.fanins) return false;
  }
  return true;
}

}  // namespace lockeval
