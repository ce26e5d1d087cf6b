#include "lockeval/locks/locked_circuit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

#include "lockeval/error.hpp"
#include "lockeval/locks/insertion.hpp"
#include "lockeval/locks/point_function.hpp"
#include "lockeval/locks/routing.hpp"

namespace lockeval {

namespace {

struct KindName {
  std::string_view name;
  LockKind kind;
};

constexpr std::array<KindName, 6> kKinds{{
    {"XOR", LockKind::Xor},
    {"MUX", LockKind::Mux},
    {"LUT", LockKind::Lut},
    {"POINT_FN", LockKind::PointFunction},
    {"ROUTING", LockKind::Routing},
    {"CYCLIC_MUX", LockKind::CyclicMux},
}};

constexpr std::array<LockKind, 6> kAllKinds{LockKind::Xor,           LockKind::Mux,     LockKind::Lut,
                                            LockKind::PointFunction, LockKind::Routing, LockKind::CyclicMux};

std::optional<std::size_t> key_index(std::string_view name) {
  if (!name.starts_with("key_") || name.size() == 4) return std::nullopt;
  std::size_t idx = 0;
  const char* first = name.data() + 4;
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, idx);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return idx;
}

}  // namespace

std::string_view to_string(LockKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "?";
}

std::optional<LockKind> lock_kind_from_string(std::string_view name) {
  std::string upper(name);
  std::ranges::transform(upper, upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& k : kKinds) {
    if (k.name == upper) return k.kind;
  }
  return std::nullopt;
}

std::span<const LockKind> all_lock_kinds() { return kAllKinds; }

std::string key_name(std::size_t i) { return "key_" + std::to_string(i); }

bool is_key_name(std::string_view name) { return key_index(name).has_value(); }

std::vector<std::string> LockedCircuit::data_inputs() const {
  const auto& in = circuit.inputs();
  return {in.begin(), in.begin() + static_cast<std::ptrdiff_t>(num_data_inputs())};
}

std::vector<std::string> LockedCircuit::key_inputs() const {
  const auto& in = circuit.inputs();
  return {in.begin() + static_cast<std::ptrdiff_t>(num_data_inputs()), in.end()};
}

void LockedCircuit::validate() const {
  if (circuit.num_inputs() < key_width()) throw LockError("fewer inputs than key bits");
  const auto& in = circuit.inputs();
  const std::size_t n = num_data_inputs();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (i < n && is_key_name(in[i])) throw LockError("key input " + in[i] + " among data inputs");
    if (i >= n && in[i] != key_name(i - n)) throw LockError("expected key input " + key_name(i - n) + ", found " + in[i]);
  }
}

LockedCircuit make_locked(Circuit c, LockKind kind, BitVector correct_key) {
  std::vector<std::string> data;
  std::vector<std::pair<std::size_t, std::string>> keys;
  for (const auto& in : c.inputs()) {
    if (auto idx = key_index(in)) {
      keys.emplace_back(*idx, in);
    } else {
      data.push_back(in);
    }
  }
  std::ranges::sort(keys);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (keys[i].first != i) throw LockError("key inputs are not numbered key_0..key_" + std::to_string(keys.size() - 1));
  }
  if (correct_key.width() != keys.size()) {
    throw LockError("key has " + std::to_string(correct_key.width()) + " bits but the netlist has " +
                    std::to_string(keys.size()) + " key inputs");
  }

  Circuit ordered(c.name());
  for (const auto& d : data) ordered.add_input(d);
  for (const auto& [idx, name] : keys) ordered.add_input(name);
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::Input) ordered.add_gate(g.name, g.kind, g.fanins);
  }
  for (const auto& o : c.outputs()) ordered.add_output(o);
  ordered.validate();

  LockedCircuit out{std::move(ordered), std::move(correct_key), kind, {}};
  return out;
}

Circuit bind_key(const LockedCircuit& cl, const BitVector& key) {
  if (key.width() != cl.key_width()) {
    throw LockError("key width " + std::to_string(key.width()) + " != " + std::to_string(cl.key_width()));
  }
  const Circuit& src = cl.circuit;
  const std::size_t n = cl.num_data_inputs();
  std::unordered_map<std::string, bool> key_value;
  for (std::size_t i = 0; i < key.width(); ++i) key_value.emplace(src.inputs()[n + i], key[i]);

  Circuit out(src.name());
  for (std::size_t i = 0; i < n; ++i) out.add_input(src.inputs()[i]);
  for (std::size_t i = 0; i < key.width(); ++i) {
    out.add_gate(src.inputs()[n + i], key[i] ? GateKind::Const1 : GateKind::Const0, {});
  }
  for (const auto& g : src.gates()) {
    if (g.kind == GateKind::Input) continue;
    if (g.kind == GateKind::Mux) {
      if (auto it = key_value.find(g.fanins[0]); it != key_value.end()) {
        out.add_gate(g.name, GateKind::Buf, {g.fanins[it->second ? 2 : 1]});
        continue;
      }
    }
    out.add_gate(g.name, g.kind, g.fanins);
  }
  for (const auto& o : src.outputs()) out.add_output(o);
  return out;
}

BitVector locked_input(const BitVector& x, const BitVector& k) {
  BitVector v = x;
  for (std::size_t i = 0; i < k.width(); ++i) v.push_back(k[i]);
  return v;
}

LockedCircuit lock(const Circuit& c, LockKind kind, const LockConfig& cfg) {
  switch (kind) {
    case LockKind::Xor:
      return lock_xor(c, cfg);
    case LockKind::Mux:
      return lock_mux(c, cfg);
    case LockKind::Lut:
      return lock_lut(c, cfg);
    case LockKind::PointFunction:
      return lock_point_fn(c, cfg);
    case LockKind::Routing:
      return lock_routing(c, cfg);
    case LockKind::CyclicMux:
      return lock_cyclic_mux(c, cfg);
  }
  throw LockError("unknown lock kind");
}

}  // namespace lockeval
