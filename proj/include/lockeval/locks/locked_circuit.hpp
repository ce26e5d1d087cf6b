#ifndef LOCKEVAL_LOCKS_LOCKED_CIRCUIT_HPP
#define LOCKEVAL_LOCKS_LOCKED_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lockeval/netlist/bitvector.hpp"
#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

enum class LockKind { Xor, Mux, Lut, PointFunction, Routing, CyclicMux };

/// "XOR", "MUX", "LUT", "POINT_FN", "ROUTING", "CYCLIC_MUX".
std::string_view to_string(LockKind kind);
/// Case-insensitive inverse of to_string.
std::optional<LockKind> lock_kind_from_string(std::string_view name);
std::span<const LockKind> all_lock_kinds();

struct LockConfig {
  std::size_t width = 8;
  std::uint64_t seed = 1;
  /// LUT: inputs per replaced gate; each LUT consumes 2^arity key bits.
  std::size_t lut_arity = 2;
  /// ROUTING: network size N (power of two). 0 picks the largest N whose
  /// key width N*log2(N) - N/2 fits in `width`.
  std::size_t routing_wires = 0;
};

/// Key input name for bit i: "key_<i>".
std::string key_name(std::size_t i);
/// True for names of the form key_<digits>.
bool is_key_name(std::string_view name);

/// A locked netlist. Its inputs are the original data inputs, in their
/// original order, followed by key_0 .. key_{w-1}.
struct LockedCircuit {
  Circuit circuit;
  BitVector correct_key;
  LockKind kind = LockKind::Xor;
  std::map<std::string, std::string> metadata;

  std::size_t key_width() const { return correct_key.width(); }
  std::size_t num_data_inputs() const { return circuit.num_inputs() - key_width(); }
  std::vector<std::string> data_inputs() const;
  std::vector<std::string> key_inputs() const;

  /// Checks the input layout contract; throws LockError.
  void validate() const;
};

/// Builds a LockedCircuit from a netlist whose key inputs follow the naming
/// contract. Key inputs are moved behind the data inputs if needed.
LockedCircuit make_locked(Circuit c, LockKind kind, BitVector correct_key);

/// The data-input circuit obtained by tying the key inputs to `key`.
/// Key-selected MUXes collapse to buffers, so cyclic locks under a key that
/// breaks every cycle come out acyclic.
Circuit bind_key(const LockedCircuit& cl, const BitVector& key);

/// Concatenation (x, k) in the locked circuit's input order.
BitVector locked_input(const BitVector& x, const BitVector& k);

/// Dispatch to the lock_* transform for `kind`.
LockedCircuit lock(const Circuit& c, LockKind kind, const LockConfig& cfg);

}  // namespace lockeval

#endif
