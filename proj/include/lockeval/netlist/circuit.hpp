#ifndef LOCKEVAL_NETLIST_CIRCUIT_HPP
#define LOCKEVAL_NETLIST_CIRCUIT_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lockeval {

enum class GateKind { Input, And, Nand, Or, Nor, Xor, Xnor, Not, Buf, Mux, Const0, Const1 };

std::string_view to_string(GateKind kind);
/// Accepts BENCH spellings (case-insensitive), including BUFF and MUX.
std::optional<GateKind> gate_kind_from_string(std::string_view name);

/// Throws CircuitError when `fanin_count` is not legal for `kind`.
/// MUX: exactly 3 (select, data0, data1). NOT/BUF: 1. INPUT/CONST: 0. Others: >= 2.
void check_arity(GateKind kind, std::size_t fanin_count);

struct Gate {
  std::string name;
  GateKind kind = GateKind::Input;
  std::vector<std::string> fanins;

  bool is_pseudo() const {
    return kind == GateKind::Input || kind == GateKind::Const0 || kind == GateKind::Const1;
  }
};

/// Named combinational netlist. Net names identify gates; primary inputs
/// are gates of kind Input. Outputs reference existing nets.
///
/// Fan-in references may be added before the referenced gate exists
/// (BENCH allows forward references); validate() checks they all resolve.
class Circuit {
 public:
  explicit Circuit(std::string name = "circuit") : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void add_input(const std::string& name);
  void add_gate(const std::string& name, GateKind kind, std::vector<std::string> fanins);
  void add_output(const std::string& name);

  /// Replace the function of an existing non-input gate.
  void set_gate(const std::string& name, GateKind kind, std::vector<std::string> fanins);
  /// Rename a gate definition. References to the old name are left alone, which
  /// is what splicing needs: consumers keep pointing at the old name.
  void rename_gate(const std::string& from, const std::string& to);
  /// Replace every fan-in reference to `from` with `to` in gate `gate_name`.
  void replace_fanin(const std::string& gate_name, const std::string& from, const std::string& to);

  bool contains(std::string_view name) const { return index_.contains(std::string(name)); }
  const Gate& gate(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;

  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& inputs() const { return inputs_; }
  const std::vector<std::string>& outputs() const { return outputs_; }
  std::size_t num_inputs() const { return inputs_.size(); }
  std::size_t num_outputs() const { return outputs_.size(); }

  /// Non-pseudo gates (excludes INPUT and CONST).
  std::vector<std::string> internal_nets() const;
  /// name -> names of gates reading it.
  std::unordered_map<std::string, std::vector<std::string>> fanouts() const;
  /// A name not yet used in the circuit, derived from `base`.
  std::string fresh_name(std::string_view base) const;

  /// Throws CircuitError on undefined references or bad arity.
  void validate() const;

  /// Same inputs, outputs (ordered) and gate map; definition order and the
  /// circuit name are ignored.
  friend bool operator==(const Circuit& a, const Circuit& b);

 private:
  void add_named(Gate gate);

  std::string name_;
  std::vector<Gate> gates_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

}  // namespace lockeval

#endif
