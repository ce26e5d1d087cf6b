#ifndef LOCKEVAL_ATTACKS_MITER_ATTACK_HPP
#define LOCKEVAL_ATTACKS_MITER_ATTACK_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lockeval/attacks/oracle.hpp"
#include "lockeval/cnf/formula.hpp"
#include "lockeval/cnf/solver.hpp"
#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval {

enum class AttackOutcome { Terminated, Timeout };

std::string_view to_string(AttackOutcome outcome);

struct TraceEntry {
  double elapsed_s = 0;
  IoPair io;
  /// A key consistent with every IO pair up to and including this one
  /// (only recorded when AttackOptions::trace_keys is set).
  std::optional<BitVector> key;
};

struct AttackTrace {
  std::vector<TraceEntry> iterations;
  AttackOutcome outcome = AttackOutcome::Timeout;
  std::optional<BitVector> final_key;

  std::vector<IoPair> io_pairs() const;
};

struct AttackOptions {
  double timeout_s = 60;
  /// Runs on the attack's own solver, so it also changes which distinguishing
  /// inputs later iterations find (still deterministic for fixed options).
  bool trace_keys = false;
  /// 0 = unlimited. Reaching the cap ends the attack with outcome Timeout.
  std::size_t max_iterations = 0;
  /// Extra constraints on the key: variable i+1 stands for key_i
  /// (see cycsat_conditions). Applied to both miter keys.
  std::optional<cnf::CnfFormula> key_conditions = std::nullopt;
  std::uint64_t solver_seed = 0;
};

/// Oracle-guided key recovery. Each iteration asks for an input on which two
/// keys, both consistent with the IO pairs learned so far, disagree; queries
/// the oracle there; and constrains both key copies to reproduce the answer.
/// When no such input remains, any consistent key is functionally correct and
/// is returned as final_key.
AttackTrace miter_attack(const LockedCircuit& cl, Oracle& oracle, const AttackOptions& options = {});

/// A key reproducing every pair in `pairs` (and satisfying `conditions`), or
/// nullopt on timeout. Throws AttackError if no such key exists.
std::optional<BitVector> extract_key(std::span<const IoPair> pairs, const LockedCircuit& cl,
                                     const cnf::CnfFormula* conditions = nullptr, const cnf::Budget& budget = {});

}  // namespace lockeval

#endif
