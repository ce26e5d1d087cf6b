#ifndef LOCKEVAL_CNF_SOLVER_HPP
#define LOCKEVAL_CNF_SOLVER_HPP

#include <chrono>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "lockeval/cnf/formula.hpp"

namespace lockeval::cnf {

enum class Status { Sat, Unsat, Timeout };

/// Resource limit for one solve call. Default-constructed means unlimited.
struct Budget {
  using Clock = std::chrono::steady_clock;

  std::optional<Clock::time_point> deadline;
  std::uint64_t max_conflicts = 0;  // 0: no limit

  static Budget unlimited() { return {}; }
  static Budget seconds(double s) {
    Budget b;
    if (s > 0) {
      b.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(s));
    }
    return b;
  }
  static Budget until(Clock::time_point t) {
    Budget b;
    b.deadline = t;
    return b;
  }
  bool expired() const { return deadline && Clock::now() >= *deadline; }
};

struct SolveResult {
  Status status = Status::Unsat;
  /// Indexed by variable; entry 0 unused. Non-empty iff status == Sat.
  std::vector<bool> model;

  bool value(int var) const { return model.at(var); }
  bool value(Lit l) const { return model.at(l.var()) == l.positive(); }
};

/// Incremental CDCL solver: two-watched-literal propagation, first-UIP
/// learning with clause minimisation, VSIDS branching with phase saving, Luby
/// restarts and LBD-based learnt clause reduction.
///
/// XOR constraints are encoded as clauses and also kept as rows of a GF(2)
/// matrix; at every propagation fixpoint Gauss-Jordan elimination over the
/// unassigned columns derives the implied literals and conflicts that
/// resolution alone finds slowly (random parity constraints).
///
/// Clauses may be added between solve() calls. Assumptions are decided first
/// (one decision level each) and retracted when solve() returns, so they never
/// change the clause database. Single-threaded; one owner at a time.
class Solver {
 public:
  /// A non-zero seed perturbs the initial branching order, deterministically.
  explicit Solver(std::uint64_t seed = 0);

  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()) - 1; }
  void ensure_vars(int n);

  /// Returns false once the clause set is known to be unsatisfiable.
  bool add_clause(std::span<const Lit> lits);
  bool add_clause(std::initializer_list<Lit> lits) { return add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
  void add_xor(std::vector<int> vars, bool parity, int chunk = kDefaultXorChunk);

  /// Load everything in `f` that was appended since the previous sync() with
  /// the same formula (the first call loads all of it).
  void sync(const CnfFormula& f, int xor_chunk = kDefaultXorChunk);

  Status solve(std::span<const Lit> assumptions = {}, const Budget& budget = {});
  Status solve(std::initializer_list<Lit> assumptions, const Budget& budget = {}) {
    return solve(std::span<const Lit>(assumptions.begin(), assumptions.size()), budget);
  }

  /// Model of the last Sat answer (indexed by variable).
  const std::vector<bool>& model() const { return model_; }
  bool model_value(int var) const { return model_.at(var); }
  bool model_value(Lit l) const { return model_.at(l.var()) == l.positive(); }

  bool okay() const { return ok_; }
  std::uint64_t conflicts() const { return total_conflicts_; }
  std::uint64_t decisions() const { return total_decisions_; }

 private:
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffU;
  static constexpr CRef kEmptyConflict = 0xfffffffeU;

  struct Clause {
    std::vector<Lit> lits;
    double activity = 0;
    std::uint32_t lbd = 0;
    bool learnt = false;
    bool deleted = false;
  };
  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  // lbool: 1 true, -1 false, 0 unassigned
  std::int8_t value(Lit l) const {
    const std::int8_t v = assigns_[l.var()];
    return l.positive() ? v : static_cast<std::int8_t>(-v);
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  CRef alloc_clause(std::vector<Lit> lits, bool learnt);
  void attach(CRef cr);
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  CRef gauss_propagate();
  CRef add_gauss_clause(std::vector<Lit> lits);
  void analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level, std::uint32_t& lbd);
  bool redundant(Lit l) const;
  void cancel_until(int lvl);
  Lit pick_branch();
  void reduce_db();
  enum class SearchResult { Sat, Unsat, Timeout, Restart };
  SearchResult search(std::span<const Lit> assumptions, const Budget& budget, std::uint64_t conflict_quota);

  void bump_var(int v);
  void bump_clause(Clause& c);
  void heap_insert(int v);
  void heap_up(std::size_t pos);
  void heap_down(std::size_t pos);
  int heap_pop();
  bool heap_contains(int v) const { return heap_pos_[v] >= 0; }

  bool ok_ = true;
  std::uint64_t seed_;

  std::vector<Clause> clauses_;
  std::vector<CRef> free_slots_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;  // indexed by Lit::code of the literal becoming true

  std::vector<std::int8_t> assigns_;
  std::vector<int> levels_;
  std::vector<CRef> reasons_;
  std::vector<bool> phase_;
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<int> heap_;
  std::vector<int> heap_pos_;

  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  double max_learnts_ = 0;

  std::vector<bool> model_;
  std::uint64_t total_conflicts_ = 0;
  std::uint64_t total_decisions_ = 0;

  // GF(2) rows over xor_vars_ (column -> variable); xor_col_[var] = column or -1.
  std::vector<int> xor_vars_;
  std::vector<int> xor_col_;
  std::vector<std::vector<std::uint64_t>> xor_rows_;
  std::vector<bool> xor_parity_;

  const CnfFormula* synced_formula_ = nullptr;
  std::size_t synced_clauses_ = 0;
  std::size_t synced_xors_ = 0;
  int synced_vars_ = 0;
};

/// One-shot solve of `f`. Sat models are checked against every clause and XOR
/// constraint before being returned (std::logic_error on a violation).
SolveResult solve(const CnfFormula& f, std::span<const Lit> assumptions = {}, const Budget& budget = {});

}  // namespace lockeval::cnf

#endif
