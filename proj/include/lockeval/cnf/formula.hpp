#ifndef LOCKEVAL_CNF_FORMULA_HPP
#define LOCKEVAL_CNF_FORMULA_HPP

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace lockeval::cnf {

/// Default width of the pieces a long XOR constraint is cut into before it is
/// turned into clauses: a 6-variable XOR expands to 32 clauses.
inline constexpr int kDefaultXorChunk = 6;

/// A variable (>= 1) with a polarity.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr Lit(int var, bool positive) : code_(static_cast<std::uint32_t>(var) * 2 + (positive ? 0 : 1)) {}

  static constexpr Lit pos(int var) { return Lit(var, true); }
  static constexpr Lit neg(int var) { return Lit(var, false); }
  static constexpr Lit from_dimacs(int d) { return d > 0 ? pos(d) : neg(-d); }

  constexpr int var() const { return static_cast<int>(code_ >> 1); }
  constexpr bool positive() const { return (code_ & 1U) == 0; }
  constexpr int to_dimacs() const { return positive() ? var() : -var(); }
  /// Dense index, 2*var + (negative ? 1 : 0).
  constexpr std::uint32_t code() const { return code_; }

  constexpr Lit operator~() const {
    Lit l;
    l.code_ = code_ ^ 1U;
    return l;
  }
  /// l ^ true flips the literal.
  constexpr Lit operator^(bool flip) const {
    Lit l;
    l.code_ = code_ ^ (flip ? 1U : 0U);
    return l;
  }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;

 private:
  std::uint32_t code_ = 0;
};

struct XorConstraint {
  std::vector<int> vars;
  bool parity = false;
};

/// Clause database plus native XOR constraints over variables 1..num_vars().
class CnfFormula {
 public:
  int new_var() { return ++num_vars_; }
  int num_vars() const { return num_vars_; }
  /// Make sure variables 1..n exist.
  void ensure_vars(int n) {
    if (n > num_vars_) num_vars_ = n;
  }

  void add_clause(std::vector<Lit> clause);
  void add_clause(std::initializer_list<Lit> clause) { add_clause(std::vector<Lit>(clause)); }
  /// XOR over `vars` equals `parity`. Stored natively; expanded on demand.
  void add_xor(std::vector<int> vars, bool parity);

  /// Literal with a fixed truth value. The backing variable is allocated on
  /// first use and pinned by a unit clause.
  Lit constant(bool value);
  std::optional<bool> constant_value(Lit l) const {
    if (const_var_ == 0 || l.var() != const_var_) return std::nullopt;
    return l.positive();
  }

  const std::vector<std::vector<Lit>>& clauses() const { return clauses_; }
  const std::vector<XorConstraint>& xors() const { return xors_; }

  /// Copy with every XOR rewritten as clauses (fresh auxiliary variables for
  /// chunking).
  CnfFormula expanded(int chunk = kDefaultXorChunk) const;

  /// True iff `model` (indexed by variable, entry 0 unused) satisfies all
  /// clauses and XORs.
  bool satisfied_by(const std::vector<bool>& model) const;

 private:
  int num_vars_ = 0;
  int const_var_ = 0;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<XorConstraint> xors_;
};

/// Free-function form: f gains XOR(vars) = parity.
inline void add_xor(CnfFormula& f, std::vector<int> vars, bool parity) { f.add_xor(std::move(vars), parity); }

/// Writes the clauses of XOR(vars) = parity through the callbacks. Variables
/// that appear twice cancel. XORs wider than `chunk` are split: the first
/// chunk-1 variables are tied to a fresh variable t, and t joins the rest.
template <typename NewVar, typename EmitClause>
void expand_xor(std::vector<int> vars, bool parity, int chunk, NewVar&& new_var, EmitClause&& emit) {
  // Cancel duplicates.
  std::vector<int> sorted = vars;
  std::ranges::sort(sorted);
  vars.clear();
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if ((j - i) % 2 == 1) vars.push_back(sorted[i]);
    i = j;
  }
  if (chunk < 3) chunk = 3;

  while (true) {
    if (vars.empty()) {
      if (parity) emit(std::vector<Lit>{});
      return;
    }
    std::vector<int> piece;
    bool piece_parity = parity;
    int aux = 0;
    if (static_cast<int>(vars.size()) <= chunk) {
      piece = vars;
      vars.clear();
    } else {
      piece.assign(vars.begin(), vars.begin() + (chunk - 1));
      aux = new_var();
      piece.push_back(aux);
      piece_parity = false;  // x1 ^ ... ^ x_{k-1} ^ t = 0
      std::vector<int> rest{aux};
      rest.insert(rest.end(), vars.begin() + (chunk - 1), vars.end());
      vars = std::move(rest);
    }
    // Forbid every assignment of the piece whose parity differs.
    const std::size_t k = piece.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      if ((std::popcount(mask) % 2 == 1) == piece_parity) continue;
      std::vector<Lit> clause;
      clause.reserve(k);
      for (std::size_t i = 0; i < k; ++i) clause.push_back(Lit(piece[i], ((mask >> i) & 1U) == 0));
      emit(std::move(clause));
    }
    if (aux == 0) return;
  }
}

}  // namespace lockeval::cnf

#endif
