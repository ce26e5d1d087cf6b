#ifndef LOCKEVAL_CNF_ENUMERATE_HPP
#define LOCKEVAL_CNF_ENUMERATE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lockeval/cnf/formula.hpp"
#include "lockeval/cnf/solver.hpp"

namespace lockeval::cnf {

struct Enumeration {
  /// Distinct assignments to the projection variables, in projection order.
  std::vector<std::vector<bool>> solutions;
  /// A (limit+1)-th projected solution exists.
  bool exceeded = false;
  /// Budget ran out; `solutions` is partial and `exceeded` is unknown.
  bool timed_out = false;
};

/// Up to `limit` distinct projected solutions of `f`, found by blocking each
/// projected model in turn. `f` itself is not modified.
Enumeration enumerate_projected(const CnfFormula& f, std::span<const int> projection, std::size_t limit,
                                const Budget& budget = {});

/// Solver form used by the counters. Blocking clauses are guarded by a fresh
/// activation variable that is switched off before returning, so the solver's
/// logical content is unchanged afterwards.
Enumeration enumerate_projected(Solver& solver, std::span<const int> projection, std::size_t limit,
                                std::span<const Lit> assumptions, const Budget& budget = {});

}  // namespace lockeval::cnf

#endif
