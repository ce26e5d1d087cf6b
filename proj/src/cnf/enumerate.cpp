#include "lockeval/cnf/enumerate.hpp"

#include <stdexcept>

namespace lockeval::cnf {

Enumeration enumerate_projected(Solver& solver, std::span<const int> projection, std::size_t limit,
                                std::span<const Lit> assumptions, const Budget& budget) {
  if (limit < 1) throw std::invalid_argument("enumerate_projected: limit must be >= 1");
  Enumeration out;
  const Lit act = Lit::pos(solver.new_var());
  std::vector<Lit> assume(assumptions.begin(), assumptions.end());
  assume.push_back(act);

  std::vector<Lit> block;
  while (true) {
    const Status st = solver.solve(assume, budget);
    if (st == Status::Timeout) {
      out.timed_out = true;
      break;
    }
    if (st == Status::Unsat) break;
    if (out.solutions.size() == limit) {
      out.exceeded = true;
      break;
    }
    std::vector<bool> sol(projection.size());
    block.assign(1, ~act);
    for (std::size_t i = 0; i < projection.size(); ++i) {
      sol[i] = solver.model_value(projection[i]);
      block.push_back(Lit(projection[i], !sol[i]));
    }
    out.solutions.push_back(std::move(sol));
    solver.add_clause(block);
  }
  solver.add_clause({~act});
  return out;
}

Enumeration enumerate_projected(const CnfFormula& f, std::span<const int> projection, std::size_t limit,
                                const Budget& budget) {
  Solver solver;
  solver.sync(f);
  return enumerate_projected(solver, projection, limit, {}, budget);
}

}  // namespace lockeval::cnf
