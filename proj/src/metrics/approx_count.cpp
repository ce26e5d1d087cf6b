#include "lockeval/metrics/approx_count.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lockeval/cnf/enumerate.hpp"
#include "lockeval/error.hpp"

namespace lockeval {

std::string_view to_string(CountMethod method) {
  switch (method) {
    case CountMethod::Exact:
      return "EXACT";
    case CountMethod::HashApprox:
      return "HASH_APPROX";
    case CountMethod::MonteCarlo:
      return "MONTE_CARLO";
  }
  return "?";
}

std::size_t approx_count_pivot(double e) {
  if (!(e > 0)) throw MetricError("epsilon_a must be positive");
  const double r = 1.0 + 1.0 / e;
  return static_cast<std::size_t>(1.0 + 9.84 * (1.0 + e / (1.0 + e)) * r * r);
}

std::size_t approx_count_rounds(double delta) {
  if (!(delta > 0 && delta <= 1)) throw MetricError("delta must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(17.0 * std::log2(3.0 / delta)));
}

namespace {

struct Cell {
  std::size_t count;
  bool exceeded;
};

class RoundCounter {
 public:
  RoundCounter(const cnf::CnfFormula& f, std::span<const int> projection, std::size_t pivot,
               const ApproxCountParams& params, std::mt19937_64& rng)
      : solver_(rng()), projection_(projection), pivot_(pivot), budget_(params.budget) {
    solver_.sync(f, params.xor_chunk);
    // Row j holds when its switch variable is assumed false.
    for (std::size_t j = 0; j < projection.size(); ++j) {
      std::vector<int> vars;
      for (int v : projection) {
        if (rng() & 1U) vars.push_back(v);
      }
      const int sw = solver_.new_var();
      vars.push_back(sw);
      solver_.add_xor(std::move(vars), (rng() & 1U) != 0, params.xor_chunk);
      switches_.push_back(cnf::Lit::neg(sw));
    }
  }

  Cell cell(std::size_t m) {
    const std::span<const cnf::Lit> active(switches_.data(), m);
    const auto e = cnf::enumerate_projected(solver_, projection_, pivot_, active, budget_);
    if (e.timed_out) throw MetricError("approximate count timed out");
    return {e.solutions.size(), e.exceeded};
  }

 private:
  cnf::Solver solver_;
  std::span<const int> projection_;
  std::size_t pivot_;
  cnf::Budget budget_;
  std::vector<cnf::Lit> switches_;
};

}  // namespace

CountEstimate approx_count(const cnf::CnfFormula& f, std::span<const int> projection, const ApproxCountParams& params) {
  const std::size_t pivot = params.pivot.value_or(approx_count_pivot(params.epsilon_a));
  const std::size_t rounds = params.rounds.value_or(approx_count_rounds(params.delta));
  if (pivot < 1 || rounds < 1) throw MetricError("pivot and rounds must be positive");

  {
    cnf::Solver s;
    s.sync(f, params.xor_chunk);
    const auto e = cnf::enumerate_projected(s, projection, pivot, {}, params.budget);
    if (e.timed_out) throw MetricError("approximate count timed out");
    if (!e.exceeded) return {static_cast<double>(e.solutions.size()), 0, 0, CountMethod::Exact};
  }

  std::mt19937_64 rng(params.seed);
  std::vector<double> estimates;
  estimates.reserve(rounds);
  const std::size_t n = projection.size();
  for (std::size_t r = 0; r < rounds; ++r) {
    RoundCounter counter(f, projection, pivot, params, rng);
    // Cells shrink as rows are added, so the first m with a small cell is
    // found by binary search over [1, n].
    std::size_t lo = 1;
    std::size_t hi = n;
    std::optional<Cell> best;
    std::size_t best_m = n;
    while (lo <= hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const Cell c = counter.cell(mid);
      if (!c.exceeded) {
        best = c;
        best_m = mid;
        if (mid == 1) break;
        hi = mid - 1;
      } else {
        lo = mid + 1;
      }
    }
    if (!best) {
      estimates.push_back(static_cast<double>(pivot + 1) * std::ldexp(1.0, static_cast<int>(n)));
    } else {
      estimates.push_back(static_cast<double>(best->count) * std::ldexp(1.0, static_cast<int>(best_m)));
    }
  }
  std::ranges::nth_element(estimates, estimates.begin() + static_cast<std::ptrdiff_t>(estimates.size() / 2));
  return {estimates[estimates.size() / 2], params.epsilon_a, params.delta, CountMethod::HashApprox};
}

}  // namespace lockeval
