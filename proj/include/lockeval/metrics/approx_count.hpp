#ifndef LOCKEVAL_METRICS_APPROX_COUNT_HPP
#define LOCKEVAL_METRICS_APPROX_COUNT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "lockeval/cnf/formula.hpp"
#include "lockeval/cnf/solver.hpp"

namespace lockeval {

enum class CountMethod { Exact, HashApprox, MonteCarlo };

std::string_view to_string(CountMethod method);

struct CountEstimate {
  double estimate = 0;
  double epsilon_a = 0;  // 0 for exact counts
  double delta = 0;      // 0 for exact counts
  CountMethod method = CountMethod::Exact;
};

struct ApproxCountParams {
  double epsilon_a = 0.8;
  double delta = 0.2;
  std::uint64_t seed = 1;
  /// Overrides for the cell-size threshold and the number of rounds.
  std::optional<std::size_t> pivot = std::nullopt;
  std::optional<std::size_t> rounds = std::nullopt;
  int xor_chunk = cnf::kDefaultXorChunk;
  cnf::Budget budget = {};
};

/// Cell-size threshold: floor(1 + 9.84 (1 + e/(1+e)) (1 + 1/e)^2); 72 for e = 0.8.
std::size_t approx_count_pivot(double epsilon_a);
/// Rounds whose median is reported: ceil(17 log2(3/delta)); 67 for delta = 0.2.
std::size_t approx_count_rounds(double delta);

/// Number of distinct assignments to `projection` that extend to a model of f.
///
/// Counts exactly when there are at most pivot solutions. Otherwise each round
/// draws a chain of random XOR constraints over the projection (each variable
/// kept with probability 1/2, random parity), finds by binary search the
/// smallest prefix length m whose cell holds at most pivot solutions, and
/// estimates cell * 2^m; the median over rounds is returned. The result lies
/// within a factor (1 + epsilon_a) of the true count with probability at least
/// 1 - delta. Throws MetricError on timeout.
CountEstimate approx_count(const cnf::CnfFormula& f, std::span<const int> projection,
                           const ApproxCountParams& params = {});

}  // namespace lockeval

#endif
