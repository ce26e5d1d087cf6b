#ifndef LOCKEVAL_HARNESS_PARETO_HPP
#define LOCKEVAL_HARNESS_PARETO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lockeval {

struct ParetoPoint {
  double overhead = 0;
  double security = 0;
  std::string circuit;
  std::string lock;
  std::size_t width = 0;
  std::uint64_t seed = 0;
};

/// a dominates b: no worse on both axes (lower overhead, higher security) and
/// strictly better on one.
bool dominates(const ParetoPoint& a, const ParetoPoint& b);

/// Non-dominated points sorted by overhead (then by descending security).
/// Points tied on both axes are all kept.
std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points);

/// Points from a CSV with `overhead` and `security` columns; circuit, lock,
/// width and seed are read when present. Throws ParseError.
std::vector<ParetoPoint> parse_pareto_points(std::string_view csv_text);
std::string pareto_csv(const std::vector<ParetoPoint>& points);

}  // namespace lockeval

#endif
