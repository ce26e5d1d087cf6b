#ifndef LOCKEVAL_METRICS_METRICS_CSV_HPP
#define LOCKEVAL_METRICS_METRICS_CSV_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lockeval/metrics/corruption.hpp"

namespace lockeval {

/// One result line: metric,circuit,lock,width,seed,key_hex,value,lo,hi,method,params.
struct MetricRow {
  std::string metric;
  std::string circuit;
  std::string lock;
  std::size_t width = 0;
  std::uint64_t seed = 0;
  std::string key_hex;
  double value = 0;
  double lo = 0;
  double hi = 0;
  std::string method;
  std::string params;
};

/// Fills value, lo, hi, method and params from an estimate.
MetricRow metric_row(std::string metric, const CorruptionEstimate& e);

std::string metrics_csv_header(bool with_floor = false);
/// With `floor`, two columns are appended: plot_value (floor in place of an
/// exact zero) and floored (1 when substituted). `value` itself stays 0.
std::string format_metric_row(const MetricRow& row, std::optional<double> floor = std::nullopt);
std::string metrics_csv(const std::vector<MetricRow>& rows, std::optional<double> floor = std::nullopt);
/// Reads rows written by metrics_csv; extra columns are ignored.
std::vector<MetricRow> parse_metrics_csv(std::string_view text);

/// Log-plot floors used for zero corruption values.
inline constexpr double kKeyCorFloor = 1e-14;
inline constexpr double kPmcFloor = 1e-19;

}  // namespace lockeval

#endif
