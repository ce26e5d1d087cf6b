#include "lockeval/metrics/metrics_csv.hpp"

#include "lockeval/error.hpp"
#include "lockeval/util/csv.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

namespace {

constexpr std::string_view kColumns[] = {"metric", "circuit", "lock", "width", "seed", "key_hex",
                                         "value",  "lo",      "hi",   "method", "params"};

template <class T>
T field(const std::vector<std::string>& row, std::size_t col, std::size_t line) {
  const auto v = text::parse_number<T>(row[col]);
  if (!v) throw ParseError("bad number '" + row[col] + "' in column " + std::string(kColumns[col]), line);
  return *v;
}

}  // namespace

MetricRow metric_row(std::string metric, const CorruptionEstimate& e) {
  MetricRow r;
  r.metric = std::move(metric);
  r.value = e.value;
  r.lo = e.lo;
  r.hi = e.hi;
  r.method = std::string(to_string(e.method));
  r.params = e.params;
  return r;
}

std::string metrics_csv_header(bool with_floor) {
  std::string h;
  for (std::string_view c : kColumns) {
    if (!h.empty()) h += ',';
    h += c;
  }
  if (with_floor) h += ",plot_value,floored";
  return h;
}

std::string format_metric_row(const MetricRow& r, std::optional<double> floor) {
  std::vector<std::string> f = {r.metric,
                                r.circuit,
                                r.lock,
                                std::to_string(r.width),
                                std::to_string(r.seed),
                                r.key_hex,
                                text::format_double(r.value),
                                text::format_double(r.lo),
                                text::format_double(r.hi),
                                r.method,
                                r.params};
  if (floor) {
    const bool floored = r.value == 0;
    f.push_back(text::format_double(floored ? *floor : r.value));
    f.push_back(floored ? "1" : "0");
  }
  return csv::join(f);
}

std::string metrics_csv(const std::vector<MetricRow>& rows, std::optional<double> floor) {
  std::string out = metrics_csv_header(floor.has_value()) + "\n";
  for (const auto& r : rows) out += format_metric_row(r, floor) + "\n";
  return out;
}

std::vector<MetricRow> parse_metrics_csv(std::string_view text) {
  const csv::Table t = csv::parse(text);
  std::vector<std::size_t> cols;
  for (std::string_view c : kColumns) cols.push_back(t.require(c));
  std::vector<MetricRow> rows;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    std::vector<std::string> r;
    for (std::size_t c : cols) r.push_back(t.rows[i][c]);
    const std::size_t line = i + 2;
    MetricRow m;
    m.metric = r[0];
    m.circuit = r[1];
    m.lock = r[2];
    m.width = field<std::size_t>(r, 3, line);
    m.seed = field<std::uint64_t>(r, 4, line);
    m.key_hex = r[5];
    m.value = field<double>(r, 6, line);
    m.lo = field<double>(r, 7, line);
    m.hi = field<double>(r, 8, line);
    m.method = r[9];
    m.params = r[10];
    rows.push_back(std::move(m));
  }
  return rows;
}

}  // namespace lockeval
