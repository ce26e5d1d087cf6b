#include "lockeval/attacks/trace_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lockeval/error.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

namespace {

constexpr std::string_view kHeader = "iter,elapsed_s,x_hex,y_hex,key_hex";

BitVector hex_field(const std::string& field, std::size_t width, std::size_t line) {
  try {
    return BitVector::from_hex(field, width);
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad hex field: ") + e.what(), line);
  }
}

template <class Row, class Footer>
void scan(std::string_view csv, Row&& row, Footer&& footer) {
  const auto lines = text::lines(csv);
  bool header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (text::trim(lines[i]).empty()) continue;
    if (!header) {
      if (text::trim(lines[i]) != kHeader) throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
      header = true;
      continue;
    }
    const auto fields = text::split(lines[i], ',');
    if (fields[0] == "TERMINATED" || fields[0] == "TIMEOUT") {
      if (fields.size() != 2) throw ParseError("footer needs 2 fields", line_no);
      footer(fields, line_no);
      continue;
    }
    if (fields.size() != 5) throw ParseError("expected 5 fields, found " + std::to_string(fields.size()), line_no);
    row(fields, line_no);
  }
  if (!header) throw ParseError("missing header", lines.size());
}

}  // namespace

std::string serialize_trace(const AttackTrace& trace) {
  std::ostringstream out;
  out << kHeader << "\n";
  char elapsed[32];
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& it = trace.iterations[i];
    std::snprintf(elapsed, sizeof elapsed, "%.9f", it.elapsed_s);
    out << (i + 1) << "," << elapsed << "," << it.io.x.to_hex() << "," << it.io.y.to_hex() << ","
        << (it.key ? it.key->to_hex() : "") << "\n";
  }
  out << to_string(trace.outcome) << "," << (trace.final_key ? trace.final_key->to_hex() : "") << "\n";
  return out.str();
}

AttackTrace parse_trace(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs, std::size_t key_width) {
  AttackTrace trace;
  bool footer_seen = false;
  scan(
      csv,
      [&](const std::vector<std::string>& f, std::size_t line) {
        if (footer_seen) throw ParseError("row after footer", line);
        const auto iter = text::parse_number<std::size_t>(f[0]);
        if (!iter || *iter != trace.iterations.size() + 1) throw ParseError("iterations must count up from 1", line);
        TraceEntry e;
        const auto elapsed = text::parse_number<double>(f[1]);
        if (!elapsed) throw ParseError("bad elapsed_s", line);
        e.elapsed_s = *elapsed;
        e.io.x = hex_field(f[2], n_inputs, line);
        e.io.y = hex_field(f[3], n_outputs, line);
        if (!f[4].empty()) e.key = hex_field(f[4], key_width, line);
        trace.iterations.push_back(std::move(e));
      },
      [&](const std::vector<std::string>& f, std::size_t line) {
        if (footer_seen) throw ParseError("second footer", line);
        footer_seen = true;
        trace.outcome = f[0] == "TERMINATED" ? AttackOutcome::Terminated : AttackOutcome::Timeout;
        if (!f[1].empty()) trace.final_key = hex_field(f[1], key_width, line);
      });
  if (!footer_seen) throw ParseError("missing outcome footer", 0);
  return trace;
}

std::vector<IoPair> parse_replay_log(std::string_view csv, std::size_t n_inputs, std::size_t n_outputs) {
  std::vector<IoPair> log;
  scan(
      csv,
      [&](const std::vector<std::string>& f, std::size_t line) {
        log.push_back({hex_field(f[2], n_inputs, line), hex_field(f[3], n_outputs, line)});
      },
      [](const std::vector<std::string>&, std::size_t) {});
  return log;
}

void write_trace(const std::filesystem::path& path, const AttackTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << serialize_trace(trace);
}

}  // namespace lockeval
