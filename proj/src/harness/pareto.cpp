#include "lockeval/harness/pareto.hpp"

#include <algorithm>

#include "lockeval/error.hpp"
#include "lockeval/util/csv.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

bool dominates(const ParetoPoint& a, const ParetoPoint& b) {
  return a.overhead <= b.overhead && a.security >= b.security &&
         (a.overhead < b.overhead || a.security > b.security);
}

std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points) {
  std::ranges::stable_sort(points, [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.overhead != b.overhead) return a.overhead < b.overhead;
    return a.security > b.security;
  });
  // Sweep by overhead: a point survives if its security beats every point of
  // strictly lower overhead and matches the best at its own overhead.
  std::vector<ParetoPoint> front;
  bool have_best = false;
  double best = 0;
  for (std::size_t i = 0; i < points.size();) {
    std::size_t j = i;
    while (j < points.size() && points[j].overhead == points[i].overhead) ++j;
    const double top = points[i].security;
    if (!have_best || top > best) {
      for (std::size_t k = i; k < j && points[k].security == top; ++k) front.push_back(points[k]);
      best = top;
      have_best = true;
    }
    i = j;
  }
  return front;
}

std::vector<ParetoPoint> parse_pareto_points(std::string_view csv_text) {
  const csv::Table t = csv::parse(csv_text);
  const std::size_t overhead = t.require("overhead");
  const std::size_t security = t.require("security");
  const auto circuit = t.column("circuit");
  const auto lock = t.column("lock");
  const auto width = t.column("width");
  const auto seed = t.column("seed");
  std::vector<ParetoPoint> points;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& row = t.rows[i];
    ParetoPoint p;
    const auto o = text::parse_number<double>(row[overhead]);
    const auto s = text::parse_number<double>(row[security]);
    if (!o || !s) throw ParseError("overhead and security must be numbers", i + 2);
    p.overhead = *o;
    p.security = *s;
    if (circuit) p.circuit = row[*circuit];
    if (lock) p.lock = row[*lock];
    if (width) p.width = text::parse_number<std::size_t>(row[*width]).value_or(0);
    if (seed) p.seed = text::parse_number<std::uint64_t>(row[*seed]).value_or(0);
    points.push_back(std::move(p));
  }
  return points;
}

std::string pareto_csv(const std::vector<ParetoPoint>& points) {
  std::string out = "circuit,lock,width,seed,overhead,security\n";
  for (const auto& p : points) {
    out += csv::join({p.circuit, p.lock, std::to_string(p.width), std::to_string(p.seed),
                      text::format_double(p.overhead), text::format_double(p.security)}) +
           "\n";
  }
  return out;
}

}  // namespace lockeval
