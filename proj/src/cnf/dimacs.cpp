#include "lockeval/cnf/dimacs.hpp"

#include <sstream>

#include "lockeval/error.hpp"

namespace lockeval::cnf {

std::string emit_dimacs(const CnfFormula& f, int xor_chunk) {
  const CnfFormula e = f.expanded(xor_chunk);
  std::ostringstream out;
  out << "p cnf " << e.num_vars() << " " << e.clauses().size() << "\n";
  for (const auto& clause : e.clauses()) {
    for (Lit l : clause) out << l.to_dimacs() << " ";
    out << "0\n";
  }
  return out.str();
}

CnfFormula parse_dimacs(std::string_view text) {
  CnfFormula f;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  long declared_clauses = 0;
  std::vector<Lit> clause;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      int vars = 0;
      if (!(ls >> fmt >> vars >> declared_clauses) || fmt != "cnf" || vars < 0) {
        throw ParseError("malformed 'p cnf' header", line_no);
      }
      f.ensure_vars(vars);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before 'p cnf' header", line_no);
    std::istringstream cs(line);
    long v = 0;
    while (cs >> v) {
      if (v == 0) {
        f.add_clause(clause);
        clause.clear();
        continue;
      }
      const long var = v < 0 ? -v : v;
      if (var > f.num_vars()) throw ParseError("variable " + std::to_string(var) + " exceeds header", line_no);
      clause.push_back(Lit::from_dimacs(static_cast<int>(v)));
    }
    if (!cs.eof()) throw ParseError("non-integer token in clause", line_no);
  }
  if (!clause.empty()) f.add_clause(clause);
  if (!header) throw ParseError("missing 'p cnf' header", line_no);
  if (static_cast<long>(f.clauses().size()) != declared_clauses) {
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses().size()),
                     line_no);
  }
  return f;
}

std::vector<bool> parse_dimacs_model(std::string_view text, int num_vars) {
  std::vector<bool> model(static_cast<std::size_t>(num_vars) + 1, false);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.starts_with("s ") && line.find("UNSAT") != std::string::npos) {
      throw ParseError("solver reported UNSATISFIABLE", line_no);
    }
    if (!line.starts_with("v")) continue;
    any = true;
    std::istringstream ls(line.substr(1));
    long v = 0;
    while (ls >> v) {
      if (v == 0) continue;
      const long var = v < 0 ? -v : v;
      if (var > num_vars) throw ParseError("model variable out of range", line_no);
      model[static_cast<std::size_t>(var)] = v > 0;
    }
  }
  if (!any) throw ParseError("no 'v' model lines", line_no);
  return model;
}

}  // namespace lockeval::cnf
