#ifndef LOCKEVAL_CNF_DIMACS_HPP
#define LOCKEVAL_CNF_DIMACS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "lockeval/cnf/formula.hpp"

namespace lockeval::cnf {

/// DIMACS CNF text: "p cnf V C" header, one zero-terminated clause per line.
/// XOR constraints are expanded to clauses first.
std::string emit_dimacs(const CnfFormula& f, int xor_chunk = kDefaultXorChunk);

/// Reads "c" comments, the "p cnf" header and clauses. Throws ParseError.
CnfFormula parse_dimacs(std::string_view text);

/// Model from a solver's "v ..." lines (competition output format); entry 0
/// unused, unlisted variables are false. Throws ParseError if the text
/// reports UNSATISFIABLE or contains no "v" lines.
std::vector<bool> parse_dimacs_model(std::string_view text, int num_vars);

}  // namespace lockeval::cnf

#endif
