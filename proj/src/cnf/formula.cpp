#include "lockeval/cnf/formula.hpp"

#include <stdexcept>
#include <string>

namespace lockeval::cnf {

namespace {

void check_var(int var, int num_vars) {
  if (var < 1 || var > num_vars) {
    throw std::out_of_range("variable " + std::to_string(var) + " outside 1.." + std::to_string(num_vars));
  }
}

}  // namespace

void CnfFormula::add_clause(std::vector<Lit> clause) {
  for (Lit l : clause) check_var(l.var(), num_vars_);
  clauses_.push_back(std::move(clause));
}

void CnfFormula::add_xor(std::vector<int> vars, bool parity) {
  for (int v : vars) check_var(v, num_vars_);
  xors_.push_back(XorConstraint{std::move(vars), parity});
}

Lit CnfFormula::constant(bool value) {
  if (const_var_ == 0) {
    const_var_ = new_var();
    clauses_.push_back({Lit::pos(const_var_)});
  }
  return Lit(const_var_, value);
}

CnfFormula CnfFormula::expanded(int chunk) const {
  CnfFormula out;
  out.num_vars_ = num_vars_;
  out.const_var_ = const_var_;
  out.clauses_ = clauses_;
  for (const auto& x : xors_) {
    expand_xor(
        x.vars, x.parity, chunk, [&] { return out.new_var(); },
        [&](std::vector<Lit> c) { out.clauses_.push_back(std::move(c)); });
  }
  return out;
}

bool CnfFormula::satisfied_by(const std::vector<bool>& model) const {
  if (static_cast<int>(model.size()) <= num_vars_) return false;
  for (const auto& clause : clauses_) {
    bool sat = false;
    for (Lit l : clause) {
      if (model[l.var()] == l.positive()) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  for (const auto& x : xors_) {
    bool parity = false;
    for (int v : x.vars) parity ^= model[v];
    if (parity != x.parity) return false;
  }
  return true;
}

}  // namespace lockeval::cnf
