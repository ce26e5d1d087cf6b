#include "lockeval/cnf/encode.hpp"

#include <algorithm>
#include <stdexcept>

#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval::cnf {

Lit make_and(CnfFormula& f, std::vector<Lit> ins) {
  std::vector<Lit> kept;
  for (Lit l : ins) {
    if (auto c = f.constant_value(l)) {
      if (!*c) return f.constant(false);
      continue;
    }
    kept.push_back(l);
  }
  std::ranges::sort(kept);
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  for (std::size_t i = 1; i < kept.size(); ++i) {
    if (kept[i] == ~kept[i - 1]) return f.constant(false);
  }
  if (kept.empty()) return f.constant(true);
  if (kept.size() == 1) return kept[0];
  const Lit y = Lit::pos(f.new_var());
  std::vector<Lit> big{y};
  for (Lit l : kept) {
    f.add_clause({l, ~y});
    big.push_back(~l);
  }
  f.add_clause(std::move(big));
  return y;
}

Lit make_or(CnfFormula& f, std::vector<Lit> ins) {
  for (Lit& l : ins) l = ~l;
  return ~make_and(f, std::move(ins));
}

Lit make_xor(CnfFormula& f, std::vector<Lit> ins) {
  bool flip = false;
  std::vector<Lit> vars;
  for (Lit l : ins) {
    if (auto c = f.constant_value(l)) {
      flip ^= *c;
      continue;
    }
    flip ^= !l.positive();
    vars.push_back(Lit::pos(l.var()));
  }
  // x ^ x = 0
  std::ranges::sort(vars);
  std::vector<Lit> odd;
  for (std::size_t i = 0; i < vars.size();) {
    std::size_t j = i;
    while (j < vars.size() && vars[j] == vars[i]) ++j;
    if ((j - i) % 2 == 1) odd.push_back(vars[i]);
    i = j;
  }
  if (odd.empty()) return f.constant(flip);
  Lit acc = odd[0];
  for (std::size_t i = 1; i < odd.size(); ++i) {
    const Lit a = acc;
    const Lit b = odd[i];
    const Lit y = Lit::pos(f.new_var());
    f.add_clause({~a, ~b, ~y});
    f.add_clause({a, b, ~y});
    f.add_clause({a, ~b, y});
    f.add_clause({~a, b, y});
    acc = y;
  }
  return acc ^ flip;
}

Lit make_mux(CnfFormula& f, Lit sel, Lit d0, Lit d1) {
  if (auto c = f.constant_value(sel)) return *c ? d1 : d0;
  if (d0 == d1) return d0;
  if (d0 == ~d1) return make_xor(f, {sel, d0});
  const auto c0 = f.constant_value(d0);
  const auto c1 = f.constant_value(d1);
  if (c0 && c1) return *c1 ? sel : ~sel;  // d0 != d1 here
  if (c0) return *c0 ? make_or(f, {~sel, d1}) : make_and(f, {sel, d1});
  if (c1) return *c1 ? make_or(f, {sel, d0}) : make_and(f, {~sel, d0});
  const Lit y = Lit::pos(f.new_var());
  f.add_clause({~sel, ~d1, y});
  f.add_clause({~sel, d1, ~y});
  f.add_clause({sel, ~d0, y});
  f.add_clause({sel, d0, ~y});
  return y;
}

Lit make_differ(CnfFormula& f, const std::vector<Lit>& a, const std::vector<Lit>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("make_differ: width mismatch");
  std::vector<Lit> diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs.push_back(make_xor(f, {a[i], b[i]}));
  return make_or(f, std::move(diffs));
}

Lit make_at_least(CnfFormula& f, const std::vector<Lit>& lits, std::size_t t) {
  if (t == 0) return f.constant(true);
  if (t > lits.size()) return f.constant(false);
  // row[k] = at least k of the literals seen so far (k = 1..t)
  std::vector<Lit> row(t + 1, f.constant(false));
  row[0] = f.constant(true);
  for (Lit l : lits) {
    for (std::size_t k = t; k >= 1; --k) row[k] = make_or(f, {row[k], make_and(f, {l, row[k - 1]})});
  }
  return row[t];
}

namespace {

Lit gate_function(CnfFormula& f, const Gate& g, const std::vector<Lit>& in) {
  switch (g.kind) {
    case GateKind::And:
      return make_and(f, in);
    case GateKind::Nand:
      return ~make_and(f, in);
    case GateKind::Or:
      return make_or(f, in);
    case GateKind::Nor:
      return ~make_or(f, in);
    case GateKind::Xor:
      return make_xor(f, in);
    case GateKind::Xnor:
      return ~make_xor(f, in);
    case GateKind::Not:
      return ~in[0];
    case GateKind::Buf:
      return in[0];
    case GateKind::Mux:
      return make_mux(f, in[0], in[1], in[2]);
    case GateKind::Const0:
      return f.constant(false);
    case GateKind::Const1:
      return f.constant(true);
    case GateKind::Input:
      break;
  }
  throw CircuitError("cannot encode gate '" + g.name + "'");
}

}  // namespace

NetLits encode(const Circuit& c, CnfFormula& f, const NetLits& shared, const EncodeOptions& options) {
  c.validate();
  for (const auto& [name, lit] : shared) {
    if (!c.contains(name)) throw CircuitError("shared net '" + name + "' is not in circuit '" + c.name() + "'");
    (void)lit;
  }
  NetLits lits = shared;
  const auto& gates = c.gates();
  std::vector<Lit> in;

  if (is_acyclic(c)) {
    for (std::size_t i : topological_order(c)) {
      const Gate& g = gates[i];
      if (lits.contains(g.name)) continue;
      if (g.kind == GateKind::Input) {
        lits.emplace(g.name, Lit::pos(f.new_var()));
        continue;
      }
      in.clear();
      for (const auto& fi : g.fanins) in.push_back(lits.at(fi));
      lits.emplace(g.name, gate_function(f, g, in));
    }
    return lits;
  }

  if (!options.allow_cycles) throw CircuitError("cannot encode cyclic circuit '" + c.name() + "'");
  for (const Gate& g : gates) {
    if (!lits.contains(g.name)) lits.emplace(g.name, Lit::pos(f.new_var()));
  }
  for (const Gate& g : gates) {
    if (g.kind == GateKind::Input || shared.contains(g.name)) continue;
    in.clear();
    for (const auto& fi : g.fanins) in.push_back(lits.at(fi));
    const Lit y = lits.at(g.name);
    const Lit fn = gate_function(f, g, in);
    if (auto k = f.constant_value(fn)) {
      f.add_clause({*k ? y : ~y});
    } else {
      f.add_clause({~y, fn});
      f.add_clause({y, ~fn});
    }
  }
  return lits;
}

const NetLits& encode(const Circuit& c, CnfFormula& f, VarMap& map, const std::string& label,
                      const NetLits& shared, const EncodeOptions& options) {
  auto [it, inserted] = map.copies.insert_or_assign(label, encode(c, f, shared, options));
  (void)inserted;
  return it->second;
}

std::vector<Lit> lits_of(const NetLits& lits, const std::vector<std::string>& nets) {
  std::vector<Lit> out;
  out.reserve(nets.size());
  for (const auto& n : nets) out.push_back(lits.at(n));
  return out;
}

std::vector<Lit> constant_lits(CnfFormula& f, const BitVector& v) {
  std::vector<Lit> out;
  out.reserve(v.width());
  for (std::size_t i = 0; i < v.width(); ++i) out.push_back(f.constant(v[i]));
  return out;
}

NetLits bind(const std::vector<std::string>& nets, const std::vector<Lit>& lits) {
  if (nets.size() != lits.size()) throw std::invalid_argument("bind: size mismatch");
  NetLits out;
  for (std::size_t i = 0; i < nets.size(); ++i) out.emplace(nets[i], lits[i]);
  return out;
}

}  // namespace lockeval::cnf
