#include "lockeval/cnf/solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lockeval::cnf {

namespace {

// Luby sequence 1,1,2,1,1,2,4,... scaled by y^k.
double luby(double y, std::uint64_t x) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kRestartBase = 100;
constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;

}  // namespace

Solver::Solver(std::uint64_t seed) : seed_(seed) {
  // Variable 0 is a placeholder so that variables index directly.
  assigns_.push_back(0);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  phase_.push_back(false);
  activity_.push_back(0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.resize(2);
}

int Solver::new_var() {
  const int v = static_cast<int>(assigns_.size());
  assigns_.push_back(0);
  levels_.push_back(0);
  reasons_.push_back(kNoReason);
  phase_.push_back(false);
  activity_.push_back(seed_ == 0 ? 0.0 : static_cast<double>(splitmix(seed_ ^ static_cast<std::uint64_t>(v)) >> 11) * 1e-21);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.resize(watches_.size() + 2);
  heap_insert(v);
  return v;
}

void Solver::ensure_vars(int n) {
  while (num_vars() < n) new_var();
}

Solver::CRef Solver::alloc_clause(std::vector<Lit> lits, bool learnt) {
  Clause c;
  c.lits = std::move(lits);
  c.learnt = learnt;
  if (!free_slots_.empty()) {
    const CRef cr = free_slots_.back();
    free_slots_.pop_back();
    clauses_[cr] = std::move(c);
    return cr;
  }
  clauses_.push_back(std::move(c));
  return static_cast<CRef>(clauses_.size() - 1);
}

void Solver::attach(CRef cr) {
  const Clause& c = clauses_[cr];
  watches_[(~c.lits[0]).code()].push_back(Watcher{cr, c.lits[1]});
  watches_[(~c.lits[1]).code()].push_back(Watcher{cr, c.lits[0]});
}

bool Solver::add_clause(std::span<const Lit> lits) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> c(lits.begin(), lits.end());
  for (Lit l : c) {
    if (l.var() < 1) throw std::invalid_argument("literal with variable < 1");
    ensure_vars(l.var());
  }
  std::ranges::sort(c);
  std::vector<Lit> kept;
  kept.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0 && c[i] == c[i - 1]) continue;
    if (i > 0 && c[i] == ~c[i - 1]) return true;  // tautology
    const auto v = value(c[i]);
    if (v > 0) return true;
    if (v < 0) continue;
    kept.push_back(c[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(alloc_clause(std::move(kept), false));
  return true;
}

void Solver::add_xor(std::vector<int> vars, bool parity, int chunk) {
  for (int v : vars) ensure_vars(v);
  if (xor_col_.size() < assigns_.size()) xor_col_.resize(assigns_.size(), -1);
  std::vector<std::uint64_t> row((xor_vars_.size() + 64) / 64 + 1, 0);
  for (int v : vars) {
    if (xor_col_[v] < 0) {
      xor_col_[v] = static_cast<int>(xor_vars_.size());
      xor_vars_.push_back(v);
    }
    const auto c = static_cast<std::size_t>(xor_col_[v]);
    if (c / 64 >= row.size()) row.resize(c / 64 + 1, 0);
    row[c / 64] ^= std::uint64_t{1} << (c % 64);
  }
  xor_rows_.push_back(std::move(row));
  xor_parity_.push_back(parity);
  expand_xor(
      std::move(vars), parity, chunk, [&] { return new_var(); }, [&](std::vector<Lit> c) { add_clause(c); });
}

void Solver::sync(const CnfFormula& f, int xor_chunk) {
  if (synced_formula_ != &f) {
    synced_formula_ = &f;
    synced_clauses_ = 0;
    synced_xors_ = 0;
    synced_vars_ = 0;
  }
  // Variables the solver allocated on its own (XOR chunk auxiliaries,
  // activation literals) would alias variables the formula creates later.
  if (f.num_vars() > synced_vars_ && num_vars() > synced_vars_) {
    throw std::logic_error("formula grew after the solver allocated private variables");
  }
  ensure_vars(f.num_vars());
  synced_vars_ = f.num_vars();
  const auto& clauses = f.clauses();
  for (; synced_clauses_ < clauses.size(); ++synced_clauses_) add_clause(clauses[synced_clauses_]);
  const auto& xors = f.xors();
  for (; synced_xors_ < xors.size(); ++synced_xors_) {
    add_xor(xors[synced_xors_].vars, xors[synced_xors_].parity, xor_chunk);
  }
}

void Solver::enqueue(Lit l, CRef reason) {
  const int v = l.var();
  assigns_[v] = l.positive() ? 1 : -1;
  levels_[v] = level();
  reasons_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = ~p;
    auto& ws = watches_[p.code()];
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) > 0) {
        ws[j++] = ws[i++];
        continue;
      }
      Clause& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
      ++i;
      const Lit first = c.lits[0];
      const Watcher nw{w.cref, first};
      if (first != w.blocker && value(first) > 0) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) >= 0) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[(~c.lits[1]).code()].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) < 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

Solver::CRef Solver::add_gauss_clause(std::vector<Lit> lits) {
  // lits[0] is the implied literal (or the first conflict literal); watch it
  // and the false literal of highest level.
  std::size_t best = 1;
  for (std::size_t k = 2; k < lits.size(); ++k) {
    if (levels_[lits[k].var()] > levels_[lits[best].var()]) best = k;
  }
  std::swap(lits[1], lits[best]);
  std::uint32_t lbd = 0;
  for (Lit l : lits) lbd = std::max<std::uint32_t>(lbd, static_cast<std::uint32_t>(levels_[l.var()]));
  const CRef cr = alloc_clause(std::move(lits), true);
  clauses_[cr].lbd = std::min<std::uint32_t>(lbd, static_cast<std::uint32_t>(clauses_[cr].lits.size()));
  attach(cr);
  learnts_.push_back(cr);
  return cr;
}

Solver::CRef Solver::gauss_propagate() {
  const std::size_t cols = xor_vars_.size();
  const std::size_t words = (cols + 63) / 64;
  const std::size_t rows = xor_rows_.size();
  const std::size_t rwords = (rows + 63) / 64;

  std::vector<std::uint64_t> assigned(words, 0);
  std::vector<std::uint64_t> truth(words, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    const auto v = assigns_[xor_vars_[c]];
    if (v != 0) assigned[c / 64] |= std::uint64_t{1} << (c % 64);
    if (v > 0) truth[c / 64] |= std::uint64_t{1} << (c % 64);
  }

  // Reduced rows over unassigned columns, each tagged with the original rows
  // it combines.
  std::vector<std::uint64_t> m(rows * words, 0);
  std::vector<std::uint64_t> comb(rows * rwords, 0);
  std::vector<char> par(rows, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = xor_rows_[r];
    int p = xor_parity_[r] ? 1 : 0;
    for (std::size_t w = 0; w < words && w < row.size(); ++w) {
      m[r * words + w] = row[w] & ~assigned[w];
      p ^= std::popcount(row[w] & truth[w]) & 1;
    }
    par[r] = static_cast<char>(p);
    comb[r * rwords + r / 64] = std::uint64_t{1} << (r % 64);
  }
  auto xor_into = [&](std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words; ++w) m[dst * words + w] ^= m[src * words + w];
    for (std::size_t w = 0; w < rwords; ++w) comb[dst * rwords + w] ^= comb[src * rwords + w];
    par[dst] ^= par[src];
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t w = 0; w < words; ++w) std::swap(m[a * words + w], m[b * words + w]);
    for (std::size_t w = 0; w < rwords; ++w) std::swap(comb[a * rwords + w], comb[b * rwords + w]);
    std::swap(par[a], par[b]);
  };

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows && !(m[piv * words + c / 64] & bit)) ++piv;
    if (piv == rows) continue;
    swap_rows(piv, rank);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && (m[r * words + c / 64] & bit)) xor_into(r, rank);
    }
    ++rank;
  }

  // Clause from the combination of original rows in comb[r]: every assigned
  // variable of the combined row contributes its currently false literal.
  auto explain = [&](std::size_t r, int implied_col) {
    std::vector<std::uint64_t> full(words, 0);
    for (std::size_t o = 0; o < rows; ++o) {
      if (!(comb[r * rwords + o / 64] >> (o % 64) & 1U)) continue;
      const auto& row = xor_rows_[o];
      for (std::size_t w = 0; w < words && w < row.size(); ++w) full[w] ^= row[w];
    }
    std::vector<Lit> lits;
    if (implied_col >= 0) {
      const int v = xor_vars_[static_cast<std::size_t>(implied_col)];
      lits.push_back(Lit(v, par[r] != 0));
    }
    for (std::size_t w = 0; w < words; ++w) {
      for (std::uint64_t bits = full[w] & assigned[w]; bits; bits &= bits - 1) {
        const int v = xor_vars_[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
        lits.push_back(Lit(v, assigns_[v] < 0));
      }
    }
    return lits;
  };

  for (std::size_t r = rank; r < rows; ++r) {
    if (!par[r]) continue;
    std::vector<Lit> lits = explain(r, -1);
    if (lits.empty()) return kEmptyConflict;
    if (lits.size() == 1) {
      // A single false literal: the constraint is a unit on that variable.
      const CRef cr = alloc_clause(std::move(lits), true);
      return cr;
    }
    std::ranges::sort(lits, [&](Lit a, Lit b) { return levels_[a.var()] > levels_[b.var()]; });
    return add_gauss_clause(std::move(lits));
  }

  for (std::size_t r = 0; r < rank; ++r) {
    int col = -1;
    bool single = true;
    for (std::size_t w = 0; w < words && single; ++w) {
      const std::uint64_t x = m[r * words + w];
      if (!x) continue;
      if (col >= 0 || (x & (x - 1))) {
        single = false;
      } else {
        col = static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
      }
    }
    if (!single || col < 0) continue;
    std::vector<Lit> lits = explain(r, col);
    const Lit implied = lits[0];
    if (value(implied) != 0) continue;
    if (lits.size() == 1) {
      enqueue(implied, alloc_clause(std::move(lits), true));
    } else {
      enqueue(implied, add_gauss_clause(std::move(lits)));
    }
  }
  return kNoReason;
}

void Solver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_contains(v)) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (CRef cr : learnts_) clauses_[cr].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Lit l) const {
  const CRef r = reasons_[l.var()];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const int v = lits[k].var();
    if (!seen_[v] && levels_[v] > 0) return false;
  }
  return true;
}

void Solver::analyze(CRef confl, std::vector<Lit>& learnt, int& backtrack_level, std::uint32_t& lbd) {
  learnt.clear();
  learnt.push_back(Lit());  // asserting literal goes here
  int path = 0;
  Lit p;
  bool have_p = false;
  std::size_t index = trail_.size();

  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_p ? 1 : 0; k < c.lits.size(); ++k) {
      const Lit q = c.lits[k];
      const int v = q.var();
      if (!seen_[v] && levels_[v] > 0) {
        bump_var(v);
        seen_[v] = 1;
        if (levels_[v] >= level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
    }
    while (!seen_[trail_[--index].var()]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reasons_[p.var()];
    seen_[p.var()] = 0;
    --path;
  } while (path > 0);
  learnt[0] = ~p;

  std::vector<Lit> collected(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    if (!redundant(learnt[k])) learnt[keep++] = learnt[k];
  }
  learnt.resize(keep);
  for (Lit l : collected) seen_[l.var()] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k) {
      if (levels_[learnt[k].var()] > levels_[learnt[max_i].var()]) max_i = k;
    }
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = levels_[learnt[1].var()];
  }

  std::vector<int> lvls;
  lvls.reserve(learnt.size());
  for (Lit l : learnt) lvls.push_back(levels_[l.var()]);
  std::ranges::sort(lvls);
  lbd = static_cast<std::uint32_t>(std::unique(lvls.begin(), lvls.end()) - lvls.begin());
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  const std::size_t stop = trail_lim_[static_cast<std::size_t>(lvl)];
  for (std::size_t i = trail_.size(); i-- > stop;) {
    const int v = trail_[i].var();
    phase_[v] = assigns_[v] > 0;
    assigns_[v] = 0;
    reasons_[v] = kNoReason;
    if (!heap_contains(v)) heap_insert(v);
  }
  trail_.resize(stop);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const int v = heap_pop();
    if (assigns_[v] == 0) return Lit(v, phase_[v]);
  }
  return Lit();
}

void Solver::reduce_db() {
  std::ranges::sort(learnts_, [&](CRef a, CRef b) {
    const Clause& x = clauses_[a];
    const Clause& y = clauses_[b];
    if (x.lbd != y.lbd) return x.lbd > y.lbd;
    return x.activity < y.activity;
  });
  const std::size_t target = learnts_.size() / 2;
  std::size_t removed = 0;
  std::vector<CRef> kept;
  kept.reserve(learnts_.size());
  for (CRef cr : learnts_) {
    Clause& c = clauses_[cr];
    const int v0 = c.lits[0].var();
    const bool locked = reasons_[v0] == cr && value(c.lits[0]) > 0;
    if (removed < target && !locked && c.lbd > 2) {
      c.deleted = true;
      ++removed;
    } else {
      kept.push_back(cr);
    }
  }
  learnts_ = std::move(kept);
  if (removed == 0) return;
  for (auto& ws : watches_) {
    std::erase_if(ws, [&](const Watcher& w) { return clauses_[w.cref].deleted; });
  }
  for (CRef cr = 0; cr < clauses_.size(); ++cr) {
    if (clauses_[cr].deleted && !clauses_[cr].lits.empty()) {
      clauses_[cr].lits.clear();
      clauses_[cr].lits.shrink_to_fit();
      free_slots_.push_back(cr);
    }
  }
}

Solver::SearchResult Solver::search(std::span<const Lit> assumptions, const Budget& budget, std::uint64_t conflict_quota) {
  std::uint64_t conflicts_here = 0;
  std::uint64_t decisions_here = 0;
  std::vector<Lit> learnt;
  for (;;) {
    CRef confl = propagate();
    if (confl == kNoReason && !xor_rows_.empty()) {
      const std::size_t before = trail_.size();
      confl = gauss_propagate();
      if (confl == kEmptyConflict) {
        ok_ = false;
        return SearchResult::Unsat;
      }
      if (confl == kNoReason && trail_.size() != before) continue;
    }
    if (confl != kNoReason) {
      ++conflicts_here;
      ++total_conflicts_;
      if (level() == 0) {
        ok_ = false;
        return SearchResult::Unsat;
      }
      int bt = 0;
      std::uint32_t lbd = 0;
      analyze(confl, learnt, bt, lbd);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const CRef cr = alloc_clause(learnt, true);
        clauses_[cr].lbd = lbd;
        attach(cr);
        bump_clause(clauses_[cr]);
        learnts_.push_back(cr);
        enqueue(learnt[0], cr);
      }
      var_inc_ /= kVarDecay;
      clause_inc_ /= kClauseDecay;
      if ((total_conflicts_ & 63U) == 0 && budget.expired()) return SearchResult::Timeout;
      if (budget.max_conflicts != 0 && conflicts_here >= budget.max_conflicts) return SearchResult::Timeout;
      continue;
    }

    if (conflicts_here >= conflict_quota) {
      cancel_until(0);
      return SearchResult::Restart;
    }
    if (static_cast<double>(learnts_.size()) >= max_learnts_) {
      reduce_db();
      max_learnts_ *= 1.1;
    }

    Lit next;
    bool have_next = false;
    while (static_cast<std::size_t>(level()) < assumptions.size()) {
      const Lit a = assumptions[static_cast<std::size_t>(level())];
      const auto v = value(a);
      if (v > 0) {
        trail_lim_.push_back(trail_.size());
      } else if (v < 0) {
        return SearchResult::Unsat;
      } else {
        next = a;
        have_next = true;
        break;
      }
    }
    if (!have_next) {
      next = pick_branch();
      if (next.var() == 0) {
        model_.assign(assigns_.size(), false);
        for (std::size_t v = 1; v < assigns_.size(); ++v) model_[v] = assigns_[v] > 0;
        return SearchResult::Sat;
      }
      ++total_decisions_;
      if ((++decisions_here & 1023U) == 0 && budget.expired()) return SearchResult::Timeout;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

Status Solver::solve(std::span<const Lit> assumptions, const Budget& budget) {
  model_.clear();
  if (!ok_) return Status::Unsat;
  for (Lit a : assumptions) ensure_vars(a.var());
  if (max_learnts_ == 0) max_learnts_ = std::max(2000.0, static_cast<double>(clauses_.size()) / 3.0);

  Status status = Status::Timeout;
  const std::uint64_t start_conflicts = total_conflicts_;
  for (std::uint64_t restart = 0;; ++restart) {
    Budget inner = budget;
    if (budget.max_conflicts != 0) {
      const std::uint64_t used = total_conflicts_ - start_conflicts;
      if (used >= budget.max_conflicts) break;
      inner.max_conflicts = budget.max_conflicts - used;
    }
    if (budget.expired()) break;
    const auto quota = static_cast<std::uint64_t>(luby(2, restart) * static_cast<double>(kRestartBase));
    const SearchResult r = search(assumptions, inner, quota);
    if (r == SearchResult::Sat) {
      status = Status::Sat;
      break;
    }
    if (r == SearchResult::Unsat) {
      status = Status::Unsat;
      break;
    }
    if (r == SearchResult::Timeout) break;
  }
  cancel_until(0);
  return status;
}

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t pos) {
  const int v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = static_cast<int>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<int>(pos);
}

void Solver::heap_down(std::size_t pos) {
  const int v = heap_[pos];
  for (;;) {
    std::size_t child = 2 * pos + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = static_cast<int>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<int>(pos);
}

int Solver::heap_pop() {
  const int top = heap_[0];
  heap_pos_[top] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

SolveResult solve(const CnfFormula& f, std::span<const Lit> assumptions, const Budget& budget) {
  Solver s;
  s.sync(f);
  SolveResult r;
  r.status = s.solve(assumptions, budget);
  if (r.status == Status::Sat) {
    r.model = s.model();
    r.model.resize(static_cast<std::size_t>(f.num_vars()) + 1);
    if (!f.satisfied_by(r.model)) throw std::logic_error("solver returned a model that violates the formula");
    for (Lit a : assumptions) {
      if (!r.value(a)) throw std::logic_error("solver returned a model that violates an assumption");
    }
  }
  return r;
}

}  // namespace lockeval::cnf
