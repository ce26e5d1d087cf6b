#include "lockeval/attacks/miter_attack.hpp"

#include <chrono>

#include "lockeval/cnf/encode.hpp"
#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval {

namespace {

using cnf::Lit;

std::vector<Lit> fresh_lits(cnf::CnfFormula& f, std::size_t n) {
  std::vector<Lit> v;
  v.reserve(n);
  for (std::size_t i = 0; i < n; ++i) v.push_back(Lit::pos(f.new_var()));
  return v;
}

/// Copies the key conditions onto `key` (variable i+1 -> key[i]).
void add_conditions(cnf::CnfFormula& f, const cnf::CnfFormula& conditions, const std::vector<Lit>& key) {
  if (conditions.num_vars() > static_cast<int>(key.size())) {
    throw AttackError("key conditions mention more variables than the key has bits");
  }
  if (!conditions.xors().empty()) throw AttackError("key conditions must be plain clauses");
  for (const auto& clause : conditions.clauses()) {
    std::vector<Lit> mapped;
    for (Lit l : clause) mapped.push_back(key[static_cast<std::size_t>(l.var() - 1)] ^ !l.positive());
    f.add_clause(std::move(mapped));
  }
}

/// Encoding of the locked circuit for the attack: data and key inputs bound to
/// the given literals, output literals returned.
class LockedEncoder {
 public:
  explicit LockedEncoder(const LockedCircuit& cl)
      : cl_(cl), data_(cl.data_inputs()), keys_(cl.key_inputs()), opts_{.allow_cycles = !is_acyclic(cl.circuit)} {}

  std::vector<Lit> outputs(cnf::CnfFormula& f, const std::vector<Lit>& x, const std::vector<Lit>& k) const {
    cnf::NetLits shared = cnf::bind(data_, x);
    for (std::size_t i = 0; i < keys_.size(); ++i) shared.emplace(keys_[i], k[i]);
    const cnf::NetLits lits = cnf::encode(cl_.circuit, f, shared, opts_);
    return cnf::lits_of(lits, cl_.circuit.outputs());
  }

  /// Constrains C_l(x, k) = y.
  void constrain(cnf::CnfFormula& f, const IoPair& io, const std::vector<Lit>& k) const {
    const std::vector<Lit> out = outputs(f, cnf::constant_lits(f, io.x), k);
    for (std::size_t j = 0; j < out.size(); ++j) f.add_clause({out[j] ^ !io.y[j]});
  }

 private:
  const LockedCircuit& cl_;
  std::vector<std::string> data_;
  std::vector<std::string> keys_;
  cnf::EncodeOptions opts_;
};

BitVector read_bits(const cnf::Solver& s, const std::vector<Lit>& lits) {
  BitVector v(lits.size());
  for (std::size_t i = 0; i < lits.size(); ++i) v.set(i, s.model_value(lits[i]));
  return v;
}

}  // namespace

std::string_view to_string(AttackOutcome outcome) {
  return outcome == AttackOutcome::Terminated ? "TERMINATED" : "TIMEOUT";
}

std::vector<IoPair> AttackTrace::io_pairs() const {
  std::vector<IoPair> out;
  out.reserve(iterations.size());
  for (const auto& it : iterations) out.push_back(it.io);
  return out;
}

AttackTrace miter_attack(const LockedCircuit& cl, Oracle& oracle, const AttackOptions& options) {
  cl.validate();
  const std::size_t n = cl.num_data_inputs();
  const std::size_t w = cl.key_width();
  if (oracle.num_inputs() != n || oracle.num_outputs() != cl.circuit.num_outputs()) {
    throw AttackError("oracle interface does not match the locked circuit");
  }
  const auto start = std::chrono::steady_clock::now();
  const cnf::Budget budget = cnf::Budget::seconds(options.timeout_s);
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  const LockedEncoder enc(cl);
  cnf::CnfFormula f;
  const std::vector<Lit> x = fresh_lits(f, n);
  const std::vector<Lit> k0 = fresh_lits(f, w);
  const std::vector<Lit> k1 = fresh_lits(f, w);
  if (options.key_conditions) {
    add_conditions(f, *options.key_conditions, k0);
    add_conditions(f, *options.key_conditions, k1);
  }
  const Lit diff = cnf::make_differ(f, enc.outputs(f, x, k0), enc.outputs(f, x, k1));

  cnf::Solver solver(options.solver_seed);
  AttackTrace trace;
  double last = -1;
  while (true) {
    if (budget.expired() || (options.max_iterations && trace.iterations.size() >= options.max_iterations)) {
      trace.outcome = AttackOutcome::Timeout;
      return trace;
    }
    solver.sync(f);
    const cnf::Status st = solver.solve({diff}, budget);
    if (st == cnf::Status::Timeout) {
      trace.outcome = AttackOutcome::Timeout;
      return trace;
    }
    if (st == cnf::Status::Unsat) break;

    TraceEntry entry;
    entry.io.x = read_bits(solver, x);
    entry.io.y = oracle.query(entry.io.x);
    enc.constrain(f, entry.io, k0);
    enc.constrain(f, entry.io, k1);
    if (options.trace_keys) {
      solver.sync(f);
      const cnf::Status ks = solver.solve({}, budget);
      if (ks == cnf::Status::Unsat) throw AttackError("no key reproduces the oracle responses");
      if (ks == cnf::Status::Sat) entry.key = read_bits(solver, k0);
    }
    entry.elapsed_s = std::max(elapsed(), last + 1e-9);
    last = entry.elapsed_s;
    trace.iterations.push_back(std::move(entry));
  }

  const cnf::Status ks = solver.solve({}, budget);
  if (ks == cnf::Status::Timeout) {
    trace.outcome = AttackOutcome::Timeout;
    return trace;
  }
  if (ks == cnf::Status::Unsat) throw AttackError("no key reproduces the oracle responses");
  trace.final_key = read_bits(solver, k0);
  trace.outcome = AttackOutcome::Terminated;
  return trace;
}

std::optional<BitVector> extract_key(std::span<const IoPair> pairs, const LockedCircuit& cl,
                                     const cnf::CnfFormula* conditions, const cnf::Budget& budget) {
  cl.validate();
  const LockedEncoder enc(cl);
  cnf::CnfFormula f;
  const std::vector<Lit> k = fresh_lits(f, cl.key_width());
  if (conditions) add_conditions(f, *conditions, k);
  for (const auto& io : pairs) {
    if (io.x.width() != cl.num_data_inputs() || io.y.width() != cl.circuit.num_outputs()) {
      throw AttackError("IO pair width does not match the locked circuit");
    }
    enc.constrain(f, io, k);
  }
  cnf::Solver solver;
  solver.sync(f);
  const cnf::Status st = solver.solve({}, budget);
  if (st == cnf::Status::Timeout) return std::nullopt;
  if (st == cnf::Status::Unsat) throw AttackError("no key reproduces the given IO pairs");
  return read_bits(solver, k);
}

}  // namespace lockeval
