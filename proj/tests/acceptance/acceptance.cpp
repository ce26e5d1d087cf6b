// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lockeval/attacks/cycsat.hpp"
#include "lockeval/attacks/key_sampler.hpp"
#include "lockeval/attacks/miter_attack.hpp"
#include "lockeval/error.hpp"
#include "lockeval/harness/config.hpp"
#include "lockeval/harness/pareto.hpp"
#include "lockeval/harness/runner.hpp"
#include "lockeval/harness/sweeps.hpp"
#include "lockeval/locks/equivalence.hpp"
#include "lockeval/locks/insertion.hpp"
#include "lockeval/locks/point_function.hpp"
#include "lockeval/metrics/approx_count.hpp"
#include "lockeval/metrics/corruption.hpp"
#include "lockeval/metrics/pmc.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/netlist/random_circuit.hpp"
#include "lockeval/netlist/simulate.hpp"
#include "lockeval/util/csv.hpp"
#include "lockeval/util/parallel.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace lockeval;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

constexpr double kPac = 1.8;

// P[X <= k] for X ~ Binomial(n, p).
double binomial_cdf(std::size_t k, std::size_t n, double p) {
  double sum = 0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double log_term = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
                            i * std::log(p) + (n - i) * std::log1p(-p);
    sum += std::exp(log_term);
  }
  return sum;
}

// Rejects "success rate >= p0" at the 5% level?
bool rate_consistent(std::size_t hits, std::size_t n, double p0) { return binomial_cdf(hits, n, p0) >= 0.05; }

bool within_pac(double estimate, double truth) {
  return estimate >= truth / kPac - 1e-12 && estimate <= truth * kPac + 1e-12;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Circuit> criterion_circuits() {
  auto a = random_circuit({.inputs = 8, .gates = 30, .seed = 101});
  a.set_name("rand30a");
  auto b = random_circuit({.inputs = 10, .gates = 30, .seed = 202});
  b.set_name("rand30b");
  return {oracle::c17(), oracle::c432(), a, b};
}

// c17 has only 11 nets and 6 two-input gates, so it takes narrower keys.
std::size_t width_for(LockKind kind, const Circuit& c) {
  const bool small = c.internal_nets().size() < 20;
  switch (kind) {
    case LockKind::Lut:
      return small ? 4 : 16;
    case LockKind::PointFunction:
      return std::min<std::size_t>(small ? 4 : 8, c.num_inputs());
    case LockKind::Routing:
      return small ? 1 : 6;
    default:
      return small ? 4 : 16;
  }
}

Outcome correct_key_invariance() {
  std::size_t locks = 0;
  std::size_t failures = 0;
  std::string first;
  for (const auto& c : criterion_circuits()) {
    const Simulator ref(c);
    for (LockKind kind : all_lock_kinds()) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        ++locks;
        auto fail = [&](const std::string& why) {
          ++failures;
          if (first.empty()) first = c.name() + "/" + std::string(to_string(kind)) + "/" + std::to_string(seed) + ": " + why;
        };
        try {
          const auto cl = lock(c, kind, {.width = width_for(kind, c), .seed = seed});
          if (!check_equivalence(c, cl, cl.correct_key).equivalent) fail("miter SAT at the correct key");
          UniformKeySampler xs(c.num_inputs(), seed * 7919);
          for (int i = 0; i < 1000; ++i) {
            const auto x = xs.next();
            if (oracle::eval(cl.circuit, oracle::concat(x, cl.correct_key)) != ref.eval(x)) {
              fail("simulation mismatch");
              break;
            }
          }
        } catch (const std::exception& e) {
          fail(e.what());
        }
      }
    }
  }
  return {failures == 0, fmt("%zu locks, %zu failures%s%s", locks, failures, first.empty() ? "" : "; first: ",
                              first.c_str())};
}

Outcome estimator_concordance() {
  const std::vector<LockKind> kinds{LockKind::Xor, LockKind::Mux, LockKind::Lut, LockKind::PointFunction,
                                    LockKind::Routing};
  std::size_t cases = 0, exact_ok = 0, mc_ok = 0, hash_ok = 0, hashed = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto c = random_circuit({.inputs = 8 + i % 5, .gates = 30, .seed = 1000 + i});
    const LockKind kind = kinds[i % kinds.size()];
    const std::size_t w = kind == LockKind::Lut ? 8 : kind == LockKind::Routing ? 6 : 4 + i % 5;
    const auto cl = lock(c, kind, {.width = w, .seed = i + 1});
    const CorruptionEvaluator exact(c, cl, EstimatorMode::Exact);
    const CorruptionEvaluator mc(c, cl, EstimatorMode::MonteCarlo, {.samples = 10000, .seed = i + 1});
    const CorruptionEvaluator hash(c, cl, EstimatorMode::HashApprox, {.seed = i + 1});
    UniformKeySampler keys(cl.key_width(), i + 1);
    for (int j = 0; j < 5; ++j) {
      const auto k = keys.next();
      const double truth = oracle::keycor(c, cl, k);
      ++cases;
      exact_ok += exact.key_corruption(k).value == truth ? 1 : 0;
      const auto m = mc.key_corruption(k);
      mc_ok += (m.lo <= truth && truth <= m.hi) ? 1 : 0;
      const auto h = hash.key_corruption(k);
      hashed += h.params.find("count=HASH_APPROX") != std::string::npos ? 1 : 0;
      hash_ok += within_pac(h.value, truth) ? 1 : 0;
    }
  }
  const bool pass = exact_ok == cases && rate_consistent(mc_ok, cases, 0.95) && rate_consistent(hash_ok, cases, 0.8);
  return {pass, fmt("%zu keys on 20 circuits: EXACT %zu/%zu equal, MONTE_CARLO %zu/%zu inside Wilson, "
                    "HASH_APPROX %zu/%zu inside PAC band (%zu used hashing)",
                    cases, exact_ok, cases, mc_ok, cases, hash_ok, cases, hashed)};
}

Outcome point_function_closed_form() {
  const auto c = random_circuit({.inputs = 10, .gates = 30, .seed = 77});
  std::string detail;
  bool pass = true;
  for (std::size_t p : {4, 6, 8}) {
    const auto cl = lock_point_fn(c, {.width = p, .seed = p});
    const CorruptionEvaluator ev(c, cl, EstimatorMode::Exact);
    const double wrong = 2.0 / std::ldexp(1.0, static_cast<int>(p));
    std::size_t bad = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << p); ++k) {
      const auto key = BitVector::from_uint(k, p);
      const double want = key == cl.correct_key ? 0.0 : wrong;
      bad += ev.key_corruption(key).value == want ? 0 : 1;
    }
    const double cor_want = (std::ldexp(1.0, static_cast<int>(p)) - 1) * 2 / std::ldexp(1.0, static_cast<int>(2 * p));
    const double cor = corruptibility(c, cl, EstimatorMode::Exact).value;
    pass = pass && bad == 0 && cor == cor_want;
    detail += fmt("p=%zu: %zu off-value keys, Cor %.10g (want %.10g); ", p, bad, cor, cor_want);
  }
  return {pass, detail};
}

Outcome attack_exactness() {
  std::size_t runs = 0, ok = 0;
  std::string first;
  for (const auto& c : {oracle::c17(), oracle::c432()}) {
    const std::size_t w = c.num_inputs() < 10 ? 8 : 16;
    for (LockKind kind : {LockKind::Xor, LockKind::Mux, LockKind::Lut}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        ++runs;
        const auto cl = lock(c, kind, {.width = w, .seed = seed});
        SimulationOracle o(c);
        const auto t = miter_attack(cl, o, {.timeout_s = 60});
        const bool good = t.outcome == AttackOutcome::Terminated && t.final_key &&
                          check_equivalence(c, cl, *t.final_key).equivalent;
        ok += good ? 1 : 0;
        if (!good && first.empty()) first = c.name() + "/" + std::string(to_string(kind)) + "/" + std::to_string(seed);
      }
    }
  }
  return {ok == runs, fmt("%zu/%zu attacks terminated with an equivalent key%s%s", ok, runs,
                          first.empty() ? "" : "; first failure ", first.c_str())};
}

Outcome exponential_trend() {
  // A single lock's count depends on when the solver happens to hit the
  // protected pattern, so each p is averaged over many lock seeds.
  constexpr std::size_t kSeeds = 50;
  const auto c = oracle::c432();
  std::vector<double> mean;
  std::string detail;
  bool all_terminated = true;
  for (std::size_t p = 4; p <= 10; ++p) {
    std::vector<std::size_t> iters(kSeeds);
    std::vector<char> done(kSeeds);
    parallel_for(kSeeds, 0, [&](std::size_t s) {
      const auto cl = lock_point_fn(c, {.width = p, .seed = s + 1});
      SimulationOracle o(c);
      const auto t = miter_attack(cl, o, {.timeout_s = 120});
      iters[s] = t.iterations.size();
      done[s] = t.outcome == AttackOutcome::Terminated;
    });
    double sum = 0;
    for (std::size_t s = 0; s < kSeeds; ++s) {
      sum += static_cast<double>(iters[s]);
      all_terminated = all_terminated && done[s];
    }
    mean.push_back(sum / kSeeds);
    detail += fmt("p=%zu:%.1f ", p, mean.back());
  }
  bool increasing = true;
  for (std::size_t i = 1; i < mean.size(); ++i) increasing = increasing && mean[i] > mean[i - 1];
  const double ratio = mean.back() / mean.front();
  detail += fmt("(mean iterations over %zu seeds; p=10/p=4 = %.1f)", kSeeds, ratio);
  return {all_terminated && increasing && ratio >= 8, detail};
}

Outcome saturation() {
  const auto c = oracle::c432();
  bool pass = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto cl = lock_mux(c, {.width = 32, .seed = seed});
    const auto curve = sweep_saturation(c, cl, 0.2, 1000, 500, seed, EstimatorMode::MonteCarlo, {.samples = 10000});
    const double gap = std::abs(curve.at(1).value - curve.at(0).value);
    pass = pass && gap <= 0.05;
    detail += fmt("seed %llu: p_mc(500)=%.4f p_mc(1000)=%.4f; ", static_cast<unsigned long long>(seed), curve[0].value,
                  curve[1].value);
  }
  return {pass, detail};
}

Outcome bias_shape() {
  const auto c = oracle::c432();
  const std::vector<std::size_t> widths{16, 32, 64};
  std::vector<std::vector<double>> table;
  for (std::size_t w : widths) {
    const auto cl = lock_xor(c, {.width = w, .seed = 1});
    std::vector<double> row;
    for (const auto& pt : sweep_bias(c, cl, 0.1, kDefaultBiasAxis, 1000, 1, EstimatorMode::MonteCarlo))
      row.push_back(pt.pmc.value);
    table.push_back(row);
  }
  bool in_p = true, in_w = true;
  for (std::size_t i = 0; i < widths.size(); ++i)
    for (std::size_t j = 1; j < kDefaultBiasAxis.size(); ++j) in_p = in_p && table[i][j] <= table[i][j - 1];
  for (std::size_t i = 1; i < widths.size(); ++i)
    for (std::size_t j = 0; j < kDefaultBiasAxis.size(); ++j) in_w = in_w && table[i][j] >= table[i - 1][j];
  const double corner = table.back().back();
  std::string detail;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    detail += fmt("w=%zu:", widths[i]);
    for (double v : table[i]) detail += fmt(" %.3f", v);
    detail += "; ";
  }
  detail += fmt("monotone in p %s, in w %s, p_mc(0.95, 64) = %.3f", in_p ? "yes" : "no", in_w ? "yes" : "no", corner);
  return {in_p && in_w && corner >= 0.9, detail};
}

Outcome cycsat_termination() {
  const auto c = fixtures::cyclic_base();
  const auto cl = lock_cyclic_mux(c, {.width = 1, .seed = 1});
  std::string without;
  bool stuck = false;
  try {
    SimulationOracle o(c);
    const auto t = miter_attack(cl, o, {.timeout_s = 20, .max_iterations = 50});
    stuck = t.outcome == AttackOutcome::Timeout || !t.final_key ||
            !check_equivalence(c, bind_key(cl, *t.final_key)).equivalent;
    without = fmt("without conditions: %s after %zu iterations", std::string(to_string(t.outcome)).c_str(),
                  t.iterations.size());
  } catch (const Error& e) {
    stuck = true;
    without = std::string("without conditions: error ") + e.what();
  }
  SimulationOracle o(c);
  const auto t = miter_attack(cl, o, {.timeout_s = 20, .key_conditions = cycsat_conditions(cl)});
  const bool exact = t.outcome == AttackOutcome::Terminated && t.final_key &&
                     is_acyclic(bind_key(cl, *t.final_key)) &&
                     check_equivalence(c, bind_key(cl, *t.final_key)).equivalent;
  return {stuck && exact, without + fmt("; with conditions: %s, key %s", std::string(to_string(t.outcome)).c_str(),
                                        t.final_key ? t.final_key->to_hex().c_str() : "-")};
}

Outcome counter_pac() {
  std::mt19937_64 rng(2024);
  std::size_t inside = 0, hashed = 0;
  std::vector<int> vars{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  for (int i = 0; i < 30; ++i) {
    const auto f = oracle::random_cnf(rng, 12, 8 + static_cast<int>(rng() % 16), 3);
    const double truth = static_cast<double>(oracle::projected_count(f, vars));
    const auto e = approx_count(f, vars, {.seed = static_cast<std::uint64_t>(i + 1)});
    hashed += e.method == CountMethod::HashApprox ? 1 : 0;
    inside += within_pac(e.estimate, truth) ? 1 : 0;
  }
  return {rate_consistent(inside, 30, 0.8),
          fmt("%zu/30 inside the (1+0.8) band (%zu used hashing); binomial P[X<=%zu | 0.8] = %.3g", inside, hashed,
              inside, binomial_cdf(inside, 30, 0.8))};
}

Outcome pareto_integrity() {
  // Widths each circuit can take. Random keys of a cyclic lock on c432 leave a
  // live cycle once w reaches 16, so its axis stops at 8.
  const std::string text =
      "[task]\nname = small\ntype = pareto\ncircuit = c17.bench\n"
      "lock = XOR, MUX, LUT, POINT_FN, ROUTING, CYCLIC_MUX\nwidth = 4\nseed = 1, 2, 3\n"
      "epsilon = 0.1\nkey_samples = 200\nmode = MONTE_CARLO\ninput_samples = 2000\n"
      "[task]\nname = large\ntype = pareto\ncircuit = c432.bench\n"
      "lock = XOR, MUX, LUT, POINT_FN, ROUTING\nwidth = 8, 16, 32\nseed = 1, 2\n"
      "epsilon = 0.1\nkey_samples = 200\nmode = MONTE_CARLO\ninput_samples = 2000\n"
      "[task]\nname = cyclic\ntype = pareto\ncircuit = c432.bench\n"
      "lock = CYCLIC_MUX\nwidth = 2, 4, 8\nseed = 1, 2\n"
      "epsilon = 0.1\nkey_samples = 200\nmode = MONTE_CARLO\ninput_samples = 2000\n";
  const auto cfg = parse_config(text, LOCKEVAL_TEST_DATA);
  std::map<std::string, std::vector<ParetoPoint>> by_circuit;
  std::size_t errors = 0;
  for (const auto& task : cfg.tasks) {
    const auto out = run_task(task, 0);
    errors += out.result.cell_errors.size();
    for (auto& p : parse_pareto_points(out.csv)) by_circuit[p.circuit].push_back(std::move(p));
  }
  auto dominated = [](const ParetoPoint& p, const std::vector<ParetoPoint>& all) {
    return std::ranges::any_of(all, [&](const ParetoPoint& q) {
      return q.overhead <= p.overhead && q.security >= p.security && (q.overhead < p.overhead || q.security > p.security);
    });
  };
  auto same = [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.lock == b.lock && a.width == b.width && a.seed == b.seed;
  };
  std::size_t points = 0, bad_members = 0, missing = 0;
  std::string notes;
  for (const auto& [circuit, all] : by_circuit) {
    points += all.size();
    const auto front = pareto_front(all);
    for (const auto& p : front) bad_members += dominated(p, all) ? 1 : 0;
    for (const auto& p : all) {
      const bool member = std::ranges::any_of(front, [&](const ParetoPoint& f) { return same(f, p); });
      if (!member && !dominated(p, all)) ++missing;
    }
    std::string list;
    bool xor_low = false;
    for (const auto& f : front) {
      list += fmt("%s%s/w%zu(%.3f, %.3f)", list.empty() ? "" : " ", f.lock.c_str(), f.width, f.overhead, f.security);
      xor_low = xor_low || (f.lock == "XOR" && &f == &front.front());
    }
    notes += fmt("%s front: %s; XOR %s at the low-overhead end; ", circuit.c_str(), list.c_str(),
                 xor_low ? "is" : "is not");
  }
  return {bad_members == 0 && missing == 0 && errors == 0 && points > 0,
          fmt("%zu points, %zu dominated front members, %zu undominated points left out, %zu cell errors; ", points,
              bad_members, missing, errors) +
              notes + "XOR placement is report-only"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"correct-key invariance", correct_key_invariance},
      {"estimator concordance", estimator_concordance},
      {"point-function closed form", point_function_closed_form},
      {"attack exactness", attack_exactness},
      {"iteration growth with p", exponential_trend},
      {"p_mc saturation", saturation},
      {"bias sweep shape", bias_shape},
      {"cyclic lock termination", cycsat_termination},
      {"approximate counter PAC rate", counter_pac},
      {"pareto integrity", pareto_integrity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, s, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
