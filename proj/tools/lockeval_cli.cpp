#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lockeval/attacks/cycsat.hpp"
#include "lockeval/attacks/miter_attack.hpp"
#include "lockeval/attacks/oracle.hpp"
#include "lockeval/attacks/trace_io.hpp"
#include "lockeval/error.hpp"
#include "lockeval/harness/pareto.hpp"
#include "lockeval/harness/runner.hpp"
#include "lockeval/locks/equivalence.hpp"
#include "lockeval/locks/lock_io.hpp"
#include "lockeval/metrics/metrics_csv.hpp"
#include "lockeval/metrics/pmc.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/netlist/bench.hpp"
#include "lockeval/util/text.hpp"
#include "lockeval/version.hpp"

using namespace lockeval;

namespace {

constexpr int kUsage = 1;
constexpr int kInputError = 2;
constexpr int kTimeout = 3;

struct Estimator {
  std::string mode;
  std::size_t input_samples = 10000;
  double epsilon_a = 0.8;
  double delta = 0.2;
  std::uint64_t seed = 1;

  void add_to(CLI::App* app) {
    app->add_option("--mode", mode, "EXACT, MONTE_CARLO or HASH_APPROX (default: EXACT up to 20 inputs)");
    app->add_option("--input-samples", input_samples, "MONTE_CARLO input samples")->capture_default_str();
    app->add_option("--epsilon-a", epsilon_a, "HASH_APPROX tolerance")->capture_default_str();
    app->add_option("--delta", delta, "HASH_APPROX failure probability")->capture_default_str();
    app->add_option("--estimator-seed", seed, "estimator RNG seed")->capture_default_str();
  }

  EstimatorParams params() const {
    EstimatorParams p;
    p.samples = input_samples;
    p.epsilon_a = epsilon_a;
    p.delta = delta;
    p.seed = seed;
    return p;
  }

  EstimatorMode resolve(std::size_t n) const {
    if (mode.empty()) return default_mode(n, params());
    const auto m = estimator_mode_from_string(mode);
    if (!m) throw ConfigError("unknown estimator mode '" + mode + "'");
    return *m;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LockedCircuit load_locked(const std::string& bench, const std::string& key_file) {
  LockedCircuit cl = read_locked(bench, key_file);
  if (cl.metadata["key_known"] != "1") throw ConfigError("no key file for " + bench + " (use --key-file)");
  return cl;
}

/// The unlocked reference: --original if given, else the netlist with the
/// correct key bound.
Circuit reference(const LockedCircuit& cl, const std::string& original) {
  if (!original.empty()) return read_bench(original);
  Circuit c = bind_key(cl, cl.correct_key);
  return c;
}

MetricRow with_cell(MetricRow r, const LockedCircuit& cl) {
  r.circuit = cl.circuit.name();
  r.lock = std::string(to_string(cl.kind));
  r.width = cl.key_width();
  const auto it = cl.metadata.find("seed");
  if (it != cl.metadata.end()) r.seed = std::stoull(it->second);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic-locking evaluation toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // lock
  std::string lock_bench, lock_kind = "XOR", lock_out;
  LockConfig lock_cfg;
  auto* lock_cmd = app.add_subcommand("lock", "Lock a BENCH netlist; writes <out> and <out stem>.key");
  lock_cmd->add_option("bench", lock_bench, "original netlist")->required();
  lock_cmd->add_option("--kind", lock_kind, "XOR, MUX, LUT, POINT_FN, ROUTING or CYCLIC_MUX")->capture_default_str();
  lock_cmd->add_option("--width", lock_cfg.width, "key width")->capture_default_str();
  lock_cmd->add_option("--seed", lock_cfg.seed, "lock seed")->capture_default_str();
  lock_cmd->add_option("--lut-arity", lock_cfg.lut_arity, "LUT inputs")->capture_default_str();
  lock_cmd->add_option("--routing-wires", lock_cfg.routing_wires, "routing network size (0: widest that fits)");
  lock_cmd->add_option("--out", lock_out, "locked netlist path")->required();

  // attack
  std::string atk_bench, atk_key, atk_original, atk_trace;
  double atk_timeout = 60;
  std::size_t atk_max_iter = 0;
  bool atk_no_cycsat = false;
  auto* atk_cmd = app.add_subcommand("attack", "Run the miter-based SAT attack against a locked netlist");
  atk_cmd->add_option("bench", atk_bench, "locked netlist")->required();
  atk_cmd->add_option("--key-file", atk_key, "correct key (default: sidecar); drives the oracle");
  atk_cmd->add_option("--original", atk_original, "oracle netlist instead of the keyed locked netlist");
  atk_cmd->add_option("--timeout", atk_timeout, "seconds")->capture_default_str();
  atk_cmd->add_option("--max-iterations", atk_max_iter, "0: unlimited");
  atk_cmd->add_option("--trace", atk_trace, "write the iteration trace CSV here");
  atk_cmd->add_flag("--no-cycsat", atk_no_cycsat, "skip acyclic key conditions on cyclic netlists");

  // keycor
  std::string kc_bench, kc_key_file, kc_key, kc_original;
  std::size_t kc_threshold = 1;
  Estimator kc_est;
  auto* kc_cmd = app.add_subcommand("keycor", "Key corruption of one key");
  kc_cmd->add_option("bench", kc_bench, "locked netlist")->required();
  kc_cmd->add_option("--key-file", kc_key_file, "correct key (default: sidecar)");
  kc_cmd->add_option("--key", kc_key, "key to evaluate, hex")->required();
  kc_cmd->add_option("--original", kc_original, "reference netlist");
  kc_cmd->add_option("--threshold", kc_threshold, "output bits that must differ")->capture_default_str();
  kc_est.add_to(kc_cmd);

  // pmc
  std::string pmc_bench, pmc_key_file, pmc_original;
  std::vector<double> pmc_eps;
  std::size_t pmc_samples = 1000;
  std::size_t pmc_threads = 0;
  std::uint64_t pmc_seed = 1;
  double pmc_bias = -1;
  Estimator pmc_est;
  auto* pmc_cmd = app.add_subcommand("pmc", "Fraction of sampled keys with key corruption >= epsilon");
  pmc_cmd->add_option("bench", pmc_bench, "locked netlist")->required();
  pmc_cmd->add_option("--key-file", pmc_key_file, "correct key (default: sidecar)");
  pmc_cmd->add_option("--original", pmc_original, "reference netlist");
  pmc_cmd->add_option("--epsilon", pmc_eps, "threshold(s)")->required()->check(CLI::Range(0.0, 1.0));
  pmc_cmd->add_option("--samples", pmc_samples, "key samples")->capture_default_str();
  pmc_cmd->add_option("--bias-p", pmc_bias, "P[key bit = correct bit]; uniform keys when omitted")
      ->check(CLI::Range(0.0, 1.0));
  pmc_cmd->add_option("--key-seed", pmc_seed, "key sampler seed")->capture_default_str();
  pmc_cmd->add_option("--threads", pmc_threads, "0: hardware concurrency");
  pmc_est.add_to(pmc_cmd);

  // sweep
  std::string sweep_config;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment config");
  sweep_cmd->add_option("config", sweep_config, "config file")->required();

  // pareto
  std::vector<std::string> pareto_files;
  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto front of (overhead, security) CSV rows");
  pareto_cmd->add_option("csv", pareto_files, "CSV files with overhead and security columns")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*lock_cmd) {
      const auto kind = lock_kind_from_string(lock_kind);
      if (!kind) throw ConfigError("unknown lock kind '" + lock_kind + "'");
      const LockedCircuit cl = lock(read_bench(lock_bench), *kind, lock_cfg);
      write_locked(lock_out, cl);
      std::cout << "wrote " << lock_out << " and " << key_path_for(lock_out).string() << " (w=" << cl.key_width()
                << ", key " << cl.correct_key.to_hex() << ")\n";
      return 0;
    }

    if (*atk_cmd) {
      const LockedCircuit cl = load_locked(atk_bench, atk_key);
      const Circuit oracle_circuit = reference(cl, atk_original);
      SimulationOracle oracle(oracle_circuit);
      AttackOptions opt;
      opt.timeout_s = atk_timeout;
      opt.max_iterations = atk_max_iter;
      opt.trace_keys = !atk_trace.empty();
      if (!atk_no_cycsat && !is_acyclic(cl.circuit)) opt.key_conditions = cycsat_conditions(cl);
      const AttackTrace trace = miter_attack(cl, oracle, opt);
      if (!atk_trace.empty()) write_trace(atk_trace, trace);
      std::cout << to_string(trace.outcome) << " after " << trace.iterations.size() << " iterations";
      if (trace.final_key) {
        const bool ok = check_equivalence(oracle_circuit, cl, *trace.final_key).equivalent;
        std::cout << ", key " << trace.final_key->to_hex() << (ok ? " (equivalent)" : " (NOT equivalent)");
      }
      std::cout << "\n";
      return trace.outcome == AttackOutcome::Timeout ? kTimeout : 0;
    }

    if (*kc_cmd) {
      const LockedCircuit cl = load_locked(kc_bench, kc_key_file);
      const Circuit original = reference(cl, kc_original);
      const BitVector key = BitVector::from_hex(kc_key, cl.key_width());
      const EstimatorMode mode = kc_est.resolve(original.num_inputs());
      const CorruptionEstimate e =
          key_corruption_thresholded(original, cl, key, kc_threshold, mode, kc_est.params());
      MetricRow row = with_cell(metric_row(kc_threshold == 1 ? "keycor" : "keycor_t" + std::to_string(kc_threshold), e),
                                cl);
      row.key_hex = key.to_hex();
      std::cout << metrics_csv({row});
      return 0;
    }

    if (*pmc_cmd) {
      const LockedCircuit cl = load_locked(pmc_bench, pmc_key_file);
      const Circuit original = reference(cl, pmc_original);
      const EstimatorMode mode = pmc_est.resolve(original.num_inputs());
      std::unique_ptr<KeySampler> sampler;
      if (pmc_bias >= 0) {
        sampler = std::make_unique<BiasedKeySampler>(cl.correct_key, pmc_bias, pmc_seed);
      } else {
        sampler = std::make_unique<UniformKeySampler>(cl.key_width(), pmc_seed);
      }
      const auto samples =
          evaluate_keys(original, cl, draw_keys(*sampler, pmc_samples), mode, pmc_est.params(), pmc_threads);
      std::vector<MetricRow> rows;
      for (const PmcEstimate& e : pmc_curve(samples, pmc_eps)) {
        CorruptionEstimate ce;
        ce.value = e.value;
        std::tie(ce.lo, ce.hi) = wilson_interval(static_cast<double>(e.meeting), static_cast<double>(e.key_samples));
        ce.method = mode;
        ce.params = "epsilon=" + text::format_double(e.epsilon) + ";key_samples=" + std::to_string(e.key_samples) +
                    ";failed=" + std::to_string(e.failed) +
                    (pmc_bias >= 0 ? ";bias_p=" + text::format_double(pmc_bias) : std::string()) + ";" +
                    pmc_est.params().describe(mode);
        rows.push_back(with_cell(metric_row("pmc", ce), cl));
      }
      std::cout << metrics_csv(rows);
      return 0;
    }

    if (*sweep_cmd) {
      const ExperimentConfig cfg = load_config(sweep_config);
      const RunSummary summary = run(cfg);
      for (const auto& t : summary.tasks) {
        std::cout << t.name << ": ";
        if (!t.error.empty()) {
          std::cout << "failed: " << t.error << "\n";
        } else {
          std::cout << t.rows << " rows -> " << (summary.output_dir / t.file).string();
          if (!t.cell_errors.empty()) std::cout << " (" << t.cell_errors.size() << " cell errors)";
          std::cout << "\n";
        }
      }
      if (summary.timeout_dominated()) return kTimeout;
      return summary.all_ok() ? 0 : kInputError;
    }

    if (*pareto_cmd) {
      std::vector<ParetoPoint> points;
      for (const auto& f : pareto_files) {
        auto p = parse_pareto_points(slurp(f));
        points.insert(points.end(), p.begin(), p.end());
      }
      std::cout << pareto_csv(pareto_front(std::move(points)));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}
