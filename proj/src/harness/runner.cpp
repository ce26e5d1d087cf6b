#include "lockeval/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <optional>

#include "lockeval/attacks/cycsat.hpp"
#include "lockeval/error.hpp"
#include "lockeval/harness/overhead.hpp"
#include "lockeval/harness/pareto.hpp"
#include "lockeval/harness/sweeps.hpp"
#include "lockeval/metrics/metrics_csv.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/netlist/bench.hpp"
#include "lockeval/util/csv.hpp"
#include "lockeval/util/parallel.hpp"
#include "lockeval/util/text.hpp"
#include "lockeval/version.hpp"

namespace lockeval {

namespace {

using text::format_double;

struct Cell {
  std::size_t circuit = 0;
  LockKind kind = LockKind::Xor;
  std::size_t width = 0;
  std::uint64_t seed = 0;
};

struct CellOutput {
  std::vector<std::string> rows;
  std::optional<ParetoPoint> point;
  OverheadProxy overhead;
  std::string error;
  bool attacked = false;
  bool timed_out = false;
};

std::string header(TaskType type) {
  switch (type) {
    case TaskType::KeyCor:
    case TaskType::Cor:
    case TaskType::Pmc:
      return metrics_csv_header();
    case TaskType::Saturation:
      return "circuit,lock,width,seed,epsilon,key_samples,p_mc";
    case TaskType::Bias:
      return "circuit,lock,width,seed,epsilon,bias_p,key_samples,failed,p_mc";
    case TaskType::Incremental:
      return "circuit,lock,width,seed,iter,elapsed_s,key_hex,keycor,lo,hi,method,window_mean,plot_value,floored";
    case TaskType::Pareto:
      return "circuit,lock,width,seed,area_ratio,delay_ratio,power_ratio,overhead,security,on_front";
  }
  return {};
}

std::string cell_prefix(const std::string& circuit, const Cell& cell) {
  return csv::join({circuit, std::string(to_string(cell.kind)), std::to_string(cell.width), std::to_string(cell.seed)});
}

AttackOptions attack_options(const TaskConfig& t, const LockedCircuit& cl) {
  AttackOptions a;
  a.timeout_s = t.timeout_s;
  a.max_iterations = t.max_iterations;
  if (!is_acyclic(cl.circuit)) a.key_conditions = cycsat_conditions(cl);
  return a;
}

std::string pmc_params(const PmcEstimate& e, std::string_view inner) {
  return "epsilon=" + format_double(e.epsilon) + ";key_samples=" + std::to_string(e.key_samples) +
         ";failed=" + std::to_string(e.failed) + ";" + std::string(inner);
}

class TaskRunner {
 public:
  TaskRunner(const TaskConfig& t, std::size_t inner_threads) : t_(t), inner_(inner_threads) {
    for (const auto& p : t.circuits) circuits_.push_back(read_bench(p));
  }

  std::size_t num_circuits() const { return circuits_.size(); }
  const Circuit& circuit(std::size_t i) const { return circuits_[i]; }

  CellOutput run(const Cell& cell) const {
    CellOutput out;
    const Circuit& c = circuits_[cell.circuit];
    LockConfig lc;
    lc.width = cell.width;
    lc.seed = cell.seed;
    lc.lut_arity = t_.lut_arity;
    const LockedCircuit cl = lock(c, cell.kind, lc);
    const std::string prefix = cell_prefix(c.name(), cell);
    const std::size_t n = c.num_inputs();
    const EstimatorMode mode = t_.mode.value_or(default_mode(n, t_.estimator));
    const std::string inner = t_.estimator.describe(mode);

    auto metric = [&](std::string name, const CorruptionEstimate& e, std::string key_hex) {
      MetricRow r = metric_row(std::move(name), e);
      r.circuit = c.name();
      r.lock = std::string(to_string(cell.kind));
      r.width = cell.width;
      r.seed = cell.seed;
      r.key_hex = std::move(key_hex);
      return format_metric_row(r);
    };
    auto key_samples = [&](std::size_t count) {
      UniformKeySampler sampler(cl.key_width(), cell.seed);
      return evaluate_keys(c, cl, draw_keys(sampler, count), mode, t_.estimator, inner_);
    };

    switch (t_.type) {
      case TaskType::KeyCor: {
        const CorruptionEvaluator eval(c, cl, mode, t_.estimator);
        UniformKeySampler sampler(cl.key_width(), cell.seed);
        const std::string name = t_.threshold == 1 ? "keycor" : "keycor_t" + std::to_string(t_.threshold);
        for (std::size_t i = 0; i < t_.keys; ++i) {
          const BitVector k = sampler.next();
          out.rows.push_back(metric(name, eval.key_corruption(k, t_.threshold), k.to_hex()));
        }
        break;
      }
      case TaskType::Cor: {
        const EstimatorMode m =
            t_.mode.value_or(n + cl.key_width() <= t_.estimator.exact_limit ? EstimatorMode::Exact
                                                                            : EstimatorMode::MonteCarlo);
        out.rows.push_back(metric("cor", corruptibility(c, cl, m, t_.estimator), ""));
        break;
      }
      case TaskType::Pmc: {
        const auto samples = key_samples(t_.key_samples);
        for (const PmcEstimate& e : pmc_curve(samples, t_.epsilons)) {
          CorruptionEstimate ce;
          ce.value = e.value;
          std::tie(ce.lo, ce.hi) = wilson_interval(static_cast<double>(e.meeting), static_cast<double>(e.key_samples));
          ce.method = mode;
          ce.params = pmc_params(e, inner);
          out.rows.push_back(metric("pmc", ce, ""));
        }
        break;
      }
      case TaskType::Saturation: {
        const auto curve =
            sweep_saturation(c, cl, t_.epsilons[0], t_.key_samples, t_.step, cell.seed, mode, t_.estimator, inner_);
        for (const auto& pt : curve) {
          out.rows.push_back(prefix + "," + format_double(t_.epsilons[0]) + "," + std::to_string(pt.samples) + "," +
                             format_double(pt.value));
        }
        break;
      }
      case TaskType::Bias: {
        for (double p : t_.bias_p) {
          BiasedKeySampler sampler(cl.correct_key, p, cell.seed);
          const auto samples = evaluate_keys(c, cl, draw_keys(sampler, t_.key_samples), mode, t_.estimator, inner_);
          for (const PmcEstimate& e : pmc_curve(samples, t_.epsilons)) {
            out.rows.push_back(prefix + "," + format_double(e.epsilon) + "," + format_double(p) + "," +
                               std::to_string(e.key_samples) + "," + std::to_string(e.failed) + "," +
                               format_double(e.value));
          }
        }
        break;
      }
      case TaskType::Incremental: {
        const IncrementalResult r =
            sweep_incremental(c, cl, attack_options(t_, cl), t_.window_s, mode, t_.estimator);
        out.attacked = true;
        out.timed_out = r.trace.outcome == AttackOutcome::Timeout;
        for (const auto& pt : r.points) {
          const bool floored = pt.keycor.value == 0;
          out.rows.push_back(prefix + "," + std::to_string(pt.iteration) + "," + format_double(pt.elapsed_s) + "," +
                             pt.key.to_hex() + "," + format_double(pt.keycor.value) + "," +
                             format_double(pt.keycor.lo) + "," + format_double(pt.keycor.hi) + "," +
                             std::string(to_string(pt.keycor.method)) + "," + format_double(pt.window_mean) + "," +
                             format_double(floored ? kKeyCorFloor : pt.keycor.value) + "," + (floored ? "1" : "0"));
        }
        break;
      }
      case TaskType::Pareto: {
        out.overhead = overhead_proxy(c, cl);
        ParetoPoint pt;
        pt.overhead = out.overhead.combined;
        pt.circuit = c.name();
        pt.lock = std::string(to_string(cell.kind));
        pt.width = cell.width;
        pt.seed = cell.seed;
        if (t_.security == SecurityMetric::Pmc) {
          pt.security = pmc_from_samples(key_samples(t_.key_samples), t_.epsilons[0]).value;
        } else {
          const IncrementalResult r =
              sweep_incremental(c, cl, attack_options(t_, cl), t_.window_s, mode, t_.estimator);
          out.attacked = true;
          out.timed_out = r.trace.outcome == AttackOutcome::Timeout;
          if (!r.final_window_mean) throw MetricError("attack produced no key to evaluate");
          pt.security = *r.final_window_mean;
        }
        out.point = pt;
        break;
      }
    }
    return out;
  }

 private:
  const TaskConfig& t_;
  std::size_t inner_;
  std::vector<Circuit> circuits_;
};

std::string pareto_row(const ParetoPoint& p, const OverheadProxy& o, bool on_front) {
  return csv::join({p.circuit, p.lock, std::to_string(p.width), std::to_string(p.seed), format_double(o.area_ratio),
                    format_double(o.delay_ratio), format_double(o.power_ratio), format_double(p.overhead),
                    format_double(p.security), on_front ? "1" : "0"});
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

}  // namespace

bool RunSummary::timeout_dominated() const {
  std::size_t cells = 0;
  std::size_t timeouts = 0;
  for (const auto& t : tasks) {
    cells += t.attack_cells;
    timeouts += t.attack_timeouts;
  }
  return cells > 0 && 2 * timeouts > cells;
}

bool RunSummary::all_ok() const {
  return std::ranges::all_of(tasks, [](const TaskResult& t) { return t.error.empty() && t.cell_errors.empty(); });
}

TaskOutput run_task(const TaskConfig& task, std::size_t threads) {
  TaskOutput out;
  out.result.name = task.name;
  out.result.type = task.type;
  out.csv = header(task.type) + "\n";

  std::vector<Cell> cells;
  for (std::size_t c = 0; c < task.circuits.size(); ++c) {
    for (LockKind k : task.locks) {
      for (std::size_t w : task.widths) {
        for (std::uint64_t s : task.seeds) cells.push_back({c, k, w, s});
      }
    }
  }
  const std::size_t workers = resolve_threads(threads);
  const std::size_t outer = std::min(workers, cells.size());
  const std::size_t inner = outer == 0 ? 1 : std::max<std::size_t>(1, workers / outer);

  const TaskRunner runner(task, inner);
  std::vector<CellOutput> results(cells.size());
  parallel_for(cells.size(), outer, [&](std::size_t i) {
    try {
      results[i] = runner.run(cells[i]);
    } catch (const Error& e) {
      results[i].error = e.what();
    }
  });

  std::map<std::string, std::vector<ParetoPoint>> by_circuit;
  for (const auto& r : results) {
    if (r.point) by_circuit[r.point->circuit].push_back(*r.point);
  }
  std::map<std::string, std::vector<ParetoPoint>> fronts;
  for (auto& [name, points] : by_circuit) fronts[name] = pareto_front(points);
  auto on_front = [&](const ParetoPoint& p) {
    return std::ranges::any_of(fronts[p.circuit], [&](const ParetoPoint& f) {
      return f.lock == p.lock && f.width == p.width && f.seed == p.seed;
    });
  };

  for (std::size_t i = 0; i < cells.size(); ++i) {
    const CellOutput& r = results[i];
    if (!r.error.empty()) {
      out.result.cell_errors.push_back(cell_prefix(runner.circuit(cells[i].circuit).name(), cells[i]) + ": " +
                                       r.error);
      continue;
    }
    if (r.attacked) {
      ++out.result.attack_cells;
      if (r.timed_out) ++out.result.attack_timeouts;
    }
    if (r.point) {
      out.csv += pareto_row(*r.point, r.overhead, on_front(*r.point)) + "\n";
      ++out.result.rows;
    }
    for (const auto& row : r.rows) {
      out.csv += row + "\n";
      ++out.result.rows;
    }
  }
  return out;
}

RunSummary run(const ExperimentConfig& config) {
  RunSummary summary;
  summary.output_dir = config.output_dir;
  std::filesystem::create_directories(config.output_dir);
  for (const auto& task : config.tasks) {
    TaskResult result;
    try {
      TaskOutput out = run_task(task, config.threads);
      result = std::move(out.result);
      result.file = task.name + ".csv";
      std::ofstream f(config.output_dir / result.file);
      if (!f) throw Error("cannot write " + (config.output_dir / result.file).string());
      f << out.csv;
    } catch (const Error& e) {
      result.name = task.name;
      result.type = task.type;
      result.error = e.what();
    }
    summary.tasks.push_back(std::move(result));
  }

  std::ofstream m(config.output_dir / "manifest.txt");
  if (!m) throw Error("cannot write manifest in " + config.output_dir.string());
  m << "tool = lockeval " << kVersion << "\n";
  m << "started = " << timestamp() << "\n";
  m << "config = " << config.source.string() << "\n";
  m << "threads = " << config.threads << "\n";
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    const TaskConfig& t = config.tasks[i];
    const TaskResult& r = summary.tasks[i];
    m << "\n[task]\n";
    for (const auto& [k, v] : t.raw) m << k << " = " << v << "\n";
    if (t.type == TaskType::Bias && std::ranges::none_of(t.raw, [](const auto& kv) { return kv.first == "bias_p"; })) {
      std::string ps;
      for (double p : t.bias_p) ps += (ps.empty() ? "" : ", ") + format_double(p);
      m << "bias_p = " << ps << "  # default\n";
    }
    if (!r.error.empty()) {
      m << "status = failed: " << r.error << "\n";
      continue;
    }
    m << "status = " << (r.cell_errors.empty() ? "ok" : "partial") << "\n";
    m << "file = " << r.file.string() << "\n";
    m << "rows = " << r.rows << "\n";
    if (r.attack_cells > 0) m << "attacks = " << r.attack_cells << " (" << r.attack_timeouts << " timed out)\n";
    for (const auto& e : r.cell_errors) m << "cell_error = " << e << "\n";
  }
  return summary;
}

}  // namespace lockeval
