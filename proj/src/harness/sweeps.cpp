#include "lockeval/harness/sweeps.hpp"

#include "lockeval/attacks/oracle.hpp"
#include "lockeval/error.hpp"

namespace lockeval {

std::vector<SaturationPoint> sweep_saturation(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                              std::size_t max_samples, std::size_t step, std::uint64_t key_seed,
                                              EstimatorMode mode, const EstimatorParams& params, std::size_t threads) {
  UniformKeySampler sampler(cl.key_width(), key_seed);
  return saturation_curve(original, cl, epsilon, sampler, max_samples, step, mode, params, threads);
}

std::vector<BiasPoint> sweep_bias(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                  std::span<const double> ps, std::size_t key_samples, std::uint64_t key_seed,
                                  EstimatorMode mode, const EstimatorParams& params, std::size_t threads) {
  if (ps.empty()) throw MetricError("bias sweep needs at least one p");
  std::vector<BiasPoint> out;
  for (double p : ps) {
    BiasedKeySampler sampler(cl.correct_key, p, key_seed);
    out.push_back({p, p_mc(original, cl, epsilon, sampler, key_samples, mode, params, threads)});
  }
  return out;
}

double windowed_mean(std::span<const double> times, std::span<const double> values, double window_s) {
  if (times.empty() || times.size() != values.size()) throw MetricError("windowed mean needs matching samples");
  const double from = times.back() - window_s;
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= from && times[i] <= times.back()) {
      sum += values[i];
      ++n;
    }
  }
  return sum / static_cast<double>(n);
}

IncrementalResult evaluate_trace(const Circuit& original, const LockedCircuit& cl, AttackTrace trace, double window_s,
                                 EstimatorMode mode, const EstimatorParams& params) {
  const CorruptionEvaluator eval(original, cl, mode, params);
  IncrementalResult r;
  std::vector<double> times;
  std::vector<double> values;
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const TraceEntry& e = trace.iterations[i];
    if (!e.key) continue;
    IncrementalPoint pt;
    pt.iteration = i + 1;
    pt.elapsed_s = e.elapsed_s;
    pt.key = *e.key;
    pt.keycor = eval.key_corruption(*e.key);
    times.push_back(pt.elapsed_s);
    values.push_back(pt.keycor.value);
    pt.window_mean = windowed_mean(times, values, window_s);
    r.points.push_back(std::move(pt));
  }
  if (!r.points.empty()) {
    r.final_window_mean = r.points.back().window_mean;
  } else if (trace.final_key) {
    r.final_window_mean = eval.key_corruption(*trace.final_key).value;
  }
  r.trace = std::move(trace);
  return r;
}

IncrementalResult sweep_incremental(const Circuit& original, const LockedCircuit& cl, AttackOptions attack,
                                    double window_s, EstimatorMode mode, const EstimatorParams& params) {
  attack.trace_keys = true;
  SimulationOracle oracle(original);
  return evaluate_trace(original, cl, miter_attack(cl, oracle, attack), window_s, mode, params);
}

}  // namespace lockeval
