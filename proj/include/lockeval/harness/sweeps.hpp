#ifndef LOCKEVAL_HARNESS_SWEEPS_HPP
#define LOCKEVAL_HARNESS_SWEEPS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lockeval/attacks/miter_attack.hpp"
#include "lockeval/metrics/pmc.hpp"

namespace lockeval {

/// Bias values swept by default.
inline const std::vector<double> kDefaultBiasAxis = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95};

/// Running p_mc of uniformly sampled keys (key stream seeded by key_seed).
std::vector<SaturationPoint> sweep_saturation(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                              std::size_t max_samples, std::size_t step, std::uint64_t key_seed,
                                              EstimatorMode mode, const EstimatorParams& params = {},
                                              std::size_t threads = 0);

struct BiasPoint {
  double p = 0;
  PmcEstimate pmc;
};

/// p_mc of keys whose bits each match the correct key with probability p.
/// The key streams for different p share key_seed, so they are coupled.
std::vector<BiasPoint> sweep_bias(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                  std::span<const double> ps, std::size_t key_samples, std::uint64_t key_seed,
                                  EstimatorMode mode, const EstimatorParams& params = {}, std::size_t threads = 0);

struct IncrementalPoint {
  std::size_t iteration = 0;  // 1-based, as in the trace
  double elapsed_s = 0;
  BitVector key;
  CorruptionEstimate keycor;
  /// Mean KeyCor over the points within window_s of this one.
  double window_mean = 0;
};

struct IncrementalResult {
  AttackTrace trace;
  std::vector<IncrementalPoint> points;
  /// Mean KeyCor of the keys found in the last window_s seconds of the
  /// attack; the final key's when the attack terminated with no trace keys.
  std::optional<double> final_window_mean;
};

/// Mean of values whose time lies in [times.back() - window_s, times.back()].
double windowed_mean(std::span<const double> times, std::span<const double> values, double window_s);

/// Runs miter_attack with key tracing and evaluates KeyCor of every
/// intermediate key. The oracle simulates `original`.
IncrementalResult sweep_incremental(const Circuit& original, const LockedCircuit& cl, AttackOptions attack,
                                    double window_s, EstimatorMode mode, const EstimatorParams& params = {});

/// Same, on an existing trace (every traced key is evaluated, nothing else).
IncrementalResult evaluate_trace(const Circuit& original, const LockedCircuit& cl, AttackTrace trace, double window_s,
                                 EstimatorMode mode, const EstimatorParams& params = {});

}  // namespace lockeval

#endif
