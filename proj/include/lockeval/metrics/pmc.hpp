#ifndef LOCKEVAL_METRICS_PMC_HPP
#define LOCKEVAL_METRICS_PMC_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lockeval/attacks/key_sampler.hpp"
#include "lockeval/metrics/corruption.hpp"

namespace lockeval {

/// One sampled key and its KeyCor, or the error that prevented evaluating it.
struct KeySample {
  BitVector key;
  std::optional<CorruptionEstimate> estimate;
  std::string error;
};

struct PmcEstimate {
  double epsilon = 0;
  /// meeting / key_samples.
  double value = 0;
  /// Keys evaluated successfully; failed keys are excluded.
  std::size_t key_samples = 0;
  std::size_t failed = 0;
  std::size_t meeting = 0;
  std::vector<KeySample> keys;
};

/// A key meets threshold epsilon when it is wrong somewhere (KeyCor > 0) and
/// KeyCor >= epsilon. At epsilon = 0 this counts the keys with nonzero
/// corruption.
bool meets_threshold(double key_corruption, double epsilon);

std::vector<BitVector> draw_keys(KeySampler& sampler, std::size_t count);

/// KeyCor of every key, on `threads` workers (0 = hardware concurrency).
/// Per-key MetricError/CircuitError is caught and stored in KeySample::error.
std::vector<KeySample> evaluate_keys(const Circuit& original, const LockedCircuit& cl, std::span<const BitVector> keys,
                                     EstimatorMode mode, const EstimatorParams& params = {}, std::size_t threads = 0);

/// p_mc over the first `prefix` samples (all when prefix is 0).
PmcEstimate pmc_from_samples(std::span<const KeySample> samples, double epsilon, std::size_t prefix = 0);

/// Fraction of `key_samples` keys drawn from `sampler` with KeyCor >= epsilon.
/// Throws MetricError when key_samples is 0 or every key failed.
PmcEstimate p_mc(const Circuit& original, const LockedCircuit& cl, double epsilon, KeySampler& sampler,
                 std::size_t key_samples, EstimatorMode mode, const EstimatorParams& params = {},
                 std::size_t threads = 0);

/// p_mc at each epsilon over the same samples. Throws std::logic_error if the
/// values are not non-increasing in epsilon.
std::vector<PmcEstimate> pmc_curve(std::span<const KeySample> samples, std::span<const double> epsilons);

struct SaturationPoint {
  std::size_t samples = 0;
  double value = 0;
};

/// Running p_mc after step, 2*step, ... keys, ending at max_samples. One pass:
/// keys are drawn and evaluated once and each point reuses the prefix.
std::vector<SaturationPoint> saturation_curve(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                              KeySampler& sampler, std::size_t max_samples, std::size_t step,
                                              EstimatorMode mode, const EstimatorParams& params = {},
                                              std::size_t threads = 0);

}  // namespace lockeval

#endif
