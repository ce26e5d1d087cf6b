#include "lockeval/metrics/pmc.hpp"

#include <stdexcept>

#include "lockeval/error.hpp"
#include "lockeval/util/parallel.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

bool meets_threshold(double key_corruption, double epsilon) {
  return key_corruption > 0 && key_corruption >= epsilon;
}

std::vector<BitVector> draw_keys(KeySampler& sampler, std::size_t count) {
  std::vector<BitVector> keys;
  keys.reserve(count);
  for (std::size_t i = 0; i < count; ++i) keys.push_back(sampler.next());
  return keys;
}

std::vector<KeySample> evaluate_keys(const Circuit& original, const LockedCircuit& cl, std::span<const BitVector> keys,
                                     EstimatorMode mode, const EstimatorParams& params, std::size_t threads) {
  const CorruptionEvaluator eval(original, cl, mode, params);
  std::vector<KeySample> out(keys.size());
  parallel_for(keys.size(), threads, [&](std::size_t i) {
    out[i].key = keys[i];
    try {
      out[i].estimate = eval.key_corruption(keys[i]);
    } catch (const MetricError& e) {
      out[i].error = e.what();
    } catch (const CircuitError& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

PmcEstimate pmc_from_samples(std::span<const KeySample> samples, double epsilon, std::size_t prefix) {
  if (!(epsilon >= 0 && epsilon <= 1)) throw MetricError("epsilon must lie in [0, 1]");
  if (prefix == 0 || prefix > samples.size()) prefix = samples.size();
  PmcEstimate est;
  est.epsilon = epsilon;
  for (std::size_t i = 0; i < prefix; ++i) {
    const KeySample& s = samples[i];
    if (!s.estimate) {
      ++est.failed;
      continue;
    }
    ++est.key_samples;
    if (meets_threshold(s.estimate->value, epsilon)) ++est.meeting;
  }
  if (est.key_samples == 0) throw MetricError("p_mc: no key could be evaluated");
  est.value = static_cast<double>(est.meeting) / static_cast<double>(est.key_samples);
  return est;
}

PmcEstimate p_mc(const Circuit& original, const LockedCircuit& cl, double epsilon, KeySampler& sampler,
                 std::size_t key_samples, EstimatorMode mode, const EstimatorParams& params, std::size_t threads) {
  if (key_samples == 0) throw MetricError("p_mc needs at least one key sample");
  if (sampler.width() != cl.key_width()) throw MetricError("key sampler width does not match the locked circuit");
  const auto keys = draw_keys(sampler, key_samples);
  auto samples = evaluate_keys(original, cl, keys, mode, params, threads);
  PmcEstimate est = pmc_from_samples(samples, epsilon);
  est.keys = std::move(samples);
  return est;
}

std::vector<PmcEstimate> pmc_curve(std::span<const KeySample> samples, std::span<const double> epsilons) {
  std::vector<PmcEstimate> out;
  for (double e : epsilons) out.push_back(pmc_from_samples(samples, e));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (out[i].epsilon < out[j].epsilon && out[i].value < out[j].value) {
        throw std::logic_error("p_mc increased from epsilon " + text::format_double(out[i].epsilon) + " to " +
                               text::format_double(out[j].epsilon));
      }
    }
  }
  return out;
}

std::vector<SaturationPoint> saturation_curve(const Circuit& original, const LockedCircuit& cl, double epsilon,
                                              KeySampler& sampler, std::size_t max_samples, std::size_t step,
                                              EstimatorMode mode, const EstimatorParams& params, std::size_t threads) {
  if (max_samples == 0 || step == 0) throw MetricError("saturation curve needs positive max_samples and step");
  if (sampler.width() != cl.key_width()) throw MetricError("key sampler width does not match the locked circuit");
  const auto keys = draw_keys(sampler, max_samples);
  const auto samples = evaluate_keys(original, cl, keys, mode, params, threads);
  std::vector<SaturationPoint> curve;
  for (std::size_t n = step;; n += step) {
    n = std::min(n, max_samples);
    curve.push_back({n, pmc_from_samples(samples, epsilon, n).value});
    if (n == max_samples) break;
  }
  return curve;
}

}  // namespace lockeval
