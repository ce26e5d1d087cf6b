#ifndef LOCKEVAL_METRICS_CORRUPTION_HPP
#define LOCKEVAL_METRICS_CORRUPTION_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lockeval/locks/locked_circuit.hpp"
#include "lockeval/metrics/approx_count.hpp"
#include "lockeval/netlist/simulate.hpp"

namespace lockeval {

enum class EstimatorMode { Exact, MonteCarlo, HashApprox };

std::string_view to_string(EstimatorMode mode);
std::optional<EstimatorMode> estimator_mode_from_string(std::string_view name);

struct EstimatorParams {
  /// MONTE_CARLO input samples.
  std::size_t samples = 10000;
  /// HASH_APPROX tolerance and failure probability.
  double epsilon_a = 0.8;
  double delta = 0.2;
  std::uint64_t seed = 1;
  /// 0 = no limit. Applies to HASH_APPROX solver calls.
  double timeout_s = 0;
  /// Largest input count EXACT accepts (n for KeyCor, n + w for Cor).
  std::size_t exact_limit = 20;
  std::optional<std::size_t> pivot = std::nullopt;
  std::optional<std::size_t> rounds = std::nullopt;

  /// "samples=10000;seed=1" style description of the fields `mode` uses.
  std::string describe(EstimatorMode mode) const;
};

/// EXACT when n <= exact_limit, MONTE_CARLO otherwise.
EstimatorMode default_mode(std::size_t n, const EstimatorParams& params = {});

struct CorruptionEstimate {
  double value = 0;
  /// Wilson 95% interval (MONTE_CARLO), the (1 + epsilon_a) multiplicative
  /// band (HASH_APPROX), or [value, value] (EXACT).
  double lo = 0;
  double hi = 0;
  EstimatorMode method = EstimatorMode::Exact;
  std::string params;
  /// Failing inputs found and inputs examined (MONTE_CARLO, EXACT); for
  /// HASH_APPROX, the estimated failing-input count and 2^n.
  double positives = 0;
  double samples = 0;
};

/// Wilson score interval for k successes in n trials (z = 1.96).
std::pair<double, double> wilson_interval(double k, double n, double z = 1.96);

/// Evaluates KeyCor for many keys of one locked circuit. Input patterns and
/// reference outputs are prepared once (all 2^n patterns for EXACT, a fixed
/// seeded sample for MONTE_CARLO), so every key is judged on the same inputs.
/// Const member functions are safe to call concurrently.
class CorruptionEvaluator {
 public:
  CorruptionEvaluator(const Circuit& original, const LockedCircuit& cl, EstimatorMode mode,
                      const EstimatorParams& params = {});

  EstimatorMode mode() const { return mode_; }

  /// P_x[popcount(C(x) xor C_l(x, key)) >= threshold].
  CorruptionEstimate key_corruption(const BitVector& key, std::size_t threshold = 1) const;

 private:
  CorruptionEstimate simulate_key(const BitVector& key, std::size_t threshold) const;
  CorruptionEstimate count_key(const BitVector& key, std::size_t threshold) const;

  const Circuit& original_;
  const LockedCircuit& cl_;
  EstimatorMode mode_;
  EstimatorParams params_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t total_ = 0;  // patterns examined
  std::vector<std::uint64_t> inputs_;     // [word][input]
  std::vector<std::uint64_t> reference_;  // [word][output]
  std::vector<std::uint64_t> lane_mask_;  // [word]
  std::unique_ptr<Simulator> locked_sim_;  // null for cyclic locks
};

/// KeyCor(C, C_l, k) = P_x[C(x) != C_l(x, k)].
CorruptionEstimate key_corruption(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                  EstimatorMode mode, const EstimatorParams& params = {});

/// P_x[at least t output bits differ]; t = 1 is key_corruption.
CorruptionEstimate key_corruption_thresholded(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                              std::size_t t, EstimatorMode mode, const EstimatorParams& params = {});

/// Cor(C, C_l) = P_{x,k}[C(x) != C_l(x, k)], x and k uniform.
CorruptionEstimate corruptibility(const Circuit& original, const LockedCircuit& cl, EstimatorMode mode,
                                  const EstimatorParams& params = {});

}  // namespace lockeval

#endif
