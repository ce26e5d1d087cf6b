#include "lockeval/metrics/corruption.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <random>

#include "lockeval/cnf/encode.hpp"
#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"
#include "lockeval/util/text.hpp"

namespace lockeval {

namespace {

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

std::uint64_t exact_word(std::size_t word, std::size_t input) {
  if (input < 6) return kLanePattern[input];
  return ((word >> (input - 6)) & 1U) ? ~std::uint64_t{0} : 0;
}

std::uint64_t tail_mask(std::size_t total, std::size_t word) {
  const std::size_t left = total - word * 64;
  return left >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << left) - 1;
}

/// Number of lanes with at least t of the `diffs` words set.
std::uint64_t count_lanes(const std::vector<std::uint64_t>& diffs, std::size_t t, std::uint64_t mask) {
  if (t == 1) {
    std::uint64_t any = 0;
    for (std::uint64_t d : diffs) any |= d;
    return static_cast<std::uint64_t>(std::popcount(any & mask));
  }
  std::uint64_t n = 0;
  for (std::uint64_t lanes = mask; lanes; lanes &= lanes - 1) {
    const int lane = std::countr_zero(lanes);
    std::size_t bits = 0;
    for (std::uint64_t d : diffs) bits += (d >> lane) & 1U;
    n += bits >= t ? 1 : 0;
  }
  return n;
}

void check_pair(const Circuit& original, const LockedCircuit& cl) {
  cl.validate();
  if (original.num_inputs() != cl.num_data_inputs() || original.num_outputs() != cl.circuit.num_outputs()) {
    throw MetricError("locked circuit interface does not match the original");
  }
}

void check_threshold(std::size_t t, std::size_t m) {
  if (t < 1 || t > m) throw MetricError("threshold must lie in 1.." + std::to_string(m));
}

ApproxCountParams count_params(const EstimatorParams& p, std::uint64_t seed) {
  ApproxCountParams a;
  a.epsilon_a = p.epsilon_a;
  a.delta = p.delta;
  a.seed = seed;
  a.pivot = p.pivot;
  a.rounds = p.rounds;
  a.budget = cnf::Budget::seconds(p.timeout_s);
  return a;
}

CorruptionEstimate from_count(const CountEstimate& c, double space, const EstimatorParams& p) {
  CorruptionEstimate e;
  e.method = EstimatorMode::HashApprox;
  e.value = std::min(1.0, c.estimate / space);
  if (c.method == CountMethod::Exact) {
    e.lo = e.hi = e.value;
  } else {
    e.lo = std::min(1.0, c.estimate / (1.0 + c.epsilon_a) / space);
    e.hi = std::min(1.0, c.estimate * (1.0 + c.epsilon_a) / space);
  }
  e.params = p.describe(EstimatorMode::HashApprox) + ";count=" + std::string(to_string(c.method));
  e.positives = c.estimate;
  e.samples = space;
  return e;
}

std::vector<cnf::Lit> fresh(cnf::CnfFormula& f, std::size_t n) {
  std::vector<cnf::Lit> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(cnf::Lit::pos(f.new_var()));
  return v;
}

/// Miter literal: at least t outputs of the two copies differ.
cnf::Lit differ_at_least(cnf::CnfFormula& f, const std::vector<cnf::Lit>& a, const std::vector<cnf::Lit>& b,
                         std::size_t t) {
  if (t == 1) return cnf::make_differ(f, a, b);
  std::vector<cnf::Lit> d;
  for (std::size_t j = 0; j < a.size(); ++j) d.push_back(cnf::make_xor(f, {a[j], b[j]}));
  return cnf::make_at_least(f, d, t);
}

}  // namespace

std::string_view to_string(EstimatorMode mode) {
  switch (mode) {
    case EstimatorMode::Exact:
      return "EXACT";
    case EstimatorMode::MonteCarlo:
      return "MONTE_CARLO";
    case EstimatorMode::HashApprox:
      return "HASH_APPROX";
  }
  return "?";
}

std::optional<EstimatorMode> estimator_mode_from_string(std::string_view name) {
  std::string upper(name);
  std::ranges::transform(upper, upper.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "EXACT") return EstimatorMode::Exact;
  if (upper == "MONTE_CARLO" || upper == "MC") return EstimatorMode::MonteCarlo;
  if (upper == "HASH_APPROX" || upper == "HASH") return EstimatorMode::HashApprox;
  return std::nullopt;
}

std::string EstimatorParams::describe(EstimatorMode mode) const {
  switch (mode) {
    case EstimatorMode::Exact:
      return "exact";
    case EstimatorMode::MonteCarlo:
      return "samples=" + std::to_string(samples) + ";seed=" + std::to_string(seed);
    case EstimatorMode::HashApprox:
      return "eps=" + text::format_double(epsilon_a) + ";delta=" + text::format_double(delta) +
             ";seed=" + std::to_string(seed);
  }
  return {};
}

EstimatorMode default_mode(std::size_t n, const EstimatorParams& params) {
  return n <= params.exact_limit ? EstimatorMode::Exact : EstimatorMode::MonteCarlo;
}

std::pair<double, double> wilson_interval(double k, double n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = k / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  // At k = 0 and k = n the bound is exactly 0 or 1; rounding can miss it.
  const double lo = k <= 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = k >= n ? 1.0 : std::min(1.0, centre + half);
  return {lo, hi};
}

CorruptionEvaluator::CorruptionEvaluator(const Circuit& original, const LockedCircuit& cl, EstimatorMode mode,
                                         const EstimatorParams& params)
    : original_(original), cl_(cl), mode_(mode), params_(params) {
  check_pair(original, cl);
  n_ = original.num_inputs();
  m_ = original.num_outputs();
  if (is_acyclic(cl.circuit)) locked_sim_ = std::make_unique<Simulator>(cl.circuit);
  if (mode == EstimatorMode::HashApprox) return;

  std::size_t words = 0;
  if (mode == EstimatorMode::Exact) {
    if (n_ > params.exact_limit) {
      throw MetricError("EXACT needs n <= " + std::to_string(params.exact_limit) + ", circuit has " +
                        std::to_string(n_) + " inputs");
    }
    total_ = std::size_t{1} << n_;
    words = (total_ + 63) / 64;
    inputs_.resize(words * n_);
    for (std::size_t w = 0; w < words; ++w) {
      for (std::size_t i = 0; i < n_; ++i) inputs_[w * n_ + i] = exact_word(w, i);
    }
  } else {
    if (params.samples < 1) throw MetricError("MONTE_CARLO needs at least one sample");
    total_ = params.samples;
    words = (total_ + 63) / 64;
    inputs_.resize(words * n_);
    std::mt19937_64 rng(params.seed);
    for (auto& word : inputs_) word = rng();
  }
  lane_mask_.resize(words);
  for (std::size_t w = 0; w < words; ++w) lane_mask_[w] = tail_mask(total_, w);
  const Simulator ref(original);
  reference_.resize(words * m_);
  for (std::size_t w = 0; w < words; ++w) {
    ref.run({inputs_.data() + w * n_, n_}, {reference_.data() + w * m_, m_});
  }
}

CorruptionEstimate CorruptionEvaluator::key_corruption(const BitVector& key, std::size_t threshold) const {
  if (key.width() != cl_.key_width()) throw MetricError("key width does not match the locked circuit");
  check_threshold(threshold, m_);
  return mode_ == EstimatorMode::HashApprox ? count_key(key, threshold) : simulate_key(key, threshold);
}

CorruptionEstimate CorruptionEvaluator::simulate_key(const BitVector& key, std::size_t threshold) const {
  std::unique_ptr<Simulator> bound;
  const Simulator* sim = locked_sim_.get();
  std::vector<std::uint64_t> in(locked_sim_ ? n_ + key.width() : n_);
  if (!locked_sim_) {
    try {
      bound = std::make_unique<Simulator>(bind_key(cl_, key));
    } catch (const CircuitError& e) {
      throw MetricError(std::string("key leaves the locked circuit cyclic: ") + e.what());
    }
    sim = bound.get();
  } else {
    for (std::size_t i = 0; i < key.width(); ++i) in[n_ + i] = key[i] ? ~std::uint64_t{0} : 0;
  }

  std::vector<std::uint64_t> out(m_);
  std::uint64_t positives = 0;
  for (std::size_t w = 0; w < lane_mask_.size(); ++w) {
    std::copy_n(inputs_.begin() + static_cast<std::ptrdiff_t>(w * n_), n_, in.begin());
    sim->run(in, out);
    for (std::size_t j = 0; j < m_; ++j) out[j] ^= reference_[w * m_ + j];
    positives += count_lanes(out, threshold, lane_mask_[w]);
  }

  CorruptionEstimate e;
  e.method = mode_;
  e.params = params_.describe(mode_);
  e.positives = static_cast<double>(positives);
  e.samples = static_cast<double>(total_);
  e.value = e.positives / e.samples;
  if (mode_ == EstimatorMode::Exact) {
    e.lo = e.hi = e.value;
  } else {
    std::tie(e.lo, e.hi) = wilson_interval(e.positives, e.samples);
  }
  return e;
}

CorruptionEstimate CorruptionEvaluator::count_key(const BitVector& key, std::size_t threshold) const {
  cnf::CnfFormula f;
  const std::vector<cnf::Lit> x = fresh(f, n_);
  const auto lo = cnf::encode(original_, f, cnf::bind(original_.inputs(), x));
  cnf::NetLits shared = cnf::bind(cl_.data_inputs(), x);
  const auto keys = cl_.key_inputs();
  for (std::size_t i = 0; i < keys.size(); ++i) shared.emplace(keys[i], f.constant(key[i]));
  const auto ll = cnf::encode(cl_.circuit, f, shared, {.allow_cycles = locked_sim_ == nullptr});
  f.add_clause({differ_at_least(f, cnf::lits_of(lo, original_.outputs()), cnf::lits_of(ll, cl_.circuit.outputs()),
                                threshold)});
  std::vector<int> projection;
  for (cnf::Lit l : x) projection.push_back(l.var());
  const CountEstimate c = approx_count(f, projection, count_params(params_, params_.seed));
  return from_count(c, std::ldexp(1.0, static_cast<int>(n_)), params_);
}

CorruptionEstimate key_corruption(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                  EstimatorMode mode, const EstimatorParams& params) {
  return CorruptionEvaluator(original, cl, mode, params).key_corruption(key, 1);
}

CorruptionEstimate key_corruption_thresholded(const Circuit& original, const LockedCircuit& cl, const BitVector& key,
                                              std::size_t t, EstimatorMode mode, const EstimatorParams& params) {
  return CorruptionEvaluator(original, cl, mode, params).key_corruption(key, t);
}

CorruptionEstimate corruptibility(const Circuit& original, const LockedCircuit& cl, EstimatorMode mode,
                                  const EstimatorParams& params) {
  check_pair(original, cl);
  const std::size_t n = original.num_inputs();
  const std::size_t m = original.num_outputs();
  const std::size_t w = cl.key_width();

  if (mode == EstimatorMode::Exact) {
    if (n + w > params.exact_limit) {
      throw MetricError("EXACT corruptibility needs n + w <= " + std::to_string(params.exact_limit) + ", have " +
                        std::to_string(n + w));
    }
    const CorruptionEvaluator eval(original, cl, EstimatorMode::Exact, params);
    double positives = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << w); ++k) {
      positives += eval.key_corruption(BitVector::from_uint(k, w)).positives;
    }
    CorruptionEstimate e;
    e.method = mode;
    e.params = params.describe(mode);
    e.positives = positives;
    e.samples = std::ldexp(1.0, static_cast<int>(n + w));
    e.value = e.lo = e.hi = positives / e.samples;
    return e;
  }

  if (!is_acyclic(cl.circuit)) throw MetricError("sampled or counted corruptibility needs an acyclic locked circuit");

  if (mode == EstimatorMode::MonteCarlo) {
    if (params.samples < 1) throw MetricError("MONTE_CARLO needs at least one sample");
    const Simulator ref(original);
    const Simulator locked(cl.circuit);
    std::mt19937_64 rng(params.seed);
    std::vector<std::uint64_t> in(n + w);
    std::vector<std::uint64_t> a(m);
    std::vector<std::uint64_t> b(m);
    std::uint64_t positives = 0;
    const std::size_t words = (params.samples + 63) / 64;
    for (std::size_t word = 0; word < words; ++word) {
      for (auto& v : in) v = rng();
      ref.run({in.data(), n}, a);
      locked.run(in, b);
      for (std::size_t j = 0; j < m; ++j) b[j] ^= a[j];
      positives += count_lanes(b, 1, tail_mask(params.samples, word));
    }
    CorruptionEstimate e;
    e.method = mode;
    e.params = params.describe(mode);
    e.positives = static_cast<double>(positives);
    e.samples = static_cast<double>(params.samples);
    e.value = e.positives / e.samples;
    std::tie(e.lo, e.hi) = wilson_interval(e.positives, e.samples);
    return e;
  }

  cnf::CnfFormula f;
  const std::vector<cnf::Lit> x = fresh(f, n);
  const std::vector<cnf::Lit> k = fresh(f, w);
  const auto lo = cnf::encode(original, f, cnf::bind(original.inputs(), x));
  cnf::NetLits shared = cnf::bind(cl.data_inputs(), x);
  const auto keys = cl.key_inputs();
  for (std::size_t i = 0; i < w; ++i) shared.emplace(keys[i], k[i]);
  const auto ll = cnf::encode(cl.circuit, f, shared);
  f.add_clause({cnf::make_differ(f, cnf::lits_of(lo, original.outputs()), cnf::lits_of(ll, cl.circuit.outputs()))});
  std::vector<int> projection;
  for (cnf::Lit l : x) projection.push_back(l.var());
  for (cnf::Lit l : k) projection.push_back(l.var());
  return from_count(approx_count(f, projection, count_params(params, params.seed)),
                    std::ldexp(1.0, static_cast<int>(n + w)), params);
}

}  // namespace lockeval
