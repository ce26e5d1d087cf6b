#ifndef LOCKEVAL_ATTACKS_KEY_SAMPLER_HPP
#define LOCKEVAL_ATTACKS_KEY_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <memory>

#include "lockeval/netlist/bitvector.hpp"

namespace lockeval {

/// Stream of keys. Draws are counter-based: the j-th key's bit i depends only
/// on (seed, j, i), so streams of different widths share their prefixes and
/// biased streams with the same seed are coupled across p (a bit wrong at p
/// stays wrong at every smaller p).
class KeySampler {
 public:
  virtual ~KeySampler() = default;
  virtual std::size_t width() const = 0;
  virtual BitVector next() = 0;
};

/// Uniform over {0,1}^w.
class UniformKeySampler : public KeySampler {
 public:
  UniformKeySampler(std::size_t width, std::uint64_t seed) : width_(width), seed_(seed) {}
  std::size_t width() const override { return width_; }
  BitVector next() override;

 private:
  std::size_t width_;
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

/// Bit i equals correct[i] with probability p, independently.
class BiasedKeySampler : public KeySampler {
 public:
  BiasedKeySampler(BitVector correct, double p, std::uint64_t seed);
  std::size_t width() const override { return correct_.width(); }
  BitVector next() override;

 private:
  BitVector correct_;
  double p_;
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

/// Uniform draw in [0,1) for (seed, sample j, bit i).
double key_uniform(std::uint64_t seed, std::uint64_t j, std::uint64_t i);

}  // namespace lockeval

#endif
