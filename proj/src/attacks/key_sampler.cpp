#include "lockeval/attacks/key_sampler.hpp"

#include <stdexcept>

namespace lockeval {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

double key_uniform(std::uint64_t seed, std::uint64_t j, std::uint64_t i) {
  const std::uint64_t h = splitmix(splitmix(splitmix(seed) ^ j) ^ (i * 0xD1B54A32D192ED03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

BitVector UniformKeySampler::next() {
  BitVector k(width_);
  for (std::size_t i = 0; i < width_; ++i) k.set(i, key_uniform(seed_, index_, i) < 0.5);
  ++index_;
  return k;
}

BiasedKeySampler::BiasedKeySampler(BitVector correct, double p, std::uint64_t seed)
    : correct_(std::move(correct)), p_(p), seed_(seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bias p must lie in [0, 1]");
}

BitVector BiasedKeySampler::next() {
  BitVector k = correct_;
  for (std::size_t i = 0; i < k.width(); ++i) {
    if (key_uniform(seed_, index_, i) >= p_) k.flip(i);
  }
  ++index_;
  return k;
}

}  // namespace lockeval
