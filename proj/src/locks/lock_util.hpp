#ifndef LOCKEVAL_SRC_LOCKS_LOCK_UTIL_HPP
#define LOCKEVAL_SRC_LOCKS_LOCK_UTIL_HPP

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lockeval/error.hpp"
#include "lockeval/locks/locked_circuit.hpp"

namespace lockeval::detail {

using Rng = std::mt19937_64;

inline bool random_bit(Rng& rng) { return (rng() >> 63) != 0; }

inline std::size_t random_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Fisher-Yates with our own index draws so results do not depend on the
/// standard library's shuffle.
template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[random_index(rng, i)]);
}

/// Moves the driver of `net` to a fresh name and returns it. Consumers and
/// outputs keep referring to `net`, which the caller must define again.
inline std::string splice(Circuit& c, const std::string& net) {
  const std::string moved = c.fresh_name(net + "_lk");
  c.rename_gate(net, moved);
  return moved;
}

inline std::vector<std::string> add_key_inputs(Circuit& c, std::size_t w) {
  std::vector<std::string> keys;
  keys.reserve(w);
  for (std::size_t i = 0; i < w; ++i) {
    keys.push_back(key_name(i));
    if (c.contains(keys.back())) throw LockError("circuit already has a net named " + keys.back());
    c.add_input(keys.back());
  }
  return keys;
}

inline std::string join(const std::vector<std::string>& items) {
  std::ostringstream out;
  for (std::size_t i = 0; i < items.size(); ++i) out << (i ? " " : "") << items[i];
  return out.str();
}

inline void check_unlocked(const Circuit& c) {
  for (const auto& in : c.inputs()) {
    if (is_key_name(in)) throw LockError("circuit '" + c.name() + "' already has key input " + in);
  }
}

}  // namespace lockeval::detail

#endif
