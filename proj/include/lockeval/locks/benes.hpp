#ifndef LOCKEVAL_LOCKS_BENES_HPP
#define LOCKEVAL_LOCKS_BENES_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "lockeval/netlist/circuit.hpp"

namespace lockeval {

/// Rearrangeable N x N Benes network of 2x2 swap cells, N a power of two.
///
/// Recursive layout: an input column of N/2 cells, an upper and a lower
/// N/2 network, an output column of N/2 cells. Input cell i feeds input i of
/// both halves; output cell j reads output j of both halves. Setting 0 passes
/// straight (in0 -> upper / out0), 1 crosses.
///
/// Switch numbering, which is also key-bit order: input column, upper half,
/// lower half, output column (recursively). N = 2 is a single cell.
class BenesNetwork {
 public:
  explicit BenesNetwork(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t num_switches() const;
  std::size_t num_stages() const;

  /// perm[i] = output port reached by input port i under `settings`.
  std::vector<std::size_t> apply(const std::vector<bool>& settings) const;

  /// Switch settings realizing `perm` (input i -> output perm[i]), found
  /// with the looping algorithm. Throws std::invalid_argument if `perm` is
  /// not a permutation of 0..N-1.
  std::vector<bool> route(const std::vector<std::size_t>& perm) const;

  /// Emits the network as MUX gates into `c`. `inputs` are the N driving
  /// nets, `keys` the select nets in switch order, `outputs` the names given
  /// to the N network outputs. Internal nets get fresh names from `prefix`.
  void emit(Circuit& c, const std::vector<std::string>& inputs, const std::vector<std::string>& keys,
            const std::vector<std::string>& outputs, const std::string& prefix) const;

 private:
  std::size_t n_;
};

/// Key bits of an N-wire network: N*log2(N) - N/2.
std::size_t benes_key_width(std::size_t n);

}  // namespace lockeval

#endif
