#include "lockeval/locks/benes.hpp"

#include <bit>
#include <stdexcept>

namespace lockeval {

namespace {

bool power_of_two(std::size_t n) { return n >= 2 && std::has_single_bit(n); }

std::size_t switches_for(std::size_t n) {
  return n == 2 ? 1 : n + 2 * switches_for(n / 2);
}

// Switches of an n-network starting at `offset`: [input column | upper | lower | output column].
void apply_rec(std::size_t n, const std::vector<bool>& s, std::size_t offset, std::vector<std::size_t>& perm) {
  // perm[i]: output port reached from input port i, computed in place.
  if (n == 2) {
    if (s[offset]) {
      perm = {1, 0};
    } else {
      perm = {0, 1};
    }
    return;
  }
  const std::size_t half = n / 2;
  const std::size_t sub = switches_for(half);
  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  apply_rec(half, s, offset + half, upper);
  apply_rec(half, s, offset + half + sub, lower);
  const std::size_t out_col = offset + half + 2 * sub;
  perm.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cell = i / 2;
    const bool to_upper = ((i % 2) == 0) != s[offset + cell];
    const std::size_t j = to_upper ? upper[cell] : lower[cell];
    // Output cell j: straight sends upper -> port 2j, lower -> 2j+1.
    const bool top = to_upper != s[out_col + j];
    perm[i] = 2 * j + (top ? 0 : 1);
  }
}

void route_rec(const std::vector<std::size_t>& perm, std::vector<bool>& s, std::size_t offset) {
  const std::size_t n = perm.size();
  if (n == 2) {
    s[offset] = perm[0] == 1;
    return;
  }
  const std::size_t half = n / 2;
  const std::size_t sub = switches_for(half);
  std::vector<std::size_t> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = i;

  // side[i] = 1 if input i travels through the upper half. Partner inputs
  // take opposite halves, and so do the inputs feeding partner outputs.
  std::vector<int> side(n, -1);
  for (std::size_t start = 0; start < n; start += 2) {
    std::size_t i = start;
    while (side[i] == -1) {
      side[i] = 1;
      side[i ^ 1U] = 0;
      i = inv[perm[i ^ 1U] ^ 1U];
    }
  }

  std::vector<std::size_t> upper(half);
  std::vector<std::size_t> lower(half);
  std::vector<bool> out_cross(half, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cell = i / 2;
    const bool up = side[i] == 1;
    if (i % 2 == 0) s[offset + cell] = !up;
    const std::size_t j = perm[i] / 2;
    (up ? upper : lower)[cell] = j;
    if (up) out_cross[j] = (perm[i] % 2) == 1;
  }
  route_rec(upper, s, offset + half);
  route_rec(lower, s, offset + half + sub);
  for (std::size_t j = 0; j < half; ++j) s[offset + half + 2 * sub + j] = out_cross[j];
}

}  // namespace

std::size_t benes_key_width(std::size_t n) {
  if (!power_of_two(n)) throw std::invalid_argument("Benes network size must be a power of two >= 2");
  return switches_for(n);
}

BenesNetwork::BenesNetwork(std::size_t n) : n_(n) {
  if (!power_of_two(n)) throw std::invalid_argument("Benes network size must be a power of two >= 2");
}

std::size_t BenesNetwork::num_switches() const { return switches_for(n_); }

std::size_t BenesNetwork::num_stages() const { return 2 * static_cast<std::size_t>(std::countr_zero(n_)) - 1; }

std::vector<std::size_t> BenesNetwork::apply(const std::vector<bool>& settings) const {
  if (settings.size() != num_switches()) throw std::invalid_argument("wrong number of switch settings");
  std::vector<std::size_t> perm;
  apply_rec(n_, settings, 0, perm);
  return perm;
}

std::vector<bool> BenesNetwork::route(const std::vector<std::size_t>& perm) const {
  if (perm.size() != n_) throw std::invalid_argument("permutation size does not match the network");
  std::vector<bool> seen(n_, false);
  for (std::size_t p : perm) {
    if (p >= n_ || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::vector<bool> s(num_switches(), false);
  route_rec(perm, s, 0);
  return s;
}

namespace {

struct Emitter {
  Circuit& c;
  const std::vector<std::string>& keys;
  const std::string& prefix;
  std::size_t counter = 0;

  std::string fresh() { return c.fresh_name(prefix + "_" + std::to_string(counter++)); }

  void cell(const std::string& k, const std::string& a, const std::string& b, const std::string& out0,
            const std::string& out1) {
    c.add_gate(out0, GateKind::Mux, {k, a, b});
    c.add_gate(out1, GateKind::Mux, {k, b, a});
  }

  void run(const std::vector<std::string>& ins, std::size_t offset, const std::vector<std::string>& outs) {
    const std::size_t n = ins.size();
    if (n == 2) {
      cell(keys[offset], ins[0], ins[1], outs[0], outs[1]);
      return;
    }
    const std::size_t half = n / 2;
    const std::size_t sub = switches_for(half);
    std::vector<std::string> up_in(half);
    std::vector<std::string> lo_in(half);
    std::vector<std::string> up_out(half);
    std::vector<std::string> lo_out(half);
    for (std::size_t i = 0; i < half; ++i) {
      up_in[i] = fresh();
      lo_in[i] = fresh();
      cell(keys[offset + i], ins[2 * i], ins[2 * i + 1], up_in[i], lo_in[i]);
    }
    for (std::size_t j = 0; j < half; ++j) {
      up_out[j] = fresh();
      lo_out[j] = fresh();
    }
    run(up_in, offset + half, up_out);
    run(lo_in, offset + half + sub, lo_out);
    for (std::size_t j = 0; j < half; ++j) {
      cell(keys[offset + half + 2 * sub + j], up_out[j], lo_out[j], outs[2 * j], outs[2 * j + 1]);
    }
  }
};

}  // namespace

void BenesNetwork::emit(Circuit& c, const std::vector<std::string>& inputs, const std::vector<std::string>& keys,
                        const std::vector<std::string>& outputs, const std::string& prefix) const {
  if (inputs.size() != n_ || outputs.size() != n_ || keys.size() != num_switches()) {
    throw std::invalid_argument("Benes emit: size mismatch");
  }
  Emitter e{c, keys, prefix};
  e.run(inputs, 0, outputs);
}

}  // namespace lockeval
