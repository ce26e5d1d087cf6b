#include "lockeval/locks/insertion.hpp"

#include <functional>
#include <unordered_set>

#include "lock_util.hpp"
#include "lockeval/error.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval {

namespace {

using detail::Rng;

void check_width(const LockConfig& cfg) {
  if (cfg.width < 1) throw LockError("key width must be at least 1");
}

/// Nets whose value is observed: gates, and data inputs that feed something.
/// Inputs that are themselves outputs are skipped, since their key gate would
/// have to rename an output.
std::vector<std::string> observable_nets(const Circuit& c) {
  const auto readers = c.fanouts();
  std::unordered_set<std::string> outs(c.outputs().begin(), c.outputs().end());
  std::vector<std::string> nets;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Const0 || g.kind == GateKind::Const1) continue;
    if (g.kind == GateKind::Input) {
      if (outs.contains(g.name) || !readers.contains(g.name)) continue;
    } else if (!outs.contains(g.name) && !readers.contains(g.name)) {
      continue;
    }
    nets.push_back(g.name);
  }
  return nets;
}

/// Puts a new gate on `site`: every reader of `site` afterwards sees the new
/// gate, whose fan-ins come from `fanins(driver)` where `driver` still carries
/// the old value. Gates keep their name (the old driver is renamed); an input
/// keeps its name and its readers are redirected.
void insert_at(Circuit& c, const std::string& site, GateKind kind,
               const std::function<std::vector<std::string>(const std::string&)>& fanins) {
  if (c.gate(site).kind != GateKind::Input) {
    const std::string driver = detail::splice(c, site);
    c.add_gate(site, kind, fanins(driver));
    return;
  }
  const auto readers = c.fanouts();
  const std::string gate = c.fresh_name(site + "_lk");
  c.add_gate(gate, kind, fanins(site));
  if (auto it = readers.find(site); it != readers.end()) {
    for (const auto& r : it->second) c.replace_fanin(r, site, gate);
  }
}

LockedCircuit finish(Circuit c, LockKind kind, BitVector key, const LockConfig& cfg, std::vector<std::string> sites) {
  c.validate();
  LockedCircuit cl{std::move(c), std::move(key), kind, {}};
  cl.metadata["seed"] = std::to_string(cfg.seed);
  cl.metadata["sites"] = detail::join(sites);
  cl.validate();
  return cl;
}

enum class DecoyPolicy { Acyclic, Feedback };

LockedCircuit lock_mux_impl(const Circuit& c, const LockConfig& cfg, DecoyPolicy policy) {
  c.validate();
  detail::check_unlocked(c);
  check_width(cfg);
  Rng rng(cfg.seed);
  std::vector<std::string> candidates = observable_nets(c);
  detail::shuffle(candidates, rng);

  Circuit out = c;
  const auto keys = detail::add_key_inputs(out, cfg.width);
  BitVector key(cfg.width);
  std::vector<std::string> sites;
  std::vector<std::string> decoys;
  for (const auto& site : candidates) {
    if (sites.size() == cfg.width) break;
    const auto cone = fanout_cone(out, site);
    std::vector<std::string> legal;
    if (policy == DecoyPolicy::Acyclic) {
      for (const auto& d : candidates) {
        if (d != site && !cone.contains(d)) legal.push_back(d);
      }
    } else {
      for (const auto& d : candidates) {
        if (d != site && cone.contains(d)) legal.push_back(d);
      }
    }
    if (legal.empty()) continue;
    std::ranges::sort(legal);
    const std::string decoy = legal[detail::random_index(rng, legal.size())];
    const std::size_t i = sites.size();
    const bool bit = detail::random_bit(rng);
    key.set(i, bit);
    insert_at(out, site, GateKind::Mux, [&](const std::string& driver) {
      return bit ? std::vector<std::string>{keys[i], decoy, driver} : std::vector<std::string>{keys[i], driver, decoy};
    });
    sites.push_back(site);
    decoys.push_back(decoy);
  }
  if (sites.size() < cfg.width) {
    throw LockError("circuit '" + c.name() + "' has only " + std::to_string(sites.size()) + " MUX sites for width " +
                    std::to_string(cfg.width));
  }
  LockedCircuit cl = finish(std::move(out), policy == DecoyPolicy::Acyclic ? LockKind::Mux : LockKind::CyclicMux,
                            std::move(key), cfg, sites);
  cl.metadata["decoys"] = detail::join(decoys);
  return cl;
}

bool eval_gate(GateKind kind, std::uint32_t index, std::size_t arity) {
  auto in = [&](std::size_t j) { return ((index >> (arity - 1 - j)) & 1U) != 0; };
  bool acc = false;
  switch (kind) {
    case GateKind::And:
    case GateKind::Nand:
      acc = true;
      for (std::size_t j = 0; j < arity; ++j) acc = acc && in(j);
      return kind == GateKind::And ? acc : !acc;
    case GateKind::Or:
    case GateKind::Nor:
      for (std::size_t j = 0; j < arity; ++j) acc = acc || in(j);
      return kind == GateKind::Or ? acc : !acc;
    case GateKind::Xor:
    case GateKind::Xnor:
      for (std::size_t j = 0; j < arity; ++j) acc = acc != in(j);
      return kind == GateKind::Xor ? acc : !acc;
    case GateKind::Not:
      return !in(0);
    case GateKind::Buf:
      return in(0);
    case GateKind::Mux:
      return in(0) ? in(2) : in(1);
    default:
      throw LockError("gate kind has no truth table");
  }
}

}  // namespace

LockedCircuit lock_xor(const Circuit& c, const LockConfig& cfg) {
  c.validate();
  detail::check_unlocked(c);
  check_width(cfg);
  Rng rng(cfg.seed);
  std::vector<std::string> sites = observable_nets(c);
  if (sites.size() < cfg.width) {
    throw LockError("circuit '" + c.name() + "' has " + std::to_string(sites.size()) + " nets, need " +
                    std::to_string(cfg.width));
  }
  detail::shuffle(sites, rng);
  sites.resize(cfg.width);

  Circuit out = c;
  const auto keys = detail::add_key_inputs(out, cfg.width);
  BitVector key(cfg.width);
  for (std::size_t i = 0; i < cfg.width; ++i) {
    const bool bit = detail::random_bit(rng);
    key.set(i, bit);
    insert_at(out, sites[i], bit ? GateKind::Xnor : GateKind::Xor,
              [&](const std::string& driver) { return std::vector<std::string>{driver, keys[i]}; });
  }
  return finish(std::move(out), LockKind::Xor, std::move(key), cfg, sites);
}

LockedCircuit lock_mux(const Circuit& c, const LockConfig& cfg) { return lock_mux_impl(c, cfg, DecoyPolicy::Acyclic); }

LockedCircuit lock_cyclic_mux(const Circuit& c, const LockConfig& cfg) {
  return lock_mux_impl(c, cfg, DecoyPolicy::Feedback);
}

LockedCircuit lock_lut(const Circuit& c, const LockConfig& cfg) {
  c.validate();
  detail::check_unlocked(c);
  check_width(cfg);
  const std::size_t m = cfg.lut_arity;
  if (m < 1 || m > 6) throw LockError("LUT arity must be in 1..6");
  const std::size_t table = std::size_t{1} << m;
  const std::size_t luts = cfg.width / table;
  if (luts == 0) {
    throw LockError("width " + std::to_string(cfg.width) + " is below one " + std::to_string(m) + "-input LUT (" +
                    std::to_string(table) + " bits)");
  }
  Rng rng(cfg.seed);
  std::vector<std::string> candidates;
  for (const auto& g : c.gates()) {
    if (!g.is_pseudo() && g.fanins.size() == m) candidates.push_back(g.name);
  }
  if (candidates.size() < luts) {
    throw LockError("circuit '" + c.name() + "' has " + std::to_string(candidates.size()) + " gates of fan-in " +
                    std::to_string(m) + ", need " + std::to_string(luts));
  }
  detail::shuffle(candidates, rng);
  candidates.resize(luts);

  Circuit out = c;
  const auto keys = detail::add_key_inputs(out, luts * table);
  BitVector key(luts * table);
  for (std::size_t l = 0; l < luts; ++l) {
    const Gate g = out.gate(candidates[l]);
    const std::size_t base = l * table;
    std::vector<std::string> level;
    for (std::uint32_t idx = 0; idx < table; ++idx) {
      key.set(base + idx, eval_gate(g.kind, idx, m));
      level.push_back(keys[base + idx]);
    }
    // Level s selects on fan-in m-1-s: the last fan-in is the index LSB.
    for (std::size_t s = 0; s < m; ++s) {
      const std::string& sel = g.fanins[m - 1 - s];
      std::vector<std::string> next;
      for (std::size_t q = 0; q < level.size() / 2; ++q) {
        std::vector<std::string> fi{sel, level[2 * q], level[2 * q + 1]};
        if (s + 1 == m) {
          out.set_gate(g.name, GateKind::Mux, std::move(fi));
          next.push_back(g.name);
        } else {
          next.push_back(out.fresh_name(g.name + "_lut"));
          out.add_gate(next.back(), GateKind::Mux, std::move(fi));
        }
      }
      level = std::move(next);
    }
  }
  LockedCircuit cl = finish(std::move(out), LockKind::Lut, std::move(key), cfg, candidates);
  cl.metadata["lut_arity"] = std::to_string(m);
  return cl;
}

}  // namespace lockeval
