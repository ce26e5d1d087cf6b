#include "lockeval/locks/routing.hpp"

#include <unordered_set>

#include "lock_util.hpp"
#include "lockeval/error.hpp"
#include "lockeval/locks/benes.hpp"
#include "lockeval/netlist/analysis.hpp"

namespace lockeval {

namespace {

std::size_t network_size(const LockConfig& cfg) {
  if (cfg.routing_wires != 0) {
    if (cfg.routing_wires < 2 || (cfg.routing_wires & (cfg.routing_wires - 1)) != 0) {
      throw LockError("routing network size " + std::to_string(cfg.routing_wires) + " is not a power of two >= 2");
    }
    return cfg.routing_wires;
  }
  if (cfg.width < 1) throw LockError("key width must be at least 1");
  std::size_t n = 2;
  while (benes_key_width(2 * n) <= cfg.width) n *= 2;
  return n;
}

}  // namespace

LockedCircuit lock_routing(const Circuit& c, const LockConfig& cfg) {
  c.validate();
  detail::check_unlocked(c);
  const std::size_t n = network_size(cfg);
  detail::Rng rng(cfg.seed);

  std::vector<std::string> candidates = c.internal_nets();
  detail::shuffle(candidates, rng);
  std::vector<std::string> wires;
  std::unordered_set<std::string> blocked;
  for (const auto& net : candidates) {
    if (wires.size() == n) break;
    if (blocked.contains(net)) continue;
    wires.push_back(net);
    blocked.insert(net);
    for (const auto& x : fanin_cone(c, net)) blocked.insert(x);
    for (const auto& x : fanout_cone(c, net)) blocked.insert(x);
  }
  if (wires.size() < n) {
    throw LockError("circuit '" + c.name() + "' has only " + std::to_string(wires.size()) +
                    " mutually independent wires, need " + std::to_string(n));
  }

  std::vector<std::size_t> wiring(n);
  for (std::size_t i = 0; i < n; ++i) wiring[i] = i;
  detail::shuffle(wiring, rng);

  const BenesNetwork net(n);
  Circuit out = c;
  const auto keys = detail::add_key_inputs(out, net.num_switches());
  std::vector<std::string> drivers(n);
  for (std::size_t j = 0; j < n; ++j) drivers[j] = detail::splice(out, wires[j]);
  // Port i carries wire wiring[i]; it must come out at port wiring[i].
  std::vector<std::string> ports(n);
  for (std::size_t i = 0; i < n; ++i) ports[i] = drivers[wiring[i]];
  net.emit(out, ports, keys, wires, out.fresh_name("rt"));
  out.validate();

  const std::vector<bool> settings = net.route(wiring);
  BitVector key(settings.size());
  for (std::size_t i = 0; i < settings.size(); ++i) key.set(i, settings[i]);

  LockedCircuit cl{std::move(out), std::move(key), LockKind::Routing, {}};
  cl.metadata["seed"] = std::to_string(cfg.seed);
  cl.metadata["sites"] = detail::join(wires);
  cl.metadata["network_size"] = std::to_string(n);
  std::vector<std::string> w;
  for (std::size_t v : wiring) w.push_back(std::to_string(v));
  cl.metadata["wiring"] = detail::join(w);
  cl.validate();
  return cl;
}

}  // namespace lockeval
