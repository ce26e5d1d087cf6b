#include "lockeval/locks/point_function.hpp"

#include "lock_util.hpp"
#include "lockeval/error.hpp"

namespace lockeval {

LockedCircuit lock_point_fn(const Circuit& c, const LockConfig& cfg) {
  c.validate();
  detail::check_unlocked(c);
  const std::size_t p = cfg.width;
  if (p < 1) throw LockError("comparator width must be at least 1");
  if (p > c.num_inputs()) {
    throw LockError("comparator width " + std::to_string(p) + " exceeds the " + std::to_string(c.num_inputs()) +
                    " data inputs of '" + c.name() + "'");
  }
  std::vector<std::string> outputs;
  for (const auto& o : c.outputs()) {
    if (!c.gate(o).is_pseudo()) outputs.push_back(o);
  }
  if (outputs.empty()) throw LockError("circuit '" + c.name() + "' has no gate-driven output to flip");

  detail::Rng rng(cfg.seed);
  std::vector<std::string> chosen = c.inputs();
  detail::shuffle(chosen, rng);
  chosen.resize(p);
  BitVector pattern(p);
  for (std::size_t i = 0; i < p; ++i) pattern.set(i, detail::random_bit(rng));
  const std::string target = outputs[detail::random_index(rng, outputs.size())];

  Circuit out = c;
  const auto keys = detail::add_key_inputs(out, p);
  std::vector<std::string> match;
  std::vector<std::string> restore;
  for (std::size_t i = 0; i < p; ++i) {
    if (pattern[i]) {
      match.push_back(chosen[i]);
    } else {
      match.push_back(out.fresh_name("pf_n" + std::to_string(i)));
      out.add_gate(match.back(), GateKind::Not, {chosen[i]});
    }
    restore.push_back(out.fresh_name("pf_r" + std::to_string(i)));
    out.add_gate(restore.back(), GateKind::Xnor, {chosen[i], keys[i]});
  }
  const std::string flip = out.fresh_name("pf_flip");
  const std::string unflip = out.fresh_name("pf_restore");
  out.add_gate(flip, p == 1 ? GateKind::Buf : GateKind::And, match);
  out.add_gate(unflip, p == 1 ? GateKind::Buf : GateKind::And, restore);
  const std::string driver = detail::splice(out, target);
  out.add_gate(target, GateKind::Xor, {driver, flip, unflip});
  out.validate();

  LockedCircuit cl{std::move(out), std::move(pattern), LockKind::PointFunction, {}};
  cl.metadata["seed"] = std::to_string(cfg.seed);
  cl.metadata["sites"] = detail::join(chosen);
  cl.metadata["flip_output"] = target;
  cl.validate();
  return cl;
}

}  // namespace lockeval
