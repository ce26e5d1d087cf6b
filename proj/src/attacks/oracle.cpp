#include "lockeval/attacks/oracle.hpp"

#include "lockeval/error.hpp"

namespace lockeval {

BitVector Oracle::query(const BitVector& x) {
  if (x.width() != num_inputs()) {
    throw Error("oracle query has " + std::to_string(x.width()) + " bits, expected " + std::to_string(num_inputs()));
  }
  ++queries_;
  return evaluate(x);
}

ReplayOracle::ReplayOracle(const std::vector<IoPair>& log) {
  if (log.empty()) throw Error("empty replay log");
  inputs_ = log.front().x.width();
  outputs_ = log.front().y.width();
  for (const auto& io : log) {
    if (io.x.width() != inputs_ || io.y.width() != outputs_) throw Error("replay log widths are inconsistent");
    auto [it, inserted] = table_.emplace(io.x, io.y);
    if (!inserted && it->second != io.y) throw Error("replay log answers " + io.x.to_hex() + " twice, differently");
  }
}

BitVector ReplayOracle::evaluate(const BitVector& x) {
  auto it = table_.find(x);
  if (it == table_.end()) throw Error("replay log has no answer for input " + x.to_hex());
  return it->second;
}

}  // namespace lockeval
