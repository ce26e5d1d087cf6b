#ifndef LOCKEVAL_ATTACKS_ORACLE_HPP
#define LOCKEVAL_ATTACKS_ORACLE_HPP

#include <cstddef>
#include <map>
#include <vector>

#include "lockeval/netlist/bitvector.hpp"
#include "lockeval/netlist/circuit.hpp"
#include "lockeval/netlist/simulate.hpp"

namespace lockeval {

struct IoPair {
  BitVector x;
  BitVector y;

  friend bool operator==(const IoPair&, const IoPair&) = default;
};

/// Black-box access to the unlocked function. Counts queries.
class Oracle {
 public:
  virtual ~Oracle() = default;

  BitVector query(const BitVector& x);
  std::size_t queries() const { return queries_; }

  virtual std::size_t num_inputs() const = 0;
  virtual std::size_t num_outputs() const = 0;

 protected:
  virtual BitVector evaluate(const BitVector& x) = 0;

 private:
  std::size_t queries_ = 0;
};

/// Answers by simulating the original circuit in-process.
class SimulationOracle : public Oracle {
 public:
  explicit SimulationOracle(const Circuit& original) : sim_(original) {}

  std::size_t num_inputs() const override { return sim_.num_inputs(); }
  std::size_t num_outputs() const override { return sim_.num_outputs(); }

 protected:
  BitVector evaluate(const BitVector& x) override { return sim_.eval(x); }

 private:
  Simulator sim_;
};

/// Answers from a recorded IO log; querying an unrecorded input throws.
class ReplayOracle : public Oracle {
 public:
  explicit ReplayOracle(const std::vector<IoPair>& log);

  std::size_t num_inputs() const override { return inputs_; }
  std::size_t num_outputs() const override { return outputs_; }

 protected:
  BitVector evaluate(const BitVector& x) override;

 private:
  std::map<BitVector, BitVector> table_;
  std::size_t inputs_ = 0;
  std::size_t outputs_ = 0;
};

}  // namespace lockeval

#endif
