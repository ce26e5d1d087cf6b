#ifndef LOCKEVAL_ERROR_HPP
#define LOCKEVAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lockeval {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed BENCH / DIMACS / config / CSV text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structural problem with a circuit: undefined net, cycle, bad arity...
class CircuitError : public Error {
 public:
  using Error::Error;
};

/// A locking transform cannot be applied (not enough sites, bad parameters).
class LockError : public Error {
 public:
  using Error::Error;
};

/// Attack setup failure or an internally inconsistent attack state.
class AttackError : public Error {
 public:
  using Error::Error;
};

/// Metric estimator refused or failed (EXACT too large, solver timeout).
class MetricError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration is inconsistent (missing file, empty axis...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lockeval

#endif
