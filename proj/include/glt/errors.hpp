#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glt {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Protocol or channel parameters violating their invariants.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Observed statistics that the model cannot have produced.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The four emitted states do not span the Bloch space.
class DegenerateSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Empty transmission-rate polytope.
class InfeasibleRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A ratio of yields whose denominator vanished.
class UndefinedStatistics : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Broken internal bookkeeping; signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Configuration file problem, carrying the offending line (0 if none).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace glt
