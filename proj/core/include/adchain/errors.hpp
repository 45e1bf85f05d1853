#ifndef ADCHAIN_ERRORS_HPP
#define ADCHAIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adchain {

// Invalid argument or configuration value. The CLI maps this to exit code 2.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (eigensolver breakdown, non-finite data, bracket
// exhaustion). The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Requested entropy exceeds the maximal N*ln(2) of the spin system.
class UnreachableEntropyError : public ParameterError {
public:
  using ParameterError::ParameterError;
};

// Requested entropy lies at or below the residual entropy ln(g0) set by the
// ground-state degeneracy g0; the isentropic condition has no solution.
class EntropyFloorError : public std::runtime_error {
public:
  EntropyFloorError(double target, double floor)
      : std::runtime_error("target entropy " + std::to_string(target) +
                           " is at or below the entropy floor " + std::to_string(floor)),
        target_(target), floor_(floor) {}

  double target() const { return target_; }
  double floor() const { return floor_; }

private:
  double target_;
  double floor_;
};

}  // namespace adchain

#endif
