#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpc {

// Invalid argument to any library operation (range, dimension, constraint).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A decoded state that is not a computational basis vector. Carries the
// full probability vector so callers can see how far off it was.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(const std::string& what, std::vector<double> probabilities,
                 double max_probability)
      : std::runtime_error(what),
        probabilities_(std::move(probabilities)),
        max_probability_(max_probability) {}

  const std::vector<double>& probabilities() const noexcept { return probabilities_; }
  double max_probability() const noexcept { return max_probability_; }

 private:
  std::vector<double> probabilities_;
  double max_probability_;
};

// Key distribution aborted because the estimated QBER tripped the threshold.
class QkdAbortError : public std::runtime_error {
 public:
  QkdAbortError(const std::string& what, double qber)
      : std::runtime_error(what), qber_(qber) {}
  double qber() const noexcept { return qber_; }

 private:
  double qber_;
};

// Malformed frame, key file or other serialized input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Socket-level failure on the simulated channel.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qpc
