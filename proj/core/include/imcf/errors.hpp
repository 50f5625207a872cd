#pragma once

#include <stdexcept>
#include <string>

namespace imcf {

/// Argument outside the domain of a closed-form function (e.g. s < log 2 for
/// the hyperbolic warping factor).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter record that violates a precondition (m <= 0 for a horizon,
/// genus < 1, malformed grid, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not reach its stated accuracy.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The evolving hypersurface lost strict mean convexity, so 1/H is undefined.
class NonMeanConvex : public std::runtime_error {
 public:
  NonMeanConvex(double time, double min_h)
      : std::runtime_error("mean convexity lost at t=" + std::to_string(time) +
                           " (min H=" + std::to_string(min_h) + ")"),
        time_(time),
        min_h_(min_h) {}

  double time() const noexcept { return time_; }
  double min_h() const noexcept { return min_h_; }

 private:
  double time_;
  double min_h_;
};

/// The warping factor left the representable range of double.
class NumericalOverflow : public std::runtime_error {
 public:
  NumericalOverflow(double time, const std::string& what)
      : std::runtime_error(what + " at t=" + std::to_string(time)), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// A trace is too short for the requested finite-difference analysis.
class InsufficientTrace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace imcf
