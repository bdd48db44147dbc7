#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fuzzprob {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or universes of two operands do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the domain an operation accepts (grade outside [0,1],
/// malformed membership parameters, n = 0 samples, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Membership evidence is empty: all grades zero where a positive mass is needed.
class EvidenceError : public Error {
 public:
  using Error::Error;
};

/// A relation row is all zero under ZeroRowPolicy::Error.
class ZeroRowError : public Error {
 public:
  ZeroRowError(std::size_t row)
      : Error("zero row " + std::to_string(row) + " in relation"), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Closed-loop run aborted because defuzzification found no active rule.
class RunAborted : public Error {
 public:
  RunAborted(std::size_t step, const std::string& why)
      : Error("run aborted at step " + std::to_string(step) + ": " + why), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace fuzzprob
