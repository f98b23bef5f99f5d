#pragma once

#include <stdexcept>
#include <string>

namespace eloc {

/// Bad input: malformed graph, invalid ids, parameters out of range.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DisconnectedGraphError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Power iteration ran out of iterations; carries the last estimate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double last_estimate, int iterations)
      : NumericalError(what), last_estimate_(last_estimate), iterations_(iterations) {}

  double last_estimate() const { return last_estimate_; }
  int iterations() const { return iterations_; }

 private:
  double last_estimate_;
  int iterations_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File parse failure with a 1-based line number.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& what, std::size_t line)
      : InvalidArgument("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace eloc
