#pragma once

#include <stdexcept>
#include <string>

namespace cshift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file or unparseable value.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Data that parses but violates a dataset invariant (row sums, label range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Caller-side contract violation (bad alpha, degenerate split, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Calibration demanded an order statistic beyond the sample.
class SaturationError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values produced during a numerical procedure.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace cshift
