#pragma once

#include <stdexcept>
#include <string>

namespace beamgram {

// Base for every error raised by the library. The CLI maps InvalidArgument
// to a configuration error and NumericError to a numeric failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Raised when successive refinements fail to agree within tolerance. Carries
// the best available estimate so callers can still report it.
class NoConvergence : public NumericError {
 public:
  NoConvergence(const std::string& what, double best_real, double best_imag, double error_bound)
      : NumericError(what), best_real_(best_real), best_imag_(best_imag), error_bound_(error_bound) {}

  double best_real() const noexcept { return best_real_; }
  double best_imag() const noexcept { return best_imag_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_real_;
  double best_imag_;
  double error_bound_;
};

class GridMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace beamgram
