#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace moving_well {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Raised when a query time lies at or beyond the instant the well width
/// reaches zero. `horizon()` is that instant (may be negative for expanding
/// wells queried before their past collapse).
class HorizonExceeded : public Error {
 public:
  HorizonExceeded(double t, double horizon)
      : Error("time " + std::to_string(t) + " is outside the validity window (width vanishes at t*=" +
              std::to_string(horizon) + ")"),
        t_(t),
        horizon_(horizon) {}

  double time() const noexcept { return t_; }
  double horizon() const noexcept { return horizon_; }

 private:
  double t_;
  double horizon_;
};

/// Adaptive quadrature ran out of panels; carries the best available estimate.
/// Real-valued integrals report a zero imaginary part.
class QuadratureBudgetExceeded : public Error {
 public:
  QuadratureBudgetExceeded(std::complex<double> best, double error_estimate)
      : Error("adaptive quadrature exceeded its panel budget"), best_(best), error_(error_estimate) {}

  std::complex<double> best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return error_; }

 private:
  std::complex<double> best_;
  double error_;
};

/// File could not be opened, read, or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class InvalidProbe : public Error {
 public:
  using Error::Error;
};

class AuditFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace moving_well
