#pragma once

#include <cmath>
#include <stdexcept>

namespace gsd {

// Tolerance used when deciding whether a real-valued mean parameter sits on
// an integer (stabilises floor/ceil evaluation during dense grid scans).
inline constexpr double kIntegerTol = 1e-12;

// Thrown when a derivative is requested at a kink of the log-likelihood
// surface (integer psi, psi on the scale boundary, or rho exactly at the
// regime threshold).
class non_differentiable_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by the CSV reader; message carries the offending line number.
class csv_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Snaps psi to the nearest integer when it is within kIntegerTol of one.
inline double snap_to_integer(double psi) {
  const double nearest = std::round(psi);
  return std::abs(psi - nearest) <= kIntegerTol ? nearest : psi;
}

}  // namespace detail
}  // namespace gsd
