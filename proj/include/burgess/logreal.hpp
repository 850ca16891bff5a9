#pragma once

#include <compare>
#include <string>

namespace burgess {

/// A nonnegative real held by its natural logarithm, so that magnitudes
/// like e^(e^9.594) stay representable. Zero is a distinct state.
class LogReal {
 public:
  constexpr LogReal() = default;

  static LogReal zero() { return {}; }
  static LogReal one() { return from_log(0.0); }
  /// Throws std::domain_error for NaN or +inf; -inf gives zero.
  static LogReal from_log(double log_value);
  /// Throws std::domain_error unless x is finite and x >= 0.
  static LogReal from_value(double x);

  bool is_zero() const { return zero_; }
  /// -inf for zero.
  double log() const;
  double log10() const;
  /// exp(log()); overflows to +inf for large magnitudes.
  double value() const;

  /// Throws std::domain_error for zero raised to a non-positive power.
  LogReal pow(double exponent) const;

  friend LogReal operator*(const LogReal& a, const LogReal& b);
  /// Throws std::domain_error when dividing by zero.
  friend LogReal operator/(const LogReal& a, const LogReal& b);
  friend LogReal operator+(const LogReal& a, const LogReal& b);

  LogReal& operator*=(const LogReal& o) { return *this = *this * o; }
  LogReal& operator+=(const LogReal& o) { return *this = *this + o; }

  friend std::weak_ordering operator<=>(const LogReal& a, const LogReal& b);
  friend bool operator==(const LogReal& a, const LogReal& b) {
    return (a <=> b) == 0;
  }

  std::string to_string() const;

 private:
  bool zero_ = true;
  double log_ = 0.0;
};

}  // namespace burgess
