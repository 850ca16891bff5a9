#include "burgess/logreal.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "burgess/constants.hpp"

namespace burgess {

LogReal LogReal::from_log(double log_value) {
  if (std::isnan(log_value) || log_value == INFINITY)
    throw std::domain_error("LogReal: log value must be finite or -inf");
  LogReal r;
  if (log_value == -INFINITY) return r;
  r.zero_ = false;
  r.log_ = log_value;
  return r;
}

LogReal LogReal::from_value(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("LogReal: value must be finite and nonnegative");
  if (x == 0.0) return zero();
  return from_log(std::log(x));
}

double LogReal::log() const { return zero_ ? -INFINITY : log_; }

double LogReal::log10() const {
  return zero_ ? -INFINITY
               : log_ / static_cast<double>(constants::kLn10);
}

double LogReal::value() const { return zero_ ? 0.0 : std::exp(log_); }

LogReal LogReal::pow(double exponent) const {
  if (zero_) {
    if (!(exponent > 0.0))
      throw std::domain_error("LogReal: zero to a non-positive power");
    return zero();
  }
  return from_log(log_ * exponent);
}

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) return LogReal::zero();
  return LogReal::from_log(a.log_ + b.log_);
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.zero_) throw std::domain_error("LogReal: division by zero");
  if (a.zero_) return LogReal::zero();
  return LogReal::from_log(a.log_ - b.log_);
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.zero_) return b;
  if (b.zero_) return a;
  const double hi = a.log_ >= b.log_ ? a.log_ : b.log_;
  const double lo = a.log_ >= b.log_ ? b.log_ : a.log_;
  return LogReal::from_log(hi + std::log1p(std::exp(lo - hi)));
}

std::weak_ordering operator<=>(const LogReal& a, const LogReal& b) {
  if (a.zero_ || b.zero_) {
    if (a.zero_ && b.zero_) return std::weak_ordering::equivalent;
    return a.zero_ ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  if (a.log_ < b.log_) return std::weak_ordering::less;
  if (a.log_ > b.log_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string LogReal::to_string() const {
  if (zero_) return "0";
  const double l10 = log10();
  const double exponent = std::floor(l10);
  return fmt::format("{:.6f}e{:.0f}", std::pow(10.0, l10 - exponent), exponent);
}

}  // namespace burgess
