#include "cyclew/scaled_real.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "cyclew/errors.hpp"

namespace cyclew {

namespace {
constexpr double kLn2 = 0.69314718055994530942;
// Beyond this exponent gap the smaller addend is below double resolution.
constexpr std::int64_t kAlignLimit = 64;
}  // namespace

ScaledReal ScaledReal::normalize(double m, std::int64_t e) noexcept {
  if (m == 0.0) {
    return {};
  }
  int shift = 0;
  const double f = std::frexp(m, &shift);  // f in [0.5, 1)
  return {2.0 * f, e + shift - 1};
}

ScaledReal ScaledReal::from_double(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("ScaledReal holds finite nonnegative values only");
  }
  return normalize(x, 0);
}

ScaledReal ScaledReal::from_log(double log_value) {
  if (std::isnan(log_value) || log_value == std::numeric_limits<double>::infinity()) {
    throw DomainError("ScaledReal::from_log needs a finite log or -inf");
  }
  if (log_value == -std::numeric_limits<double>::infinity()) {
    return {};
  }
  const double e = std::floor(log_value / kLn2);
  const double rest = log_value - e * kLn2;
  return normalize(std::exp(rest), static_cast<std::int64_t>(e));
}

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0) {
    return {};
  }
  if (!(mantissa >= 1.0 && mantissa < 2.0)) {
    return normalize(mantissa, exponent);
  }
  return {mantissa, exponent};
}

double ScaledReal::log() const noexcept {
  if (is_zero()) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(mantissa_) + static_cast<double>(exponent_) * kLn2;
}

double ScaledReal::to_double() const noexcept {
  if (is_zero()) {
    return 0.0;
  }
  if (exponent_ > std::numeric_limits<double>::max_exponent) {
    return std::numeric_limits<double>::infinity();
  }
  if (exponent_ < std::numeric_limits<double>::min_exponent - 60) {
    return 0.0;
  }
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& other) noexcept {
  if (other.is_zero()) {
    return *this;
  }
  if (is_zero()) {
    *this = other;
    return *this;
  }
  const std::int64_t gap = exponent_ - other.exponent_;
  if (gap >= kAlignLimit) {
    return *this;
  }
  if (gap <= -kAlignLimit) {
    *this = other;
    return *this;
  }
  if (gap >= 0) {
    *this = normalize(mantissa_ + std::ldexp(other.mantissa_, static_cast<int>(-gap)), exponent_);
  } else {
    *this = normalize(other.mantissa_ + std::ldexp(mantissa_, static_cast<int>(gap)),
                      other.exponent_);
  }
  return *this;
}

ScaledReal& ScaledReal::operator*=(const ScaledReal& other) noexcept {
  if (is_zero() || other.is_zero()) {
    *this = {};
    return *this;
  }
  *this = normalize(mantissa_ * other.mantissa_, exponent_ + other.exponent_);
  return *this;
}

ScaledReal& ScaledReal::operator*=(double factor) {
  return *this *= from_double(factor);
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& other) {
  if (other.is_zero()) {
    throw DomainError("ScaledReal division by zero");
  }
  if (is_zero()) {
    return *this;
  }
  *this = normalize(mantissa_ / other.mantissa_, exponent_ - other.exponent_);
  return *this;
}

ScaledReal& ScaledReal::operator/=(double divisor) {
  return *this /= from_double(divisor);
}

std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) noexcept {
  if (a.is_zero() || b.is_zero()) {
    return a.mantissa_ <=> b.mantissa_;
  }
  if (a.exponent_ != b.exponent_) {
    return a.exponent_ <=> b.exponent_;
  }
  return a.mantissa_ <=> b.mantissa_;
}

double relative_difference(const ScaledReal& a, const ScaledReal& b) noexcept {
  if (a.is_zero() && b.is_zero()) {
    return 0.0;
  }
  const ScaledReal& big = a < b ? b : a;
  const ScaledReal& small = a < b ? a : b;
  if (small.is_zero()) {
    return 1.0;
  }
  const std::int64_t gap = small.exponent() - big.exponent();
  if (gap < -kAlignLimit) {
    return 1.0;
  }
  const double ratio = std::ldexp(small.mantissa(), static_cast<int>(gap)) / big.mantissa();
  return 1.0 - ratio;
}

std::ostream& operator<<(std::ostream& os, const ScaledReal& x) {
  return os << x.mantissa() << "*2^" << x.exponent();
}

}  // namespace cyclew
