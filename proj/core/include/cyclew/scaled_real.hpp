#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>

namespace cyclew {

/// Nonnegative real stored as mantissa * 2^exponent with mantissa in [1, 2), or
/// exactly zero (mantissa 0, exponent 0). Covers the range of h_n and series
/// coefficients that overflow a double long before n = 10^4.
class ScaledReal {
 public:
  constexpr ScaledReal() noexcept = default;

  // Throws DomainError for negative or non-finite input.
  static ScaledReal from_double(double x);
  // exp(log_value); -inf maps to zero.
  static ScaledReal from_log(double log_value);
  // Trusts the caller: mantissa must already be in [1, 2) or be 0.
  static ScaledReal from_parts(double mantissa, std::int64_t exponent);

  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return mantissa_ == 0.0; }

  // Natural log; -inf for zero.
  double log() const noexcept;
  // May overflow to +inf or underflow to 0.
  double to_double() const noexcept;

  ScaledReal& operator+=(const ScaledReal& other) noexcept;
  ScaledReal& operator*=(const ScaledReal& other) noexcept;
  ScaledReal& operator*=(double factor);
  ScaledReal& operator/=(const ScaledReal& other);
  ScaledReal& operator/=(double divisor);

  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) noexcept { return a += b; }
  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) noexcept { return a *= b; }
  friend ScaledReal operator*(ScaledReal a, double b) { return a *= b; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator/(ScaledReal a, double b) { return a /= b; }

  friend std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) noexcept;
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) noexcept {
    return a.mantissa_ == b.mantissa_ && a.exponent_ == b.exponent_;
  }

 private:
  constexpr ScaledReal(double m, std::int64_t e) noexcept : mantissa_(m), exponent_(e) {}
  // Renormalizes an arbitrary finite nonnegative (m, e) pair.
  static ScaledReal normalize(double m, std::int64_t e) noexcept;

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

// |a - b| / max(a, b); 0 when both are zero.
double relative_difference(const ScaledReal& a, const ScaledReal& b) noexcept;

std::ostream& operator<<(std::ostream& os, const ScaledReal& x);

}  // namespace cyclew
