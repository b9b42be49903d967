#pragma once

#include <cstddef>
#include <vector>

#include "cyclew/scaled_real.hpp"
#include "cyclew/weights.hpp"

namespace cyclew {

/// Truncated power series sum_{k=0}^{degree} c_k t^k with nonnegative ScaledReal
/// coefficients. All products are truncated at the smaller operand degree.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t degree) : coeffs_(degree + 1) {}
  explicit PowerSeries(std::vector<ScaledReal> coeffs);

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const ScaledReal& operator[](std::size_t k) const { return coeffs_.at(k); }
  ScaledReal& operator[](std::size_t k) { return coeffs_.at(k); }

  PowerSeries& operator+=(const PowerSeries& other);
  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);

  // Value at t >= 0 as a ScaledReal.
  ScaledReal evaluate(double t) const;

  // exp(a) truncated at a.degree(); requires a[0] == 0. Computed as the product
  // prod_k exp(a_k t^k) = prod_k sum_j a_k^j t^{kj} / j!, i.e. by summing over
  // multiplicities directly rather than through the derivative recurrence.
  static PowerSeries exp(const PowerSeries& a);

 private:
  std::vector<ScaledReal> coeffs_;
};

// Coefficients theta_k / k for k = 1..degree (constant term 0).
PowerSeries g_theta_series(const WeightSequence& w, std::size_t degree);

}  // namespace cyclew
