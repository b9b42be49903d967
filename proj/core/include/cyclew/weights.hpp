#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclew {

enum class WeightFamily : std::uint8_t { Polynomial = 0, Ewens = 1, Table = 2 };

/// Cycle weights theta_k (k >= 1) for the multiplicative measure on permutations.
///
/// Polynomial(alpha): theta_k = k^alpha, alpha > 0.
/// Ewens(vartheta):   theta_k = vartheta.
/// Table(values):     theta_k = values[k-1] for k <= K0; beyond K0 the sequence is
///                    extrapolated as theta_K0 * (k / K0)^alpha_fit with alpha_fit
///                    fitted from the last two entries.
class WeightSequence {
 public:
  static WeightSequence polynomial(double alpha);
  static WeightSequence ewens(double vartheta);
  static WeightSequence table(std::vector<double> values);

  WeightFamily family() const noexcept { return family_; }

  // alpha for Polynomial, vartheta for Ewens, alpha_fit for Table.
  double parameter() const noexcept { return parameter_; }

  // Polynomial growth exponent of theta_k: alpha, 0 for Ewens, alpha_fit for Table.
  double growth_exponent() const noexcept;

  // Number of explicit entries for Table weights, 0 otherwise.
  std::int64_t table_size() const noexcept { return static_cast<std::int64_t>(table_.size()); }

  double theta(std::int64_t k) const;
  double log_theta(std::int64_t k) const;

  std::string describe() const;

 private:
  WeightSequence(WeightFamily family, double parameter, std::vector<double> table)
      : family_(family), parameter_(parameter), table_(std::move(table)) {}

  WeightFamily family_;
  double parameter_;
  std::vector<double> table_;
};

struct ThetaValue {
  double value;
  double log_value;  // -inf iff value == 0
};

ThetaValue theta_eval(const WeightSequence& w, std::int64_t k);

struct GThetaPartial {
  double value;
  std::int64_t truncation_k;
  double tail_bound;
};

/// Truncated g_Theta(t) = sum_{k>=1} (theta_k / k) t^k, 0 <= t < 1.
///
/// Stops at the first K with the geometric remainder bound
///   term_K * q / (1 - q) <= eps,  q = t * max(1, (1 + 1/K)^a),
/// where a = growth_exponent() - 1 bounds the ratio of consecutive coefficients
/// theta_{k+1}(k) / (theta_k (k+1)) beyond K. Table weights only certify past the
/// table end.
GThetaPartial g_theta_partial(const WeightSequence& w, double t, double eps);

}  // namespace cyclew
