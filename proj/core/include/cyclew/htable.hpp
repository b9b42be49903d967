#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "cyclew/scaled_real.hpp"
#include "cyclew/weights.hpp"

namespace cyclew {

/// Normalization constants h_0..h_{n_max} of the weighted permutation measure,
/// i.e. the coefficients of exp(g_Theta(t)). Immutable once built.
class HTable {
 public:
  HTable(WeightSequence weight, std::vector<ScaledReal> h);

  const WeightSequence& weight() const noexcept { return weight_; }
  std::int64_t n_max() const noexcept { return static_cast<std::int64_t>(h_.size()) - 1; }
  const ScaledReal& h(std::int64_t n) const;
  std::span<const ScaledReal> values() const noexcept { return h_; }

  // Natural logs of h_0..h_{n_max}.
  std::vector<double> log_values() const;

  // |n h_n - sum_{k=1}^n theta_k h_{n-k}| / (n h_n), summed independently of the
  // build path (plain ScaledReal accumulation).
  double recurrence_residual(std::int64_t n) const;

  // Binary cache, little-endian:
  //   "CWHT" | u32 version=1 | u8 family | f64 parameter | u64 n_max |
  //   (n_max + 1) x (f64 mantissa, i64 exponent)
  // Table weights cannot be cached (ValidationError).
  void write(std::ostream& os) const;
  void save(const std::filesystem::path& path) const;

  // Validates magic, version, h_0 = 1 and the recurrence residual on a seeded
  // random sample of about sample_fraction of the indices (n_max always included).
  static HTable read(std::istream& is, double sample_fraction = 0.01);
  static HTable load(const std::filesystem::path& path, double sample_fraction = 0.01);

  static constexpr std::uint32_t kFormatVersion = 1;
  static constexpr double kResidualTolerance = 1e-10;

 private:
  WeightSequence weight_;
  std::vector<ScaledReal> h_;
};

/// h_n from n h_n = sum_{k=1}^{n} theta_k h_{n-k}, h_0 = 1. O(n_max^2).
HTable build_h_table(const WeightSequence& w, std::int64_t n_max);

}  // namespace cyclew
