#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclew/asymptotics.hpp"
#include "cyclew/cycle_type.hpp"
#include "cyclew/report.hpp"
#include "cyclew/weights.hpp"

namespace cyclew {

struct LongestCycles {
  std::vector<std::int64_t> lengths;  // L_1 >= ... >= L_K, 0 past the last cycle
  bool padded = false;
};

/// L_j = max{m : sum_{k >= m} C_k >= j}, j = 1..K.
LongestCycles longest_cycles(const CycleType& ct, int k_longest);

/// Cycle lengths of one sampled permutation, largest first, with multiplicity.
class ProcessSample {
 public:
  explicit ProcessSample(const CycleType& ct);

  std::int64_t n() const noexcept { return n_; }
  std::span<const std::int64_t> lengths_desc() const noexcept { return lengths_; }
  // Number of cycles with length >= x (real threshold).
  std::int64_t count_at_least(double x) const noexcept;

 private:
  std::vector<std::int64_t> lengths_;
  std::int64_t n_;
};

std::vector<ProcessSample> to_process_samples(std::span<const CycleType> batch);

/// Counting process y -> P_y = #{cycles with length >= x_n(y)} of one sample,
/// stored by its jump times y_j = exp(ell_n - L_j / n*). Cycles at or above the
/// cap 2 n* ell_n are counted from y = 0 on (jump time 0).
class PoissonPath {
 public:
  PoissonPath(const ProcessSample& sample, const SaddleData& sd);

  // Nondecreasing; one entry per cycle.
  std::span<const double> jump_times() const noexcept { return jumps_; }
  // Right-continuous step function #{j : y_j <= y}.
  std::int64_t operator()(double y) const noexcept;
  std::int64_t at_zero() const noexcept { return (*this)(0.0); }

 private:
  std::vector<double> jumps_;
};

PoissonPath process_path(const CycleType& ct, const SaddleData& sd);

// Jump time of a cycle of length L; 0 at or beyond the cap.
double jump_time(std::int64_t length, const SaddleData& sd);

struct StatsTolerances {
  double increment_mean_rel = 0.15;
  double dispersion = 0.2;          // |var/mean - 1|
  double poisson_tv = 0.08;
  double correlation = 0.1;
  double gumbel_ks = 0.1;
  double joint_ks = 0.12;
  double profile_rel = 0.10;
  double profile_abs = 1e-3;
  double bn_bound_factor = 3.0;
  double bn_max_frequency = 0.05;
};

inline constexpr std::uint64_t kDefaultReferenceSeed = 0x6A09E667F3BCC908ULL;

VerificationReport verify_poisson_increments(std::span<const ProcessSample> batch,
                                             const SaddleData& sd, std::span<const double> y_grid,
                                             const StatsTolerances& tol = {});

VerificationReport verify_gumbel(std::span<const ProcessSample> batch, const SaddleData& sd,
                                 int k_longest, const StatsTolerances& tol = {},
                                 std::uint64_t reference_seed = kDefaultReferenceSeed);

VerificationReport cumulative_profile(std::span<const ProcessSample> batch,
                                      const WeightSequence& w, const SaddleData& sd,
                                      std::span<const double> x_grid,
                                      const StatsTolerances& tol = {});

VerificationReport bn_event_frequency(std::span<const ProcessSample> batch,
                                      const WeightSequence& w, const SaddleData& sd,
                                      const StatsTolerances& tol = {});

// exp(-exp(-x))
double gumbel_cdf(double x) noexcept;

// sup_x |F_emp(x) - cdf(x)| over the sample points (both one-sided limits).
template <typename Cdf>
double ks_one_sample(std::vector<double> sample, Cdf&& cdf);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

// 1/2 sum |p - q| over the union of supports.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

// Empirical pmf of nonnegative integer data against Poisson(mean), including the
// Poisson tail past the largest observation.
double tv_to_poisson(std::span<const std::int64_t> data, double mean);

// -log(E_1 + ... + E_j), j = 1..K, per reference draw; result[j-1][r].
std::vector<std::vector<double>> exponential_partial_sum_reference(std::int64_t size, int k_longest,
                                                                   std::uint64_t seed);

}  // namespace cyclew

#include "cyclew/stats_inl.hpp"
