#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "cyclew/cycle_type.hpp"
#include "cyclew/htable.hpp"
#include "cyclew/philox.hpp"

namespace cyclew {

struct SamplerConfig {
  std::int64_t n = 0;
  std::int64_t num_samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;

  // Throws ValidationError / CapacityError.
  void validate(const HTable& table) const;
};

struct SamplerCounters {
  std::int64_t samples = 0;
  std::int64_t scanned_terms = 0;   // p(k | m) evaluations
  std::int64_t numeric_incidents = 0;  // scan exhausted before reaching u
};

/// Exact sampler for the cycle type under the weighted measure.
///
/// The cycle through a fixed element of an m-set has length k with probability
///   p(k | m) = theta_k h_{m-k} / (m h_m),
/// which sums to one by the h recurrence. Repeating on the remaining m - k
/// elements yields the full cycle type. Each step scans k upward from 1 against a
/// single uniform, so the total scan length per sample equals n.
class CycleTypeSampler {
 public:
  explicit CycleTypeSampler(const HTable& table);

  std::int64_t n_max() const noexcept { return n_max_; }

  CycleType sample(std::int64_t n, Philox4x32& rng) const;
  CycleType sample(std::int64_t n, Philox4x32& rng, SamplerCounters& counters) const;

  // Full scan of p(. | m); for normalization checks.
  double step_mass(std::int64_t m) const;

 private:
  std::int64_t n_max_;
  std::vector<double> log_h_;
  std::vector<double> log_theta_;
  std::vector<double> log_int_;
};

CycleType sample_cycle_type(const HTable& table, std::int64_t n, Philox4x32& rng);

/// Sample i is drawn from Philox4x32(substream_key(seed, i)), so results depend on
/// (seed, i) only. Samples are passed to `sink` in index order on the calling
/// thread; generation runs on cfg.workers threads.
void sample_batch(const HTable& table, const SamplerConfig& cfg,
                  const std::function<void(std::int64_t, const CycleType&)>& sink,
                  SamplerCounters* counters = nullptr);

std::vector<CycleType> sample_batch(const HTable& table, const SamplerConfig& cfg,
                                    SamplerCounters* counters = nullptr);

// {"i": index, "cycles": [[m, C_m], ...]} followed by a newline.
void write_sample_line(std::ostream& os, std::int64_t index, const CycleType& ct);

}  // namespace cyclew
