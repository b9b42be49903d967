#include "cyclew/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "cyclew/errors.hpp"

namespace cyclew {

namespace {
constexpr std::int64_t kBlockSize = 4096;
}

void SamplerConfig::validate(const HTable& table) const {
  if (n < 1) {
    throw ValidationError("sampler needs n >= 1");
  }
  if (num_samples < 1) {
    throw ValidationError("sampler needs num_samples >= 1");
  }
  if (workers < 1) {
    throw ValidationError("sampler needs workers >= 1");
  }
  if (n > table.n_max()) {
    throw CapacityError("n = " + std::to_string(n) + " exceeds HTable n_max = " +
                        std::to_string(table.n_max()));
  }
}

CycleTypeSampler::CycleTypeSampler(const HTable& table)
    : n_max_(table.n_max()), log_h_(table.log_values()) {
  const auto size = static_cast<std::size_t>(n_max_) + 1;
  log_theta_.resize(size, -std::numeric_limits<double>::infinity());
  log_int_.resize(size, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 1; k < size; ++k) {
    log_theta_[k] = table.weight().log_theta(static_cast<std::int64_t>(k));
    log_int_[k] = std::log(static_cast<double>(k));
  }
}

CycleType CycleTypeSampler::sample(std::int64_t n, Philox4x32& rng) const {
  SamplerCounters unused;
  return sample(n, rng, unused);
}

CycleType CycleTypeSampler::sample(std::int64_t n, Philox4x32& rng,
                                   SamplerCounters& counters) const {
  if (n < 1 || n > n_max_) {
    throw CapacityError("sample size n = " + std::to_string(n) + " outside [1, " +
                        std::to_string(n_max_) + "]");
  }
  std::vector<std::int64_t> lengths;
  std::int64_t m = n;
  while (m > 0) {
    const double u = rng.uniform_open_closed();
    const double base = log_int_[static_cast<std::size_t>(m)] + log_h_[static_cast<std::size_t>(m)];
    double cdf = 0.0;
    double comp = 0.0;
    std::int64_t chosen = 0;
    for (std::int64_t k = 1; k <= m; ++k) {
      const double p = std::exp(log_theta_[static_cast<std::size_t>(k)] +
                                log_h_[static_cast<std::size_t>(m - k)] - base);
      ++counters.scanned_terms;
      const double next = cdf + p;
      comp += (cdf >= p) ? (cdf - next) + p : (p - next) + cdf;
      cdf = next;
      if (cdf + comp >= u) {
        chosen = k;
        break;
      }
    }
    if (chosen == 0) {
      // Round-off left the full scan short of u.
      chosen = m;
      ++counters.numeric_incidents;
    }
    lengths.push_back(chosen);
    m -= chosen;
  }
  ++counters.samples;
  return CycleType::from_lengths(lengths);
}

double CycleTypeSampler::step_mass(std::int64_t m) const {
  if (m < 1 || m > n_max_) {
    throw CapacityError("step_mass index out of range");
  }
  const double base = log_int_[static_cast<std::size_t>(m)] + log_h_[static_cast<std::size_t>(m)];
  double sum = 0.0;
  for (std::int64_t k = 1; k <= m; ++k) {
    sum += std::exp(log_theta_[static_cast<std::size_t>(k)] +
                    log_h_[static_cast<std::size_t>(m - k)] - base);
  }
  return sum;
}

CycleType sample_cycle_type(const HTable& table, std::int64_t n, Philox4x32& rng) {
  return CycleTypeSampler(table).sample(n, rng);
}

void sample_batch(const HTable& table, const SamplerConfig& cfg,
                  const std::function<void(std::int64_t, const CycleType&)>& sink,
                  SamplerCounters* counters) {
  cfg.validate(table);
  const CycleTypeSampler sampler(table);
  const int workers = cfg.workers;
  std::vector<SamplerCounters> per_worker(static_cast<std::size_t>(workers));
  std::vector<CycleType> block;

  for (std::int64_t start = 0; start < cfg.num_samples; start += kBlockSize) {
    const std::int64_t count = std::min(kBlockSize, cfg.num_samples - start);
    block.assign(static_cast<std::size_t>(count), CycleType{});

    auto work = [&](int worker) {
      for (std::int64_t j = worker; j < count; j += workers) {
        Philox4x32 rng(substream_key(cfg.seed, static_cast<std::uint64_t>(start + j)));
        block[static_cast<std::size_t>(j)] =
            sampler.sample(cfg.n, rng, per_worker[static_cast<std::size_t>(worker)]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> threads;
      threads.reserve(static_cast<std::size_t>(workers));
      for (int t = 0; t < workers; ++t) {
        threads.emplace_back(work, t);
      }
    }
    for (std::int64_t j = 0; j < count; ++j) {
      sink(start + j, block[static_cast<std::size_t>(j)]);
    }
  }

  if (counters != nullptr) {
    for (const auto& c : per_worker) {
      counters->samples += c.samples;
      counters->scanned_terms += c.scanned_terms;
      counters->numeric_incidents += c.numeric_incidents;
    }
  }
}

std::vector<CycleType> sample_batch(const HTable& table, const SamplerConfig& cfg,
                                    SamplerCounters* counters) {
  std::vector<CycleType> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(cfg.num_samples, 0)));
  sample_batch(
      table, cfg, [&](std::int64_t, const CycleType& ct) { out.push_back(ct); }, counters);
  return out;
}

void write_sample_line(std::ostream& os, std::int64_t index, const CycleType& ct) {
  os << "{\"i\": " << index << ", \"cycles\": [";
  bool first = true;
  for (const auto& [m, c] : ct.counts()) {
    os << (first ? "" : ", ") << '[' << m << ", " << c << ']';
    first = false;
  }
  os << "]}\n";
}

}  // namespace cyclew
