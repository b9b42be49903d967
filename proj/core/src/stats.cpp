#include "cyclew/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cyclew/errors.hpp"
#include "cyclew/philox.hpp"

namespace cyclew {

namespace {

void require_nonempty(std::span<const ProcessSample> batch, const char* what) {
  if (batch.empty()) {
    throw ValidationError(std::string(what) + " needs a nonempty batch");
  }
}

std::string fmt_num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};

Moments moments(std::span<const std::int64_t> xs) {
  Moments m;
  const auto n = static_cast<double>(xs.size());
  for (auto x : xs) {
    m.mean += static_cast<double>(x);
  }
  m.mean /= n;
  for (auto x : xs) {
    const double d = static_cast<double>(x) - m.mean;
    m.variance += d * d;
  }
  m.variance = xs.size() > 1 ? m.variance / (n - 1.0) : 0.0;
  return m;
}

double correlation(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  const Moments ma = moments(a);
  const Moments mb = moments(b);
  double cov = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (static_cast<double>(a[i]) - ma.mean) * (static_cast<double>(b[i]) - mb.mean);
  }
  cov /= static_cast<double>(a.size()) - 1.0;
  return cov / std::sqrt(ma.variance * mb.variance);
}

nlohmann::ordered_json saddle_echo(const SaddleData& sd) {
  return {{"n", sd.n},           {"alpha", sd.alpha}, {"v_n", sd.v_n},
          {"n_star", sd.n_star}, {"ell_n", sd.ell_n}, {"cap", cycle_threshold(sd, 0.0)}};
}

}  // namespace

LongestCycles longest_cycles(const CycleType& ct, int k_longest) {
  if (k_longest < 1) {
    throw DomainError("longest_cycles needs K >= 1");
  }
  LongestCycles out;
  out.lengths.reserve(static_cast<std::size_t>(k_longest));
  // Walking lengths downward, the running tail count sum_{k >= m} C_k first
  // reaches j at m = L_j.
  const auto counts = ct.counts();
  std::int64_t tail = 0;
  int j = 1;
  for (auto it = counts.rbegin(); it != counts.rend() && j <= k_longest; ++it) {
    tail += it->second;
    while (j <= k_longest && tail >= j) {
      out.lengths.push_back(it->first);
      ++j;
    }
  }
  while (j <= k_longest) {
    out.lengths.push_back(0);
    out.padded = true;
    ++j;
  }
  return out;
}

ProcessSample::ProcessSample(const CycleType& ct) : lengths_(ct.lengths_desc()), n_(ct.n()) {}

std::int64_t ProcessSample::count_at_least(double x) const noexcept {
  // lengths_ is descending: count the prefix with L >= x.
  auto it = std::partition_point(lengths_.begin(), lengths_.end(),
                                 [x](std::int64_t len) { return static_cast<double>(len) >= x; });
  return static_cast<std::int64_t>(it - lengths_.begin());
}

std::vector<ProcessSample> to_process_samples(std::span<const CycleType> batch) {
  std::vector<ProcessSample> out;
  out.reserve(batch.size());
  for (const auto& ct : batch) {
    out.emplace_back(ct);
  }
  return out;
}

double jump_time(std::int64_t length, const SaddleData& sd) {
  if (static_cast<double>(length) >= cycle_threshold(sd, 0.0)) {
    return 0.0;
  }
  return std::exp(sd.ell_n - static_cast<double>(length) / sd.n_star);
}

PoissonPath::PoissonPath(const ProcessSample& sample, const SaddleData& sd) {
  jumps_.reserve(sample.lengths_desc().size());
  for (std::int64_t len : sample.lengths_desc()) {
    jumps_.push_back(jump_time(len, sd));
  }
}

std::int64_t PoissonPath::operator()(double y) const noexcept {
  auto it = std::upper_bound(jumps_.begin(), jumps_.end(), y);
  return static_cast<std::int64_t>(it - jumps_.begin());
}

PoissonPath process_path(const CycleType& ct, const SaddleData& sd) {
  return PoissonPath(ProcessSample(ct), sd);
}

double gumbel_cdf(double x) noexcept { return std::exp(-std::exp(-x)); }

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw ValidationError("two-sample KS needs nonempty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) {
      ++i;
    }
    while (j < b.size() && b[j] == x) {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double sum = 0.0;
  const std::size_t n = std::max(p.size(), q.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double pk = k < p.size() ? p[k] : 0.0;
    const double qk = k < q.size() ? q[k] : 0.0;
    sum += std::abs(pk - qk);
  }
  return 0.5 * sum;
}

double tv_to_poisson(std::span<const std::int64_t> data, double mean) {
  if (data.empty()) {
    throw ValidationError("tv_to_poisson needs data");
  }
  std::int64_t top = 0;
  for (auto x : data) {
    if (x < 0) {
      throw DomainError("tv_to_poisson needs nonnegative data");
    }
    top = std::max(top, x);
  }
  std::vector<double> emp(static_cast<std::size_t>(top) + 1, 0.0);
  for (auto x : data) {
    emp[static_cast<std::size_t>(x)] += 1.0;
  }
  for (auto& e : emp) {
    e /= static_cast<double>(data.size());
  }
  std::vector<double> pois(emp.size(), 0.0);
  double pk = std::exp(-mean);
  double covered = 0.0;
  for (std::size_t k = 0; k < pois.size(); ++k) {
    pois[k] = pk;
    covered += pk;
    pk *= mean / static_cast<double>(k + 1);
  }
  return total_variation(emp, pois) + 0.5 * std::max(0.0, 1.0 - covered);
}

std::vector<std::vector<double>> exponential_partial_sum_reference(std::int64_t size, int k_longest,
                                                                   std::uint64_t seed) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(k_longest),
                                       std::vector<double>(static_cast<std::size_t>(size)));
  for (std::int64_t r = 0; r < size; ++r) {
    Philox4x32 rng(substream_key(seed, static_cast<std::uint64_t>(r)));
    double partial = 0.0;
    for (int j = 0; j < k_longest; ++j) {
      partial += -std::log(rng.uniform_open());
      out[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] = -std::log(partial);
    }
  }
  return out;
}

VerificationReport verify_poisson_increments(std::span<const ProcessSample> batch,
                                             const SaddleData& sd, std::span<const double> y_grid,
                                             const StatsTolerances& tol) {
  require_nonempty(batch, "verify_poisson_increments");
  if (y_grid.empty()) {
    throw ValidationError("verify_poisson_increments needs a nonempty y grid");
  }
  double prev = 0.0;
  for (double y : y_grid) {
    if (!(y >= prev)) {
      throw ValidationError("y grid must be nonnegative and nondecreasing");
    }
    prev = y;
  }

  VerificationReport rep("poisson");
  rep.config()["saddle"] = saddle_echo(sd);
  rep.config()["y_grid"] = std::vector<double>(y_grid.begin(), y_grid.end());
  rep.config()["samples"] = batch.size();

  const std::size_t levels = y_grid.size();
  std::vector<std::vector<std::int64_t>> inc(levels, std::vector<std::int64_t>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const PoissonPath path(batch[i], sd);
    std::int64_t last = path.at_zero();
    for (std::size_t j = 0; j < levels; ++j) {
      const std::int64_t now = path(y_grid[j]);
      inc[j][i] = now - last;
      last = now;
    }
  }

  std::vector<bool> varies(levels, false);
  for (std::size_t j = 0; j < levels; ++j) {
    const double lo = j == 0 ? 0.0 : y_grid[j - 1];
    const double expected = y_grid[j] - lo;
    const Moments m = moments(inc[j]);
    const std::string tag = "increment[" + std::to_string(j + 1) + "]";
    rep.add_check(tag + ".mean", m.mean, expected, tol.increment_mean_rel * expected);
    if (expected > 0.0) {
      rep.add_check(tag + ".var_over_mean", m.variance / m.mean, 1.0, tol.dispersion);
    }
    const double tv = tv_to_poisson(inc[j], expected);
    rep.add_check(tag + ".poisson_tv", tv, 0.0, tol.poisson_tv);
    rep.set_distance(tag + ".tv", tv);
    varies[j] = m.variance > 0.0;
  }
  for (std::size_t a = 0; a < levels; ++a) {
    for (std::size_t b = a + 1; b < levels; ++b) {
      if (!varies[a] || !varies[b]) {
        continue;
      }
      rep.add_check("corr[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]",
                    correlation(inc[a], inc[b]), 0.0, tol.correlation);
    }
  }
  rep.set_count("samples", static_cast<std::int64_t>(batch.size()));
  rep.seal();
  return rep;
}

VerificationReport verify_gumbel(std::span<const ProcessSample> batch, const SaddleData& sd,
                                 int k_longest, const StatsTolerances& tol,
                                 std::uint64_t reference_seed) {
  require_nonempty(batch, "verify_gumbel");
  if (k_longest < 1) {
    throw ValidationError("verify_gumbel needs K >= 1");
  }
  VerificationReport rep("gumbel");
  rep.config()["saddle"] = saddle_echo(sd);
  rep.config()["k_longest"] = k_longest;
  rep.config()["samples"] = batch.size();
  rep.config()["reference_seed"] = reference_seed;

  const double center = sd.n_star * sd.ell_n;
  std::vector<std::vector<double>> rescaled(static_cast<std::size_t>(k_longest));
  std::int64_t order_violations = 0;
  std::int64_t padded = 0;
  for (const auto& s : batch) {
    const auto lengths = s.lengths_desc();
    double last_jump = -1.0;
    for (int j = 0; j < k_longest; ++j) {
      const std::int64_t len =
          static_cast<std::size_t>(j) < lengths.size() ? lengths[static_cast<std::size_t>(j)] : 0;
      if (len == 0) {
        ++padded;
      } else {
        const double y = jump_time(len, sd);
        if (y < last_jump) {
          ++order_violations;
        }
        last_jump = y;
      }
      rescaled[static_cast<std::size_t>(j)].push_back((static_cast<double>(len) - center) /
                                                      sd.n_star);
    }
  }

  const double ks1 = ks_one_sample(rescaled[0], gumbel_cdf);
  rep.add_check("gumbel_ks_L1", ks1, 0.0, tol.gumbel_ks);
  rep.set_distance("ks_gumbel_L1", ks1);

  const auto reference = exponential_partial_sum_reference(
      static_cast<std::int64_t>(batch.size()), k_longest, reference_seed);
  auto& ref_means = rep.details()["reference_means"] = nlohmann::ordered_json::array();
  for (int j = 0; j < k_longest; ++j) {
    const auto& ref = reference[static_cast<std::size_t>(j)];
    const double ks = ks_two_sample(rescaled[static_cast<std::size_t>(j)], ref);
    const std::string tag = "L" + std::to_string(j + 1);
    rep.add_check("joint_ks_" + tag, ks, 0.0, tol.joint_ks);
    rep.set_distance("ks_reference_" + tag, ks);
    double mean = 0.0;
    for (double x : ref) {
      mean += x;
    }
    ref_means.push_back(mean / static_cast<double>(ref.size()));
  }
  rep.add_check("jump_order_violations", static_cast<double>(order_violations), 0.0, 0.0);
  rep.set_count("samples", static_cast<std::int64_t>(batch.size()));
  rep.set_count("padded_entries", padded);
  rep.seal();
  return rep;
}

VerificationReport cumulative_profile(std::span<const ProcessSample> batch,
                                      const WeightSequence& w, const SaddleData& sd,
                                      std::span<const double> x_grid, const StatsTolerances& tol) {
  require_nonempty(batch, "cumulative_profile");
  VerificationReport rep("profile");
  rep.config()["saddle"] = saddle_echo(sd);
  rep.config()["x_grid"] = std::vector<double>(x_grid.begin(), x_grid.end());
  rep.config()["samples"] = batch.size();

  const double scale = std::pow(static_cast<double>(sd.n), 1.0 / (1.0 + sd.alpha));
  for (double x : x_grid) {
    if (!(x > 0.0)) {
      throw ValidationError("profile grid needs positive x");
    }
    const double threshold = x * scale;
    double observed = 0.0;
    for (const auto& s : batch) {
      observed += static_cast<double>(s.count_at_least(threshold));
    }
    observed /= static_cast<double>(batch.size());
    const double predicted = expected_tail_count(w, sd, threshold);
    const std::string tag = "profile[x=" + fmt_num(x) + "]";
    rep.add_check(tag, observed, predicted, tol.profile_rel * predicted + tol.profile_abs);
    rep.set_distance(tag + ".rel_dev",
                     predicted > 0.0 ? std::abs(observed - predicted) / predicted : observed);
  }
  rep.set_count("samples", static_cast<std::int64_t>(batch.size()));
  rep.seal();
  return rep;
}

VerificationReport bn_event_frequency(std::span<const ProcessSample> batch,
                                      const WeightSequence& w, const SaddleData& sd,
                                      const StatsTolerances& tol) {
  require_nonempty(batch, "bn_event_frequency");
  VerificationReport rep("bn");
  rep.config()["saddle"] = saddle_echo(sd);
  rep.config()["samples"] = batch.size();

  const double cap = cycle_threshold(sd, 0.0);
  std::int64_t events = 0;
  for (const auto& s : batch) {
    const auto lengths = s.lengths_desc();
    if (!lengths.empty() && static_cast<double>(lengths.front()) > cap) {
      ++events;
    }
  }
  const double freq = static_cast<double>(events) / static_cast<double>(batch.size());
  // Markov bound 2 sum_{k > cap} (theta_k / k) e^{-k v_n}.
  const double bound = 2.0 * expected_tail_count(w, sd, std::floor(cap) + 1.0);
  rep.add_check("bn_frequency", freq, 0.0, tol.bn_bound_factor * bound);
  rep.add_check("bn_frequency_abs", freq, 0.0, tol.bn_max_frequency);
  rep.set_distance("markov_bound", bound);
  rep.set_distance("frequency", freq);
  rep.set_count("events", events);
  rep.set_count("samples", static_cast<std::int64_t>(batch.size()));
  rep.seal();
  return rep;
}

}  // namespace cyclew
