#include "cyclew/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cyclew/asymptotics.hpp"
#include "cyclew/errors.hpp"
#include "cyclew/power_series.hpp"

namespace cyclew {

namespace {

void require_enumerable(std::int64_t n, std::int64_t cap) {
  if (n < 1) {
    throw DomainError("enumeration needs n >= 1");
  }
  if (n > cap) {
    throw CapacityError("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                        std::to_string(cap));
  }
}

void require_series(std::int64_t n) {
  if (n < 1) {
    throw DomainError("series extraction needs n >= 1");
  }
  if (n > kSeriesCap) {
    throw CapacityError("n = " + std::to_string(n) + " exceeds the series cap " +
                        std::to_string(kSeriesCap));
  }
}

// Walks partitions of n with parts in nonincreasing order, largest first part
// first. The visitor sees the parts and log of the unnormalized weight.
class PartitionWalker {
 public:
  PartitionWalker(const WeightSequence& w, std::int64_t n) : n_(n), counts_(n + 1, 0) {
    log_coef_.resize(static_cast<std::size_t>(n) + 1);
    for (std::int64_t m = 1; m <= n; ++m) {
      log_coef_[m] = w.log_theta(m) - std::log(static_cast<double>(m));
    }
    log_int_.resize(static_cast<std::size_t>(n) + 2);
    for (std::size_t c = 1; c < log_int_.size(); ++c) {
      log_int_[c] = std::log(static_cast<double>(c));
    }
  }

  template <typename Visit>
  void run(Visit&& visit) {
    parts_.clear();
    recurse(n_, n_, 0.0, visit);
  }

  CycleType current_type() const {
    std::vector<CycleType::Entry> entries;
    for (std::int64_t m : parts_) {
      if (entries.empty() || entries.back().first != m) {
        entries.emplace_back(m, 0);
      }
      ++entries.back().second;
    }
    return CycleType(std::move(entries));
  }

 private:
  template <typename Visit>
  void recurse(std::int64_t remaining, std::int64_t max_part, double log_weight, Visit& visit) {
    if (remaining == 0) {
      visit(log_weight);
      return;
    }
    for (std::int64_t p = std::min(remaining, max_part); p >= 1; --p) {
      auto& c = counts_[static_cast<std::size_t>(p)];
      ++c;
      parts_.push_back(p);
      // Adding one more part p multiplies by (theta_p / p) / C_p.
      recurse(remaining - p, p, log_weight + log_coef_[p] - log_int_[c], visit);
      parts_.pop_back();
      --c;
    }
  }

  std::int64_t n_;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> parts_;
  std::vector<double> log_coef_;
  std::vector<double> log_int_;
};

struct LogWeights {
  std::vector<double> values;
  double log_total;
};

LogWeights collect_log_weights(const WeightSequence& w, std::int64_t n) {
  PartitionWalker walker(w, n);
  LogWeights lw;
  walker.run([&](double lwt) { lw.values.push_back(lwt); });
  const double top = *std::max_element(lw.values.begin(), lw.values.end());
  double sum = 0.0;
  double comp = 0.0;
  for (double v : lw.values) {
    const double term = std::exp(v - top);
    const double next = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
  }
  lw.log_total = top + std::log(sum + comp);
  return lw;
}

}  // namespace

void for_each_cycle_type(const WeightSequence& w, std::int64_t n,
                         const std::function<void(const CycleType&, double)>& visit,
                         std::int64_t cap) {
  require_enumerable(n, cap);
  const LogWeights lw = collect_log_weights(w, n);
  PartitionWalker walker(w, n);
  std::size_t index = 0;
  walker.run([&](double) {
    visit(walker.current_type(), std::exp(lw.values[index++] - lw.log_total));
  });
}

std::vector<WeightedCycleType> enumerate_cycle_types(const WeightSequence& w, std::int64_t n,
                                                     std::int64_t cap) {
  std::vector<WeightedCycleType> out;
  for_each_cycle_type(
      w, n, [&](const CycleType& ct, double p) { out.push_back({ct, p}); }, cap);
  return out;
}

ScaledReal h_exact(const WeightSequence& w, std::int64_t n, std::int64_t cap) {
  if (n == 0) {
    return ScaledReal::from_double(1.0);
  }
  require_enumerable(n, cap);
  return ScaledReal::from_log(collect_log_weights(w, n).log_total);
}

std::int64_t evaluate_statistic(const Statistic& stat, const CycleType& ct) {
  return std::visit(
      [&](const auto& s) -> std::int64_t {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, statistic::LongestCycle>) {
          return ct.max_length();
        } else if constexpr (std::is_same_v<S, statistic::TailCount>) {
          return ct.tail_count(s.x);
        } else {
          return ct.total_cycles();
        }
      },
      stat);
}

Pmf exact_statistic_pmf(const WeightSequence& w, std::int64_t n, const Statistic& stat,
                        std::int64_t cap) {
  Pmf pmf;
  for_each_cycle_type(
      w, n, [&](const CycleType& ct, double p) { pmf[evaluate_statistic(stat, ct)] += p; }, cap);
  return pmf;
}

double mgf_series(const WeightSequence& w, std::int64_t n, double x, double s) {
  require_series(n);
  if (!(x >= 0.0)) {
    throw DomainError("mgf_series needs x >= 0");
  }
  const auto degree = static_cast<std::size_t>(n);
  const PowerSeries g = g_theta_series(w, degree);
  PowerSeries tilted = g;
  const double first = std::max(1.0, std::ceil(x));
  const double boost = std::exp(s);
  for (std::size_t k = 1; k <= degree; ++k) {
    if (static_cast<double>(k) >= first) {
      // (e^s - 1) c_k + c_k
      tilted[k] = g[k] * boost;
    }
  }
  const ScaledReal numerator = PowerSeries::exp(tilted)[degree];
  const ScaledReal h = PowerSeries::exp(g)[degree];
  return (numerator / h).to_double();
}

CorollaryCheck corollary_bound_check(const WeightSequence& w, std::int64_t n, double u, double v) {
  require_series(n);
  if (!(u >= 0.0) || !(u < v)) {
    throw DomainError("corollary_bound_check needs 0 <= u < v");
  }
  const SaddleData sd = solve_saddle(w, n);
  const double lower = cycle_threshold(sd, v);  // k >= x_n(v)
  const double upper = cycle_threshold(sd, u);  // k <  x_n(u)
  const auto degree = static_cast<std::size_t>(n);

  PowerSeries f_series(degree);
  double f_saddle_inner = 0.0;
  const auto k_first = static_cast<std::int64_t>(std::max(1.0, std::ceil(lower)));
  for (std::int64_t k = k_first; static_cast<double>(k) < upper; ++k) {
    const double log_c = w.log_theta(k) - std::log(static_cast<double>(k));
    f_saddle_inner += std::exp(log_c - static_cast<double>(k) * sd.v_n);
    if (k <= n) {
      f_series[static_cast<std::size_t>(k)] = ScaledReal::from_log(log_c);
    }
  }
  PowerSeries one_plus(degree);
  one_plus = f_series;
  one_plus[0] = ScaledReal::from_double(1.0);
  const PowerSeries f = f_series * f_series * one_plus * one_plus;
  const PowerSeries e = PowerSeries::exp(g_theta_series(w, degree));

  const double f_saddle =
      f_saddle_inner * f_saddle_inner * (1.0 + f_saddle_inner) * (1.0 + f_saddle_inner);
  CorollaryCheck out;
  out.lhs = (f * e)[degree];
  out.rhs = e[degree] * ScaledReal::from_double(2.0 * f_saddle);
  out.holds = out.lhs <= out.rhs;
  out.f_at_saddle = f_saddle;
  return out;
}

}  // namespace cyclew
