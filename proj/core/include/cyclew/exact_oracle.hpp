#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <variant>
#include <vector>

#include "cyclew/cycle_type.hpp"
#include "cyclew/scaled_real.hpp"
#include "cyclew/weights.hpp"

namespace cyclew {

// Enumeration is exhaustive over partitions of n; p(60) = 966467.
inline constexpr std::int64_t kDefaultEnumerationCap = 60;
// Truncated power series work up to this degree.
inline constexpr std::int64_t kSeriesCap = 200;

struct WeightedCycleType {
  CycleType type;
  double probability;
};

/// Every cycle type of S_n with its probability
///   prod_m (theta_m / m)^{C_m} / C_m!  /  h_n,
/// ordered lexicographically with the largest part first ([n], [n-1,1], ...).
std::vector<WeightedCycleType> enumerate_cycle_types(const WeightSequence& w, std::int64_t n,
                                                     std::int64_t cap = kDefaultEnumerationCap);

// Streaming form of enumerate_cycle_types; same order.
void for_each_cycle_type(const WeightSequence& w, std::int64_t n,
                         const std::function<void(const CycleType&, double)>& visit,
                         std::int64_t cap = kDefaultEnumerationCap);

// Partition sum for h_n.
ScaledReal h_exact(const WeightSequence& w, std::int64_t n,
                   std::int64_t cap = kDefaultEnumerationCap);

namespace statistic {
struct LongestCycle {};
struct TailCount {
  double x;  // counts cycles of length >= x
};
struct TotalCycles {};
}  // namespace statistic

using Statistic = std::variant<statistic::LongestCycle, statistic::TailCount, statistic::TotalCycles>;
using Pmf = std::map<std::int64_t, double>;

std::int64_t evaluate_statistic(const Statistic& stat, const CycleType& ct);

Pmf exact_statistic_pmf(const WeightSequence& w, std::int64_t n, const Statistic& stat,
                        std::int64_t cap = kDefaultEnumerationCap);

/// E[exp(s * sum_{k >= x} C_k)] as
///   [t^n] exp((e^s - 1) sum_{x <= k <= n} (theta_k/k) t^k + g_Theta(t)) / h_n
/// using truncated ScaledReal series. n <= kSeriesCap.
double mgf_series(const WeightSequence& w, std::int64_t n, double x, double s);

struct CorollaryCheck {
  ScaledReal lhs;  // [t^n] f(t) exp(g_Theta(t))
  ScaledReal rhs;  // 2 f(r_n) [t^n] exp(g_Theta(t))
  bool holds;
  double f_at_saddle;
};

/// Coefficient bound [t^n] f e^{g} <= 2 f(r_n) [t^n] e^{g} for
/// f = F^2 (1 + F)^2, F(t) = sum_{x_n(v) <= k < x_n(u)} (theta_k/k) t^k. Advisory:
/// the inequality is only asserted for n beyond an unspecified n_0.
CorollaryCheck corollary_bound_check(const WeightSequence& w, std::int64_t n, double u, double v);

}  // namespace cyclew
