#pragma once

#include <cstdint>
#include <optional>

#include <nlohmann/json.hpp>

#include "cyclew/scaled_real.hpp"
#include "cyclew/weights.hpp"

namespace cyclew {

/// Solved saddle point of sum_k theta_k e^{-k v} = n and the derived scales.
struct SaddleData {
  std::int64_t n = 0;
  double alpha = 0.0;       // growth exponent of the weights
  double v_n = 0.0;
  double n_star = 0.0;      // 1 / v_n
  double ell_n = 0.0;       // NaN when alpha * log(n_star) <= 0
  double r_n = 0.0;         // e^{-v_n}
  double a_n = 0.0;         // r g'(r) at r_n
  double b_n = 0.0;         // r g'(r) + r^2 g''(r) at r_n
  std::int64_t truncation_k = 0;
  double residual = 0.0;    // |a_n - n|
  double tail_bound = 0.0;  // certified remainder of the truncated a_n sum
  int iterations = 0;

  nlohmann::ordered_json to_json() const;
};

/// Newton iteration on v -> sum theta_k e^{-kv} from v0 = (n / Gamma(alpha+1))^{-1/(1+alpha)},
/// safeguarded by bisection on a bracket around v0. Throws NumericError after 200
/// iterations.
SaddleData solve_saddle(const WeightSequence& w, std::int64_t n);

// alpha log n* + (alpha - 1) log(alpha log n*); DomainError if alpha log n* <= 0.
double ell_n(const SaddleData& sd, double alpha);

// Cycle-length threshold n* (ell_n + min(-log y, ell_n)) for y >= 0; y = 0 gives 2 n* ell_n.
double cycle_threshold(const SaddleData& sd, double y);

struct PolylogAsymp {
  double approx;
  double direct;
  double abs_error;
};

/// Gamma(delta+1) v^{-delta-1} + zeta(-delta) against the direct sum of k^delta e^{-kv}.
PolylogAsymp polylog_asymp(double delta, double v);

// Leading Euler-Maclaurin boundary constant for sum_{k>=x} f(k) - int_x^inf f.
inline constexpr double kBoundaryConstant = 0.5;

struct PartialSumAsymp {
  double integral_part;  // (x^d e^{-xv} / v) sum_{j<=N} (d)_j / (xv)^j
  double correction;     // kBoundaryConstant * x^d e^{-xv}
  double direct;         // sum_{k >= ceil(x)} k^d e^{-kv}
  bool in_regime;        // x v >= 5
};

PartialSumAsymp partial_sum_asymp(double delta, double v, double x, int n_terms);

// Falling factorial d (d-1) ... (d-j+1), 1 for j = 0.
double falling_factorial(double delta, int j);

struct SaddleEstimate {
  ScaledReal estimate;
  SaddleData sd;
};

/// (2 pi)^{-1/2} r_n^{-n} b_n^{-1/2} exp(g_Theta(r_n)) as an approximation of h_n. n >= 10.
SaddleEstimate saddle_h_estimate(const WeightSequence& w, std::int64_t n);

/// sum_{k >= max(x, 1)} (theta_k / k) r_n^k.
double expected_tail_count(const WeightSequence& w, const SaddleData& sd, double x);

struct AdmissibilityConfig {
  std::optional<double> xi;  // exponent of delta_n = v_n^xi; see default_xi()
  int phi_grid_points = 1000;
};

// Exponent inside ((alpha+3)/3, (alpha+2)/2): (alpha+2)/2 - 0.1, pulled to the
// midpoint when the interval is narrower than 0.2.
double default_xi(double alpha);

struct AdmissibilityReport {
  double residual = 0.0;  // |a_n - n| / sqrt(b_n) for the perturbed function
  double width = 0.0;     // delta_n^2 b_n - log b_n
  std::int64_t monotonicity_violations = 0;
  double bn_ratio = 0.0;  // b_n / (Gamma(alpha+2) n*^{alpha+2})

  double xi = 0.0;
  double delta_n = 0.0;
  double a_n = 0.0;
  double b_n = 0.0;
  double threshold = 0.0;

  // {"residual", "width", "monotonicity_violations", "bn_ratio"}
  nlohmann::ordered_json to_json() const;
};

/// Numeric checks of the saddle-point conditions for
/// g_{n,s}(t) = (e^s - 1) sum_{k >= x_n(y)} (theta_k/k) t^k + g_Theta(t) at r_n.
AdmissibilityReport admissibility_diagnostics(const WeightSequence& w, std::int64_t n, double s,
                                              double y, const AdmissibilityConfig& cfg = {});

}  // namespace cyclew
