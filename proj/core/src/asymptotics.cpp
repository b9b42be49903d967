#include "cyclew/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cyclew/errors.hpp"

namespace cyclew {

namespace {

constexpr double kTruncationProduct = 60.0;  // K v >= 60
constexpr double kTailRelTol = 1e-15;
constexpr int kMaxNewtonIterations = 200;

struct ExpSum {
  double value = 0.0;
  std::int64_t last_k = 0;
  double tail_bound = 0.0;
};

// sum_{k >= k0} exp(log_coef(k) - k v), where the coefficients grow at most like
// k^growth. Summed at least to K = ceil(60 / v), then until the geometric tail
// bound is below kTailRelTol of the sum.
template <typename LogCoef>
ExpSum certified_exp_sum(LogCoef&& log_coef, double growth, double v, std::int64_t k0) {
  if (!(v > 0.0)) {
    throw DomainError("exponential sums need v > 0");
  }
  k0 = std::max<std::int64_t>(k0, 1);
  const double kmin_real = std::ceil(kTruncationProduct / v);
  if (kmin_real > 1e10) {
    throw CapacityError("v too small for direct summation");
  }
  const auto kmin = std::max(k0, static_cast<std::int64_t>(kmin_real));
  const double decay = std::exp(-v);

  double sum = 0.0;
  double comp = 0.0;
  double term = 0.0;
  std::int64_t k = k0;
  for (;; ++k) {
    term = std::exp(log_coef(k) - static_cast<double>(k) * v);
    const double next = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;
    if (k < kmin) {
      continue;
    }
    const double q =
        decay * std::max(1.0, std::pow(1.0 + 1.0 / static_cast<double>(k), growth));
    if (q >= 1.0) {
      continue;
    }
    const double tail = term * q / (1.0 - q);
    if (tail <= kTailRelTol * std::abs(sum + comp) || tail == 0.0) {
      return {sum + comp, k, tail};
    }
    if (k - kmin > 100'000'000) {
      throw NumericError("exponential sum failed to certify its tail");
    }
  }
}

// sum_{k>=k0} theta_k k^power e^{-kv}
ExpSum theta_sum(const WeightSequence& w, double power, double v, std::int64_t k0 = 1) {
  return certified_exp_sum(
      [&](std::int64_t k) { return w.log_theta(k) + power * std::log(static_cast<double>(k)); },
      w.growth_exponent() + power, v, k0);
}

std::int64_t first_index_at_least(double x) {
  if (!(x <= 9e15)) {
    return std::numeric_limits<std::int64_t>::max() / 2;
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
}

}  // namespace

nlohmann::ordered_json SaddleData::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["alpha"] = alpha;
  j["v_n"] = v_n;
  j["n_star"] = n_star;
  j["ell_n"] = std::isnan(ell_n) ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(ell_n);
  j["r_n"] = r_n;
  j["a_n"] = a_n;
  j["b_n"] = b_n;
  j["truncation_K"] = truncation_k;
  j["residual"] = residual;
  j["tail_bound"] = tail_bound;
  j["iterations"] = iterations;
  return j;
}

SaddleData solve_saddle(const WeightSequence& w, std::int64_t n) {
  if (n < 1) {
    throw DomainError("solve_saddle needs n >= 1");
  }
  const double alpha = w.growth_exponent();
  const double target = static_cast<double>(n);
  const double v0 = std::pow(target / std::tgamma(alpha + 1.0), -1.0 / (1.0 + alpha));

  auto mass = [&](double v) { return theta_sum(w, 0.0, v).value; };

  double lo = v0 / 10.0;
  double hi = v0 * 10.0;
  for (int i = 0; i < 60 && mass(lo) <= target; ++i) {
    lo /= 10.0;
  }
  for (int i = 0; i < 60 && mass(hi) >= target; ++i) {
    hi *= 10.0;
  }

  double v = v0;
  int iter = 0;
  bool converged = false;
  for (; iter < kMaxNewtonIterations; ++iter) {
    const ExpSum s0 = theta_sum(w, 0.0, v);
    const double f = s0.value - target;
    if (std::abs(f) <= 1e-13 * target) {
      converged = true;
      break;
    }
    // Sum is decreasing in v.
    if (f > 0.0) {
      lo = std::max(lo, v);
    } else {
      hi = std::min(hi, v);
    }
    const double s1 = theta_sum(w, 1.0, v).value;
    double next = v + f / s1;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - v) <= 1e-16 * v) {
      v = next;
      converged = true;
      break;
    }
    v = next;
  }
  if (!converged) {
    throw NumericError("solve_saddle: no convergence after " +
                       std::to_string(kMaxNewtonIterations) + " iterations (n = " +
                       std::to_string(n) + ", last v = " + std::to_string(v) +
                       ", bracket = [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }

  const ExpSum a = theta_sum(w, 0.0, v);
  const ExpSum b = theta_sum(w, 1.0, v);

  SaddleData sd;
  sd.n = n;
  sd.alpha = alpha;
  sd.v_n = v;
  sd.n_star = 1.0 / v;
  sd.r_n = std::exp(-v);
  sd.a_n = a.value;
  sd.b_n = b.value;
  sd.truncation_k = a.last_k;
  sd.tail_bound = a.tail_bound;
  sd.residual = std::abs(a.value - target);
  sd.iterations = iter;
  const double scale = alpha * std::log(sd.n_star);
  sd.ell_n = scale > 0.0 ? scale + (alpha - 1.0) * std::log(scale)
                         : std::numeric_limits<double>::quiet_NaN();
  return sd;
}

double ell_n(const SaddleData& sd, double alpha) {
  const double scale = alpha * std::log(sd.n_star);
  if (!(scale > 0.0)) {
    throw DomainError("ell_n needs alpha * log(n*) > 0");
  }
  return scale + (alpha - 1.0) * std::log(scale);
}

double cycle_threshold(const SaddleData& sd, double y) {
  if (std::isnan(sd.ell_n)) {
    throw DomainError("cycle_threshold needs ell_n to be defined");
  }
  if (!(y >= 0.0)) {
    throw DomainError("cycle_threshold needs y >= 0");
  }
  const double shift = y == 0.0 ? sd.ell_n : std::min(-std::log(y), sd.ell_n);
  return sd.n_star * (sd.ell_n + shift);
}

PolylogAsymp polylog_asymp(double delta, double v) {
  if (delta <= -1.0 && delta == std::floor(delta)) {
    throw DomainError("polylog_asymp is undefined at negative integer delta");
  }
  if (!(v > 0.0 && v < 1.0)) {
    throw DomainError("polylog_asymp needs 0 < v < 1");
  }
  const double direct =
      certified_exp_sum([&](std::int64_t k) { return delta * std::log(static_cast<double>(k)); },
                        delta, v, 1)
          .value;
  const double approx = std::tgamma(delta + 1.0) * std::pow(v, -delta - 1.0) +
                        std::riemann_zeta(-delta);
  return {approx, direct, std::abs(direct - approx)};
}

double falling_factorial(double delta, int j) {
  double out = 1.0;
  for (int i = 0; i < j; ++i) {
    out *= delta - i;
  }
  return out;
}

PartialSumAsymp partial_sum_asymp(double delta, double v, double x, int n_terms) {
  if (!(v > 0.0) || !(x > 0.0) || n_terms < 0) {
    throw DomainError("partial_sum_asymp needs v > 0, x > 0 and N >= 0");
  }
  const double xv = x * v;
  const double boundary = std::pow(x, delta) * std::exp(-xv);
  double series = 0.0;
  for (int j = 0; j <= n_terms; ++j) {
    series += falling_factorial(delta, j) / std::pow(xv, j);
  }
  const double direct =
      certified_exp_sum([&](std::int64_t k) { return delta * std::log(static_cast<double>(k)); },
                        delta, v, first_index_at_least(x))
          .value;
  return {boundary / v * series, kBoundaryConstant * boundary, direct, xv >= 5.0};
}

SaddleEstimate saddle_h_estimate(const WeightSequence& w, std::int64_t n) {
  if (n < 10) {
    throw DomainError("saddle_h_estimate needs n >= 10");
  }
  SaddleData sd = solve_saddle(w, n);
  const double g = theta_sum(w, -1.0, sd.v_n).value;
  const double log_estimate = -0.5 * std::log(2.0 * std::numbers::pi) +
                              static_cast<double>(n) * sd.v_n - 0.5 * std::log(sd.b_n) + g;
  return {ScaledReal::from_log(log_estimate), sd};
}

double expected_tail_count(const WeightSequence& w, const SaddleData& sd, double x) {
  if (!(x >= 0.0)) {
    throw DomainError("expected_tail_count needs x >= 0");
  }
  const std::int64_t k0 = first_index_at_least(x);
  if (k0 > std::numeric_limits<std::int64_t>::max() / 4) {
    return 0.0;
  }
  return theta_sum(w, -1.0, sd.v_n, k0).value;
}

double default_xi(double alpha) {
  const double lower = (alpha + 3.0) / 3.0;
  const double upper = (alpha + 2.0) / 2.0;
  return upper - std::min(0.1, 0.5 * (upper - lower));
}

nlohmann::ordered_json AdmissibilityReport::to_json() const {
  nlohmann::ordered_json j;
  j["residual"] = residual;
  j["width"] = width;
  j["monotonicity_violations"] = monotonicity_violations;
  j["bn_ratio"] = bn_ratio;
  return j;
}

AdmissibilityReport admissibility_diagnostics(const WeightSequence& w, std::int64_t n, double s,
                                              double y, const AdmissibilityConfig& cfg) {
  if (!(y > 0.0)) {
    throw DomainError("admissibility_diagnostics needs y > 0");
  }
  if (cfg.phi_grid_points < 2) {
    throw DomainError("admissibility_diagnostics needs at least two grid points");
  }
  const SaddleData sd = solve_saddle(w, n);
  const double alpha = sd.alpha;
  const double boost = std::expm1(s);  // e^s - 1
  const double threshold = cycle_threshold(sd, y);
  const std::int64_t k_tail = first_index_at_least(threshold);

  AdmissibilityReport rep;
  rep.threshold = threshold;
  rep.a_n = sd.a_n + boost * theta_sum(w, 0.0, sd.v_n, k_tail).value;
  rep.b_n = sd.b_n + boost * theta_sum(w, 1.0, sd.v_n, k_tail).value;
  rep.residual = std::abs(rep.a_n - static_cast<double>(n)) / std::sqrt(rep.b_n);
  rep.xi = cfg.xi.value_or(default_xi(alpha));
  rep.delta_n = std::pow(sd.v_n, rep.xi);
  rep.width = rep.delta_n * rep.delta_n * rep.b_n - std::log(rep.b_n);
  rep.bn_ratio = rep.b_n / (std::tgamma(alpha + 2.0) * std::pow(sd.n_star, alpha + 2.0));

  // Coefficients of g_{n,s} at radius r_n.
  const ExpSum extent = theta_sum(w, -1.0, sd.v_n);
  const auto kmax = static_cast<std::size_t>(extent.last_k);
  std::vector<double> coef(kmax + 1, 0.0);
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto kk = static_cast<std::int64_t>(k);
    const double base = std::exp(w.log_theta(kk) - std::log(static_cast<double>(k)) -
                                 static_cast<double>(k) * sd.v_n);
    coef[k] = kk >= k_tail ? base * std::exp(s) : base;
  }
  auto real_part = [&](double phi) {
    const std::complex<double> step = std::polar(1.0, phi);
    std::complex<double> z = step;
    double acc = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
      acc += coef[k] * z.real();
      z *= step;
    }
    return acc;
  };

  double scale = 0.0;
  for (double c : coef) {
    scale += c;
  }
  const double reference = real_part(rep.delta_n);
  const double tol = 1e-10 * scale;
  const int pts = cfg.phi_grid_points;
  for (int i = 1; i < pts; ++i) {
    const double phi =
        rep.delta_n + (std::numbers::pi - rep.delta_n) * static_cast<double>(i) / (pts - 1);
    if (real_part(phi) > reference + tol) {
      ++rep.monotonicity_violations;
    }
  }
  return rep;
}

}  // namespace cyclew
