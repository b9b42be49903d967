#include "cyclew/power_series.hpp"

#include <algorithm>
#include <cmath>

#include "cyclew/errors.hpp"

namespace cyclew {

PowerSeries::PowerSeries(std::vector<ScaledReal> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    coeffs_.emplace_back();
  }
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
  const std::size_t d = std::min(degree(), other.degree());
  coeffs_.resize(d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    coeffs_[k] += other.coeffs_[k];
  }
  return *this;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  const std::size_t d = std::min(a.degree(), b.degree());
  PowerSeries out(d);
  for (std::size_t i = 0; i <= d; ++i) {
    if (a.coeffs_[i].is_zero()) {
      continue;
    }
    for (std::size_t j = 0; i + j <= d; ++j) {
      if (!b.coeffs_[j].is_zero()) {
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
  }
  return out;
}

ScaledReal PowerSeries::evaluate(double t) const {
  if (!(t >= 0.0)) {
    throw DomainError("PowerSeries::evaluate needs t >= 0");
  }
  const ScaledReal st = ScaledReal::from_double(t);
  ScaledReal acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * st + *it;
  }
  return acc;
}

PowerSeries PowerSeries::exp(const PowerSeries& a) {
  if (!a.coeffs_[0].is_zero()) {
    throw DomainError("PowerSeries::exp needs a zero constant term");
  }
  const std::size_t d = a.degree();
  PowerSeries result(d);
  result.coeffs_[0] = ScaledReal::from_double(1.0);

  std::vector<ScaledReal> factor;
  for (std::size_t k = 1; k <= d; ++k) {
    if (a.coeffs_[k].is_zero()) {
      continue;
    }
    // factor[j] = a_k^j / j!, placed at degree k*j.
    const std::size_t jmax = d / k;
    factor.assign(jmax + 1, ScaledReal{});
    factor[0] = ScaledReal::from_double(1.0);
    for (std::size_t j = 1; j <= jmax; ++j) {
      factor[j] = factor[j - 1] * a.coeffs_[k] / static_cast<double>(j);
    }
    // In-place update from high degree down so lower entries stay unmodified.
    for (std::size_t i = d + 1; i-- > 0;) {
      ScaledReal acc = result.coeffs_[i];
      for (std::size_t j = 1; j * k <= i; ++j) {
        acc += result.coeffs_[i - j * k] * factor[j];
      }
      result.coeffs_[i] = acc;
    }
  }
  return result;
}

PowerSeries g_theta_series(const WeightSequence& w, std::size_t degree) {
  PowerSeries g(degree);
  for (std::size_t k = 1; k <= degree; ++k) {
    const auto kk = static_cast<std::int64_t>(k);
    g[k] = ScaledReal::from_log(w.log_theta(kk) - std::log(static_cast<double>(k)));
  }
  return g;
}

}  // namespace cyclew
