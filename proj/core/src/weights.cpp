#include "cyclew/weights.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cyclew/errors.hpp"

namespace cyclew {

namespace {

constexpr std::int64_t kLogSpaceThreshold = 1'000'000;
constexpr std::int64_t kMaxPartialTerms = 2'000'000'000;

void require_index(std::int64_t k) {
  if (k < 1) {
    throw DomainError("theta_k is defined for k >= 1, got k = " + std::to_string(k));
  }
}

}  // namespace

WeightSequence WeightSequence::polynomial(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("polynomial weights need alpha > 0");
  }
  return WeightSequence(WeightFamily::Polynomial, alpha, {});
}

WeightSequence WeightSequence::ewens(double vartheta) {
  if (!(vartheta > 0.0) || !std::isfinite(vartheta)) {
    throw DomainError("Ewens weights need vartheta > 0");
  }
  return WeightSequence(WeightFamily::Ewens, vartheta, {});
}

WeightSequence WeightSequence::table(std::vector<double> values) {
  if (values.size() < 2) {
    throw DomainError("table weights need at least two entries");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("table weights must be finite and positive");
    }
  }
  const auto k0 = static_cast<double>(values.size());
  const double alpha_fit =
      std::log(values[values.size() - 1] / values[values.size() - 2]) / std::log(k0 / (k0 - 1.0));
  return WeightSequence(WeightFamily::Table, alpha_fit, std::move(values));
}

double WeightSequence::growth_exponent() const noexcept {
  return family_ == WeightFamily::Ewens ? 0.0 : parameter_;
}

double WeightSequence::log_theta(std::int64_t k) const {
  require_index(k);
  switch (family_) {
    case WeightFamily::Polynomial:
      return parameter_ * std::log(static_cast<double>(k));
    case WeightFamily::Ewens:
      return std::log(parameter_);
    case WeightFamily::Table: {
      const auto k0 = static_cast<std::int64_t>(table_.size());
      if (k <= k0) {
        return std::log(table_[static_cast<std::size_t>(k - 1)]);
      }
      return std::log(table_.back()) +
             parameter_ * std::log(static_cast<double>(k) / static_cast<double>(k0));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double WeightSequence::theta(std::int64_t k) const {
  require_index(k);
  switch (family_) {
    case WeightFamily::Polynomial:
      if (k > kLogSpaceThreshold) {
        return std::exp(log_theta(k));
      }
      return std::pow(static_cast<double>(k), parameter_);
    case WeightFamily::Ewens:
      return parameter_;
    case WeightFamily::Table: {
      const auto k0 = static_cast<std::int64_t>(table_.size());
      if (k <= k0) {
        return table_[static_cast<std::size_t>(k - 1)];
      }
      return std::exp(log_theta(k));
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string WeightSequence::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case WeightFamily::Polynomial:
      os << "polynomial(alpha=" << parameter_ << ")";
      break;
    case WeightFamily::Ewens:
      os << "ewens(vartheta=" << parameter_ << ")";
      break;
    case WeightFamily::Table:
      os << "table(K0=" << table_.size() << ", alpha_fit=" << parameter_ << ")";
      break;
  }
  return os.str();
}

ThetaValue theta_eval(const WeightSequence& w, std::int64_t k) {
  const double value = w.theta(k);
  const double log_value =
      value > 0.0 ? w.log_theta(k) : -std::numeric_limits<double>::infinity();
  return {value, log_value};
}

GThetaPartial g_theta_partial(const WeightSequence& w, double t, double eps) {
  if (!(t >= 0.0) || !(t < 1.0)) {
    throw DomainError("g_theta_partial needs 0 <= t < 1");
  }
  if (!(eps > 0.0)) {
    throw DomainError("g_theta_partial needs eps > 0");
  }
  if (t == 0.0) {
    return {0.0, 0, 0.0};
  }

  // Coefficients theta_k / k grow like k^(growth - 1) past the certified start.
  const double coef_exponent = w.growth_exponent() - 1.0;
  // Table entries are arbitrary; the ratio bound only holds on the extrapolated part.
  const std::int64_t certified_from =
      w.family() == WeightFamily::Table ? w.table_size() : 1;
  const double log_t = std::log(t);

  double sum = 0.0;
  double compensation = 0.0;
  for (std::int64_t k = 1; k <= kMaxPartialTerms; ++k) {
    const double term =
        std::exp(w.log_theta(k) - std::log(static_cast<double>(k)) + static_cast<double>(k) * log_t);
    // Neumaier summation.
    const double next = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
    sum = next;

    if (k < certified_from) {
      continue;
    }
    const double ratio =
        t * std::max(1.0, std::pow(1.0 + 1.0 / static_cast<double>(k), coef_exponent));
    if (ratio >= 1.0) {
      continue;
    }
    const double tail = term * ratio / (1.0 - ratio);
    if (tail <= eps) {
      return {sum + compensation, k, tail};
    }
  }
  throw NumericError("g_theta_partial did not reach the requested tail bound");
}

}  // namespace cyclew
