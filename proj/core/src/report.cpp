#include "cyclew/report.hpp"

#include <cmath>
#include <stdexcept>

namespace cyclew {

VerificationReport::VerificationReport(std::string experiment)
    : experiment_(std::move(experiment)) {}

void VerificationReport::require_open() const {
  if (sealed_) {
    throw std::logic_error("report '" + experiment_ + "' is sealed");
  }
}

nlohmann::ordered_json& VerificationReport::config() {
  require_open();
  return config_;
}

nlohmann::ordered_json& VerificationReport::details() {
  require_open();
  return details_;
}

bool VerificationReport::within(double observed, double target, double tol) noexcept {
  return std::abs(observed - target) <= tol;  // false for NaN
}

const Check& VerificationReport::add_check(std::string name, double observed, double target,
                                           double tol) {
  require_open();
  checks_.push_back({std::move(name), observed, target, tol, within(observed, target, tol)});
  return checks_.back();
}

void VerificationReport::set_distance(const std::string& name, double value) {
  require_open();
  for (auto& [k, v] : distances_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  distances_.emplace_back(name, value);
}

void VerificationReport::set_count(const std::string& name, std::int64_t value) {
  require_open();
  for (auto& [k, v] : counts_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  counts_.emplace_back(name, value);
}

const Check& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) {
      return c;
    }
  }
  throw std::out_of_range("no check named '" + name + "' in report '" + experiment_ + "'");
}

double VerificationReport::distance(const std::string& name) const {
  for (const auto& [k, v] : distances_) {
    if (k == name) {
      return v;
    }
  }
  throw std::out_of_range("no distance named '" + name + "'");
}

std::int64_t VerificationReport::count(const std::string& name) const {
  for (const auto& [k, v] : counts_) {
    if (k == name) {
      return v;
    }
  }
  throw std::out_of_range("no count named '" + name + "'");
}

bool VerificationReport::all_pass() const noexcept {
  for (const auto& c : checks_) {
    if (!c.pass) {
      return false;
    }
  }
  return true;
}

nlohmann::ordered_json VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_;
  j["config"] = config_;
  auto& checks = j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks_) {
    checks.push_back({{"name", c.name},
                      {"observed", c.observed},
                      {"target", c.target},
                      {"tol", c.tol},
                      {"pass", c.pass}});
  }
  auto& distances = j["distances"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : distances_) {
    distances[k] = v;
  }
  auto& counts = j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts_) {
    counts[k] = v;
  }
  if (!details_.empty()) {
    j["details"] = details_;
  }
  j["all_pass"] = all_pass();
  return j;
}

}  // namespace cyclew
