#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cyclew {

struct Check {
  std::string name;
  double observed;
  double target;
  double tol;
  bool pass;  // |observed - target| <= tol; NaN never passes
};

/// Result of one verification experiment. Serialized as
///   {"experiment": str, "config": {...},
///    "checks": [{"name", "observed", "target", "tol", "pass"}, ...],
///    "distances": {...}, "counts": {...}, "details": {...}}
/// Mutators throw std::logic_error once the report is sealed.
class VerificationReport {
 public:
  explicit VerificationReport(std::string experiment);

  const std::string& experiment() const noexcept { return experiment_; }

  nlohmann::ordered_json& config();
  const nlohmann::ordered_json& config() const noexcept { return config_; }
  nlohmann::ordered_json& details();
  const nlohmann::ordered_json& details() const noexcept { return details_; }

  const Check& add_check(std::string name, double observed, double target, double tol);
  void set_distance(const std::string& name, double value);
  void set_count(const std::string& name, std::int64_t value);

  const std::vector<Check>& checks() const noexcept { return checks_; }
  // Throws std::out_of_range if absent.
  const Check& check(const std::string& name) const;
  double distance(const std::string& name) const;
  std::int64_t count(const std::string& name) const;
  bool all_pass() const noexcept;

  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }

  nlohmann::ordered_json to_json() const;

  static bool within(double observed, double target, double tol) noexcept;

 private:
  void require_open() const;

  std::string experiment_;
  nlohmann::ordered_json config_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json details_ = nlohmann::ordered_json::object();
  std::vector<Check> checks_;
  std::vector<std::pair<std::string, double>> distances_;
  std::vector<std::pair<std::string, std::int64_t>> counts_;
  bool sealed_ = false;
};

}  // namespace cyclew
