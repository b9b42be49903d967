#include "cyclew/cycle_type.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cyclew/errors.hpp"

namespace cyclew {

CycleType::CycleType(std::vector<Entry> entries) {
  std::map<std::int64_t, std::int64_t> merged;
  for (const auto& [m, c] : entries) {
    if (m < 1 || c < 0) {
      throw ValidationError("cycle type entries need m >= 1 and C_m >= 0");
    }
    if (c > 0) {
      merged[m] += c;
    }
  }
  entries_.assign(merged.begin(), merged.end());
  for (const auto& [m, c] : entries_) {
    n_ += m * c;
  }
}

CycleType CycleType::from_lengths(std::span<const std::int64_t> lengths) {
  std::vector<Entry> entries;
  entries.reserve(lengths.size());
  for (std::int64_t m : lengths) {
    entries.emplace_back(m, 1);
  }
  return CycleType(std::move(entries));
}

std::int64_t CycleType::count(std::int64_t m) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), m,
                             [](const Entry& e, std::int64_t key) { return e.first < key; });
  return (it != entries_.end() && it->first == m) ? it->second : 0;
}

std::int64_t CycleType::total_cycles() const noexcept {
  std::int64_t total = 0;
  for (const auto& e : entries_) {
    total += e.second;
  }
  return total;
}

std::int64_t CycleType::tail_count(double x) const noexcept {
  if (!(x <= static_cast<double>(max_length()))) {
    return 0;
  }
  const auto first = static_cast<std::int64_t>(std::max(1.0, std::ceil(x)));
  std::int64_t total = 0;
  for (auto it = entries_.rbegin(); it != entries_.rend() && it->first >= first; ++it) {
    total += it->second;
  }
  return total;
}

std::int64_t CycleType::max_length() const noexcept {
  return entries_.empty() ? 0 : entries_.back().first;
}

std::vector<std::int64_t> CycleType::lengths_desc() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(total_cycles()));
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    out.insert(out.end(), static_cast<std::size_t>(it->second), it->first);
  }
  return out;
}

}  // namespace cyclew
