#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace cyclew {

/// Cycle type of a permutation of n: multiplicities C_m of each cycle length m,
/// with sum_m m * C_m = n. Only lengths with C_m >= 1 are stored, sorted by m.
class CycleType {
 public:
  using Entry = std::pair<std::int64_t, std::int64_t>;  // (length m, count C_m)

  CycleType() = default;

  // Accepts entries in any order; merges duplicate lengths. Throws ValidationError
  // on m < 1 or C_m < 0.
  explicit CycleType(std::vector<Entry> entries);

  // From a multiset of cycle lengths (any order).
  static CycleType from_lengths(std::span<const std::int64_t> lengths);

  std::int64_t n() const noexcept { return n_; }
  std::span<const Entry> counts() const noexcept { return entries_; }

  std::int64_t count(std::int64_t m) const noexcept;
  std::int64_t total_cycles() const noexcept;
  // sum_{k >= x} C_k for real threshold x.
  std::int64_t tail_count(double x) const noexcept;
  std::int64_t max_length() const noexcept;

  // Cycle lengths with multiplicity, largest first.
  std::vector<std::int64_t> lengths_desc() const;

  friend bool operator==(const CycleType&, const CycleType&) = default;

 private:
  std::vector<Entry> entries_;
  std::int64_t n_ = 0;
};

}  // namespace cyclew
