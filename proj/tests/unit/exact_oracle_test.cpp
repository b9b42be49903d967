#include "cyclew/exact_oracle.hpp"

#include <cmath>
#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "cyclew/errors.hpp"
#include "cyclew/htable.hpp"
#include "cyclew/power_series.hpp"

namespace cyclew {
namespace {

const WeightSequence kLinear = WeightSequence::polynomial(1.0);

double probability_of(const std::vector<WeightedCycleType>& list, const CycleType& ct) {
  for (const auto& e : list) {
    if (e.type == ct) {
      return e.probability;
    }
  }
  return -1.0;
}

TEST(EnumerateCycleTypes, SmallLinearCases) {
  const auto two = enumerate_cycle_types(kLinear, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NEAR(probability_of(two, CycleType({{1, 2}})), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(probability_of(two, CycleType({{2, 1}})), 2.0 / 3.0, 1e-15);

  const auto three = enumerate_cycle_types(kLinear, 3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(probability_of(three, CycleType({{1, 3}})), 1.0 / 13.0, 1e-15);
  EXPECT_NEAR(probability_of(three, CycleType({{1, 1}, {2, 1}})), 6.0 / 13.0, 1e-15);
  EXPECT_NEAR(probability_of(three, CycleType({{3, 1}})), 6.0 / 13.0, 1e-15);
}

TEST(EnumerateCycleTypes, UniformMeasure) {
  const auto three = enumerate_cycle_types(WeightSequence::ewens(1.0), 3);
  EXPECT_NEAR(probability_of(three, CycleType({{3, 1}})), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(probability_of(three, CycleType({{1, 1}, {2, 1}})), 0.5, 1e-15);
}

TEST(EnumerateCycleTypes, OrderIsLargestPartFirst) {
  const auto five = enumerate_cycle_types(kLinear, 5);
  ASSERT_EQ(five.size(), 7u);
  EXPECT_EQ(five.front().type, CycleType({{5, 1}}));
  EXPECT_EQ(five[1].type, CycleType({{4, 1}, {1, 1}}));
  EXPECT_EQ(five[2].type, CycleType({{3, 1}, {2, 1}}));
  EXPECT_EQ(five.back().type, CycleType({{1, 5}}));
}

TEST(EnumerateCycleTypes, NormalizationAndStructure) {
  for (const auto& w : {kLinear, WeightSequence::polynomial(2.0), WeightSequence::ewens(2.0),
                        WeightSequence::polynomial(0.5)}) {
    for (std::int64_t n : {1, 4, 9, 16, 25}) {
      double total = 0.0;
      for_each_cycle_type(w, n, [&](const CycleType& ct, double p) {
        EXPECT_EQ(ct.n(), n);
        total += p;
      });
      EXPECT_NEAR(total, 1.0, 1e-12) << w.describe() << " n=" << n;
    }
  }
}

TEST(EnumerateCycleTypes, PartitionCounts) {
  const std::map<std::int64_t, std::size_t> p = {{1, 1}, {10, 42}, {20, 627}, {30, 5604}};
  for (const auto& [n, count] : p) {
    EXPECT_EQ(enumerate_cycle_types(kLinear, n).size(), count);
  }
}

TEST(EnumerateCycleTypes, CapacityError) {
  EXPECT_THROW(enumerate_cycle_types(kLinear, 61), CapacityError);
  EXPECT_THROW(enumerate_cycle_types(kLinear, 12, 10), CapacityError);
}

TEST(HExact, KnownValues) {
  EXPECT_NEAR(h_exact(WeightSequence::ewens(1.0), 7).to_double(), 1.0, 1e-14);
  EXPECT_NEAR(h_exact(kLinear, 2).to_double(), 1.5, 1e-15);
  EXPECT_NEAR(h_exact(WeightSequence::ewens(2.0), 3).to_double(), 4.0, 1e-14);
  // 314.69370067239856 from exact rational partition sums.
  EXPECT_NEAR(h_exact(WeightSequence::polynomial(2.0), 10).to_double(), 314.69370067239856, 1e-10);
}

TEST(ExactStatisticPmf, LongestCycleAndTailCount) {
  const Pmf l1 = exact_statistic_pmf(kLinear, 3, statistic::LongestCycle{});
  ASSERT_EQ(l1.size(), 3u);
  EXPECT_NEAR(l1.at(1), 1.0 / 13.0, 1e-15);
  EXPECT_NEAR(l1.at(2), 6.0 / 13.0, 1e-15);
  EXPECT_NEAR(l1.at(3), 6.0 / 13.0, 1e-15);

  const Pmf one = exact_statistic_pmf(WeightSequence::polynomial(3.0), 1, statistic::LongestCycle{});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one.at(1), 1.0, 1e-15);

  const Pmf tail = exact_statistic_pmf(kLinear, 3, statistic::TailCount{2.0});
  EXPECT_NEAR(tail.at(0), 1.0 / 13.0, 1e-15);
  EXPECT_NEAR(tail.at(1), 12.0 / 13.0, 1e-15);
}

TEST(ExactStatisticPmf, MassesSumToOne) {
  for (const Statistic& s : {Statistic{statistic::LongestCycle{}}, Statistic{statistic::TotalCycles{}},
                             Statistic{statistic::TailCount{3.5}}}) {
    const Pmf pmf = exact_statistic_pmf(WeightSequence::polynomial(2.0), 18, s);
    double total = 0.0;
    for (const auto& [_, p] : pmf) {
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(MgfSeries, KnownValues) {
  EXPECT_NEAR(mgf_series(kLinear, 3, 2.0, std::log(2.0)), 25.0 / 13.0, 1e-12);
  EXPECT_NEAR(mgf_series(WeightSequence::polynomial(2.0), 40, 7.0, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(mgf_series(kLinear, 30, 31.0, 1.7), 1.0, 1e-12);
  EXPECT_THROW(mgf_series(kLinear, 201, 1.0, 0.5), CapacityError);
}

// Enumeration is the independent route here.
TEST(MgfSeries, MatchesEnumeration) {
  for (const auto& w : {kLinear, WeightSequence::polynomial(0.5), WeightSequence::ewens(2.0)}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      for (double x : {1.0, 2.0, 3.0, n / 2.0}) {
        for (double s : {-1.0, 0.5, 1.0}) {
          double expected = 0.0;
          for_each_cycle_type(w, n, [&](const CycleType& ct, double p) {
            expected += p * std::exp(s * static_cast<double>(ct.tail_count(x)));
          });
          EXPECT_NEAR(mgf_series(w, n, x, s), expected, 1e-10 * expected)
              << w.describe() << " n=" << n << " x=" << x << " s=" << s;
        }
      }
    }
  }
}

TEST(PowerSeries, ExpOfGThetaMatchesRecurrence) {
  for (const auto& w : {kLinear, WeightSequence::polynomial(2.0), WeightSequence::ewens(2.0)}) {
    const auto series = PowerSeries::exp(g_theta_series(w, 200));
    const HTable table = build_h_table(w, 200);
    for (std::int64_t n = 0; n <= 200; ++n) {
      EXPECT_LE(relative_difference(series[static_cast<std::size_t>(n)], table.h(n)), 1e-10)
          << w.describe() << " n=" << n;
    }
  }
}

TEST(CorollaryBoundCheck, EmptyRangeIsTrivial) {
  // u and v so close that no integer lies in [x_n(v), x_n(u)).
  const auto r = corollary_bound_check(kLinear, 50, 1.0, 1.0001);
  EXPECT_TRUE(r.lhs.is_zero());
  EXPECT_TRUE(r.rhs.is_zero());
  EXPECT_TRUE(r.holds);
}

TEST(CorollaryBoundCheck, ExactRationalValues) {
  // lhs/rhs from exact rational series extraction (tests/oracles).
  const auto a = corollary_bound_check(kLinear, 50, 0.5, 2.0);
  EXPECT_TRUE(a.holds);
  EXPECT_NEAR(a.lhs.to_double(), 88250.994955, 1e-5);
  EXPECT_NEAR(a.rhs.to_double(), 437668.289899, 1e-4);

  const auto b = corollary_bound_check(WeightSequence::polynomial(2.0), 50, 0.25, 4.0);
  EXPECT_TRUE(b.holds);
  EXPECT_NEAR(b.lhs.to_double() / 528824815754.0, 1.0, 1e-10);
  EXPECT_NEAR(b.rhs.to_double() / 1.95112806489e12, 1.0, 1e-10);
}

}  // namespace
}  // namespace cyclew
