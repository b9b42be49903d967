#include "cyclew/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "cyclew/errors.hpp"
#include "cyclew/htable.hpp"

namespace cyclew {
namespace {

const WeightSequence kLinear = WeightSequence::polynomial(1.0);

TEST(SolveSaddle, LinearClosedForm) {
  // sum k e^{-kv} = r/(1-r)^2 = n  =>  r = (2n+1 - sqrt(4n+1)) / (2n).
  for (std::int64_t n : {10, 100, 12345, 1000000}) {
    const double nd = static_cast<double>(n);
    const double r = (2 * nd + 1 - std::sqrt(4 * nd + 1)) / (2 * nd);
    const SaddleData sd = solve_saddle(kLinear, n);
    EXPECT_NEAR(sd.v_n, -std::log(r), 1e-12 * std::max(1.0, -std::log(r))) << n;
    EXPECT_NEAR(sd.r_n, r, 1e-12);
    EXPECT_LE(sd.residual, 1e-9 * nd);
  }
  const SaddleData sd = solve_saddle(kLinear, 100);
  EXPECT_NEAR(sd.v_n, 0.09995838013869733, 1e-12);
  EXPECT_NEAR(sd.n_star, 1.0 / 0.09995838013869733, 1e-9);
  EXPECT_LT(std::abs(0.1 / sd.v_n - 1.0), 0.005);
}

TEST(SolveSaddle, EwensClosedForm) {
  // vartheta r / (1 - r) = n.
  const SaddleData sd = solve_saddle(WeightSequence::ewens(2.0), 1000);
  EXPECT_NEAR(sd.r_n, 1000.0 / 1002.0, 1e-13);
  EXPECT_EQ(sd.alpha, 0.0);
  EXPECT_TRUE(std::isnan(sd.ell_n));
}

TEST(SolveSaddle, DerivedQuantitiesConsistent) {
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const SaddleData sd = solve_saddle(WeightSequence::polynomial(a), 50000);
    EXPECT_NEAR(sd.a_n / 50000.0, 1.0, 1e-12);
    EXPECT_GT(sd.b_n, sd.a_n);
    // b_n ~ Gamma(a+2) n*^{a+2}.
    EXPECT_NEAR(sd.b_n / (std::tgamma(a + 2) * std::pow(sd.n_star, a + 2)), 1.0, 0.1) << a;
    EXPECT_LE(sd.tail_bound, 1e-12 * sd.a_n);
    EXPECT_GT(sd.truncation_k, 0);
  }
  const auto j = solve_saddle(kLinear, 100).to_json();
  for (const char* key : {"n", "v_n", "n_star", "ell_n", "r_n", "a_n", "b_n"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(SolveSaddle, RejectsBadInput) {
  EXPECT_THROW(solve_saddle(kLinear, 0), DomainError);
}

TEST(EllN, FrozenValue) {
  SaddleData sd;
  sd.n_star = 50.0;
  // 2 log 50 + log(2 log 50); mpmath.
  EXPECT_NEAR(ell_n(sd, 2.0), 9.8812478243046831, 1e-13);
  sd.n_star = 1.0;
  EXPECT_THROW(ell_n(sd, 1.0), DomainError);
}

TEST(CycleThreshold, CapsAtTwiceEll) {
  const SaddleData sd = solve_saddle(kLinear, 20000);
  EXPECT_NEAR(sd.n_star, 141.421650864, 1e-6);
  EXPECT_NEAR(sd.ell_n, 4.95174585959, 1e-9);
  EXPECT_NEAR(cycle_threshold(sd, 1.0), 700.284, 1e-3);
  EXPECT_NEAR(cycle_threshold(sd, 0.0), 2 * sd.n_star * sd.ell_n, 1e-9);
  EXPECT_DOUBLE_EQ(cycle_threshold(sd, 1e-300), cycle_threshold(sd, 0.0));
  EXPECT_LT(cycle_threshold(sd, 2.0), cycle_threshold(sd, 1.0));
  EXPECT_THROW(cycle_threshold(sd, -1.0), DomainError);
}

TEST(PolylogAsymp, GeometricClosedForms) {
  struct Row {
    double delta, v, abs_error;
  };
  // Errors of Gamma(d+1) v^{-d-1} + zeta(-d) against the closed-form sums (mpmath).
  const Row rows[] = {{0, 0.2, 0.0166556}, {0, 0.1, 0.00833194}, {0, 0.05, 0.00416649},
                      {0, 0.02, 0.00166666}, {1, 0.2, 1.66402e-4}, {1, 0.1, 4.16501e-5},
                      {1, 0.05, 1.04156e-5}, {1, 0.02, 1.66664e-6}};
  for (const auto& r : rows) {
    const PolylogAsymp p = polylog_asymp(r.delta, r.v);
    EXPECT_NEAR(p.abs_error, r.abs_error, 1e-6 * std::max(1.0, r.abs_error * 1e3))
        << r.delta << " " << r.v;
    EXPECT_LE(p.abs_error, r.v);
    const double q = std::exp(-r.v);
    const double closed = r.delta == 0 ? q / (1 - q) : q / ((1 - q) * (1 - q));
    EXPECT_NEAR(p.direct, closed, 1e-12 * closed);
  }
  EXPECT_NEAR(polylog_asymp(1, 0.1).direct, 99.916708316804716, 1e-10);
  const PolylogAsymp half = polylog_asymp(0, 0.5);
  EXPECT_NEAR(half.direct, 1.5414940825367982, 1e-12);
  EXPECT_NEAR(half.approx, 1.5, 1e-14);
}

TEST(PolylogAsymp, NonIntegerDelta) {
  const PolylogAsymp p = polylog_asymp(0.5, 0.01);
  EXPECT_LT(p.abs_error, 0.01);
}

TEST(FallingFactorial, Values) {
  EXPECT_DOUBLE_EQ(falling_factorial(2.5, 0), 1.0);
  EXPECT_DOUBLE_EQ(falling_factorial(2.5, 1), 2.5);
  EXPECT_DOUBLE_EQ(falling_factorial(2.5, 3), 2.5 * 1.5 * 0.5);
  EXPECT_DOUBLE_EQ(falling_factorial(2.0, 3), 0.0);
}

TEST(PartialSumAsymp, RegimeValues) {
  const PartialSumAsymp z = partial_sum_asymp(0.0, 0.05, 200.0, 4);
  EXPECT_TRUE(z.in_regime);
  EXPECT_NEAR(z.direct, 9.3088771862348669e-4, 1e-16);
  EXPECT_NEAR(z.integral_part, 9.0799859524969703e-4, 1e-16);
  EXPECT_NEAR(z.correction, 2.2699964881242426e-5, 1e-18);
  EXPECT_LE(std::abs(z.direct - z.integral_part - z.correction), 0.05 * z.correction);

  const PartialSumAsymp q = partial_sum_asymp(2.0, 0.05, 200.0, 6);
  EXPECT_NEAR(q.direct, 45.224383222379443, 1e-10);
  EXPECT_NEAR(q.integral_part, 44.310331448185215, 1e-10);
  EXPECT_NEAR((q.integral_part + q.correction) / q.direct, 1.0, 2e-4);

  EXPECT_FALSE(partial_sum_asymp(1.0, 0.01, 100.0, 3).in_regime);
}

TEST(SaddleEstimate, LinearRatiosImprove) {
  const HTable t = build_h_table(kLinear, 2000);
  // Ratios from an mpmath evaluation of the same formula against exact h_n.
  const std::pair<std::int64_t, double> expected[] = {
      {500, 1.00851623938}, {1000, 1.00599445217}, {2000, 1.00422511003}};
  double last = 1.0;
  for (const auto& [n, ratio] : expected) {
    const double got = (saddle_h_estimate(kLinear, n).estimate / t.h(n)).to_double();
    EXPECT_NEAR(got, ratio, 1e-8) << n;
    EXPECT_LT(std::abs(got - 1.0), last);
    last = std::abs(got - 1.0);
  }
  EXPECT_THROW(saddle_h_estimate(kLinear, 5), DomainError);
}

TEST(ExpectedTailCount, LinearValues) {
  const SaddleData sd = solve_saddle(kLinear, 20000);
  EXPECT_NEAR(expected_tail_count(kLinear, sd, cycle_threshold(sd, 1.0)), 0.998472, 1e-5);
  EXPECT_NEAR(2 * expected_tail_count(kLinear, sd, std::floor(cycle_threshold(sd, 0.0)) + 1),
              0.0141488931228, 1e-10);
  const SaddleData big = solve_saddle(kLinear, 10000);
  EXPECT_NEAR(expected_tail_count(kLinear, big, 1.0), 99.5012499922, 1e-8);
}

TEST(DefaultXi, InsideInterval) {
  for (double a = 0.05; a <= 5.0; a += 0.05) {
    const double xi = default_xi(a);
    EXPECT_GT(xi, (a + 3) / 3) << a;
    EXPECT_LT(xi, (a + 2) / 2) << a;
  }
}

TEST(Admissibility, LinearDiagnostics) {
  const AdmissibilityReport big = admissibility_diagnostics(kLinear, 100000, 0.5, 1.0);
  EXPECT_NEAR(big.bn_ratio, 1.0, 0.1);
  EXPECT_EQ(big.monotonicity_violations, 0);

  const AdmissibilityReport a = admissibility_diagnostics(kLinear, 1000, 0.5, 1.0, {.xi = 1.4});
  const AdmissibilityReport b = admissibility_diagnostics(kLinear, 10000, 0.5, 1.0, {.xi = 1.4});
  EXPECT_GT(b.delta_n * b.delta_n * b.b_n, a.delta_n * a.delta_n * a.b_n);
  // The tilt moves a_n off n by about (e^s - 1) times the tail mass, small against sqrt(b_n).
  EXPECT_LT(a.residual, 1.0);
  EXPECT_LT(b.residual, a.residual);

  const auto j = big.to_json();
  EXPECT_EQ(j.size(), 4u);
  EXPECT_TRUE(j.contains("bn_ratio"));
  EXPECT_THROW(admissibility_diagnostics(kLinear, 1000, 0.5, 0.0), DomainError);
}

}  // namespace
}  // namespace cyclew
