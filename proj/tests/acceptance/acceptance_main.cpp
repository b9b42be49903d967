// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "cyclew/asymptotics.hpp"
#include "cyclew/exact_oracle.hpp"
#include "cyclew/htable.hpp"
#include "cyclew/sampler.hpp"
#include "cyclew/stats.hpp"
#include "cyclew/weights.hpp"

using namespace cyclew;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome oracle_agreement() {
  double worst = 0.0;
  double worst_closed = 0.0;
  for (const auto& w : {WeightSequence::polynomial(0.5), WeightSequence::polynomial(1.0),
                        WeightSequence::polynomial(2.0), WeightSequence::ewens(2.0)}) {
    const HTable t = build_h_table(w, 20);
    for (std::int64_t n = 1; n <= 20; ++n) {
      worst = std::max(worst, relative_difference(t.h(n), h_exact(w, n)));
      if (w.family() == WeightFamily::Ewens) {
        worst_closed = std::max(
            worst_closed, relative_difference(t.h(n), ScaledReal::from_double(n + 1.0)));
      }
    }
  }
  const double h3 = build_h_table(WeightSequence::ewens(2.0), 3).h(3).to_double();
  return {worst <= 1e-10 && worst_closed <= 1e-10 && std::abs(h3 - 4.0) <= 1e-12,
          fmt("max rel diff %.3g, Ewens(2) closed form %.3g, h_3 = %.15g", worst, worst_closed, h3)};
}

Outcome sampler_exactness() {
  const auto w = WeightSequence::polynomial(1.0);
  const auto exact = enumerate_cycle_types(w, 6);
  const HTable t = build_h_table(w, 6);
  SamplerConfig cfg{.n = 6, .num_samples = 1000000, .seed = 20240601, .workers = 4};
  std::map<std::vector<std::int64_t>, double> freq;
  sample_batch(t, cfg, [&](std::int64_t, const CycleType& ct) { freq[ct.lengths_desc()] += 1.0; });
  double tv = 0.0;
  double seen = 0.0;
  for (const auto& e : exact) {
    const double f = freq[e.type.lengths_desc()] / static_cast<double>(cfg.num_samples);
    seen += f;
    tv += std::abs(f - e.probability);
  }
  tv = 0.5 * (tv + (1.0 - seen));
  return {tv < 0.005, fmt("TV = %.5f over %zu cycle types, N = 1e6", tv, exact.size())};
}

Outcome saddle_solver() {
  const SaddleData sd = solve_saddle(WeightSequence::polynomial(1.0), 100);
  const double closed = -std::log((201.0 - std::sqrt(401.0)) / 200.0);
  const double init = std::pow(100.0 / std::tgamma(2.0), -0.5);
  const double init_rel = std::abs(init / sd.v_n - 1.0);
  return {std::abs(sd.v_n - closed) <= 1e-8 && init_rel <= 0.005,
          fmt("v_n = %.15g, closed form %.15g, initial value off by %.3f%%", sd.v_n, closed,
              100 * init_rel)};
}

Outcome polylog_contract() {
  bool ok = true;
  std::string detail;
  for (double delta : {0.0, 1.0}) {
    for (double v : {0.2, 0.1, 0.05, 0.02}) {
      const PolylogAsymp p = polylog_asymp(delta, v);
      const double q = std::exp(-v);
      const double closed = delta == 0.0 ? q / (1 - q) : q / ((1 - q) * (1 - q));
      const double err = std::abs(closed - p.approx);
      ok = ok && err <= v && std::abs(p.direct - closed) <= 1e-12 * closed;
      detail += fmt("%s(%g,%g) %.3g", detail.empty() ? "" : "; ", delta, v, err);
    }
  }
  return {ok, "abs errors " + detail};
}

Outcome partial_sum_regime() {
  const PartialSumAsymp p = partial_sum_asymp(0.0, 0.05, 200.0, 4);
  const double resid = std::abs(p.direct - p.integral_part - p.correction);
  return {p.in_regime && resid <= 0.05 * std::abs(p.correction),
          fmt("|direct - integral - boundary| = %.3g vs 0.05 * boundary = %.3g", resid,
              0.05 * p.correction)};
}

Outcome saddle_extraction() {
  const auto w = WeightSequence::polynomial(1.0);
  const HTable t = build_h_table(w, 2000);
  std::vector<double> errs;
  std::string detail;
  for (std::int64_t n : {500, 1000, 2000}) {
    const double ratio = (saddle_h_estimate(w, n).estimate / t.h(n)).to_double();
    errs.push_back(std::abs(ratio - 1.0));
    detail += fmt("%sn=%lld ratio %.9f", detail.empty() ? "" : ", ", static_cast<long long>(n), ratio);
  }
  return {errs[2] < 0.1 && errs[1] <= errs[0] && errs[2] <= errs[1], detail};
}

struct LargeRun {
  WeightSequence w = WeightSequence::polynomial(1.0);
  SaddleData sd;
  std::vector<ProcessSample> batch;
};

const LargeRun& large_run() {
  static const LargeRun run = [] {
    LargeRun r;
    const std::int64_t n = 20000;
    r.sd = solve_saddle(r.w, n);
    const HTable t = build_h_table(r.w, n);
    SamplerConfig cfg{.n = n, .num_samples = 5000, .seed = 7, .workers = 8};
    r.batch = to_process_samples(sample_batch(t, cfg));
    return r;
  }();
  return run;
}

std::string failing(const VerificationReport& rep) {
  std::string out;
  for (const auto& c : rep.checks()) {
    if (!c.pass) {
      out += fmt(" [fail %s = %.4g]", c.name.c_str(), c.observed);
    }
  }
  return out;
}

Outcome poisson_increments() {
  const auto& r = large_run();
  const std::vector<double> grid{0.5, 1.0, 2.0};
  const auto rep = verify_poisson_increments(r.batch, r.sd, grid);
  std::string detail = "means";
  for (int j = 1; j <= 3; ++j) {
    detail += fmt(" %.4f", rep.check("increment[" + std::to_string(j) + "].mean").observed);
  }
  detail += ", var/mean";
  for (int j = 1; j <= 3; ++j) {
    detail += fmt(" %.3f", rep.check("increment[" + std::to_string(j) + "].var_over_mean").observed);
  }
  detail += ", TV";
  for (int j = 1; j <= 3; ++j) {
    detail += fmt(" %.4f", rep.check("increment[" + std::to_string(j) + "].poisson_tv").observed);
  }
  detail += fmt(", corr %.3f %.3f %.3f", rep.check("corr[1,2]").observed,
                rep.check("corr[1,3]").observed, rep.check("corr[2,3]").observed);
  return {rep.all_pass(), detail + failing(rep)};
}

Outcome gumbel_limit() {
  const auto& r = large_run();
  const auto rep = verify_gumbel(r.batch, r.sd, 3);
  return {rep.all_pass(),
          fmt("KS(L1, Gumbel) = %.4f, KS L2 = %.4f, KS L3 = %.4f, order violations %g",
              rep.distance("ks_gumbel_L1"), rep.distance("ks_reference_L2"),
              rep.distance("ks_reference_L3"), rep.check("jump_order_violations").observed) +
              failing(rep)};
}

Outcome bn_control() {
  const auto& r = large_run();
  const auto rep = bn_event_frequency(r.batch, r.w, r.sd);
  const double freq = rep.distance("frequency");
  const double bound = rep.distance("markov_bound");
  return {rep.all_pass() && freq < 0.05 && freq <= 3.0 * bound,
          fmt("P(B_n) = %.4f, Markov bound %.5f (3x = %.5f)", freq, bound, 3 * bound)};
}

Outcome mgf_identity() {
  double worst_rel = 0.0;
  double worst_abs = 0.0;
  for (const auto& w : {WeightSequence::polynomial(0.5), WeightSequence::polynomial(1.0),
                        WeightSequence::polynomial(2.0), WeightSequence::ewens(2.0)}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      for (double x : {1.0, 2.0, 3.0}) {
        for (double s : {-1.0, 0.5, 1.0}) {
          double expected = 0.0;
          for_each_cycle_type(w, n, [&](const CycleType& ct, double p) {
            expected += p * std::exp(s * static_cast<double>(ct.tail_count(x)));
          });
          const double diff = std::abs(mgf_series(w, n, x, s) - expected);
          worst_abs = std::max(worst_abs, diff);
          worst_rel = std::max(worst_rel, diff / expected);
        }
      }
    }
  }
  return {worst_abs <= 1e-10, fmt("max abs diff %.3g (max rel %.3g)", worst_abs, worst_rel)};
}

Outcome admissibility() {
  const auto rep = admissibility_diagnostics(WeightSequence::polynomial(1.0), 100000, 0.5, 1.0,
                                             {.phi_grid_points = 1000});
  return {rep.bn_ratio >= 0.9 && rep.bn_ratio <= 1.1 && rep.monotonicity_violations == 0,
          fmt("b_n ratio %.5f, monotonicity violations %lld", rep.bn_ratio,
              static_cast<long long>(rep.monotonicity_violations))};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"1 oracle agreement", oracle_agreement},
      {"2 sampler exactness", sampler_exactness},
      {"3 saddle solver", saddle_solver},
      {"4 polylog expansion", polylog_contract},
      {"5 partial-sum regime", partial_sum_regime},
      {"6 saddle-point extraction", saddle_extraction},
      {"7 Poisson increments", poisson_increments},
      {"8 Gumbel longest cycles", gumbel_limit},
      {"9 B_n control", bn_control},
      {"10 MGF identity", mgf_identity},
      {"11 admissibility diagnostics", admissibility},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
