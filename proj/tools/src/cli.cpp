#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cyclew/asymptotics.hpp"
#include "cyclew/errors.hpp"
#include "cyclew/exact_oracle.hpp"
#include "cyclew/htable.hpp"
#include "cyclew/report.hpp"
#include "cyclew/sampler.hpp"
#include "cyclew/stats.hpp"
#include "cyclew/weights.hpp"

namespace cyclew::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct RunConfig {
  std::optional<double> alpha;
  std::optional<double> vartheta;
  std::int64_t n = 0;
  std::int64_t samples = 1000;
  std::uint64_t seed = 1;
  int workers = 1;
  std::vector<double> y_grid{0.5, 1.0, 2.0};
  std::vector<double> x_grid{0.25, 0.5, 1.0, 2.0};
  int k_longest = 3;
  std::string out_path;
  std::string cache_dir;
  bool build = false;
  std::vector<std::string> tol;
  double s = 0.5;
  double y = 1.0;
  std::vector<double> deltas{0.0, 1.0};
  std::vector<double> v_grid{0.2, 0.1, 0.05, 0.02};
  std::optional<double> partial_x;
  int terms = 4;
};

WeightSequence weights_of(const RunConfig& c) {
  if (c.alpha) {
    return WeightSequence::polynomial(*c.alpha);
  }
  if (c.vartheta) {
    return WeightSequence::ewens(*c.vartheta);
  }
  throw ValidationError("one of --alpha or --vartheta is required");
}

void require_positive(std::int64_t v, const char* flag) {
  if (v <= 0) {
    throw ValidationError(std::string(flag) + " must be positive");
  }
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

fs::path cache_file(const fs::path& dir, const WeightSequence& w) {
  const char* family = w.family() == WeightFamily::Ewens ? "ewens" : "polynomial";
  return dir / (std::string(family) + "_" + fmt17(w.parameter()) + ".cwht");
}

HTable obtain_table(const RunConfig& c, const WeightSequence& w, std::ostream& err) {
  if (c.cache_dir.empty()) {
    return build_h_table(w, c.n);
  }
  const fs::path path = cache_file(c.cache_dir, w);
  if (fs::exists(path)) {
    HTable cached = HTable::load(path);
    if (cached.weight().family() != w.family() || cached.weight().parameter() != w.parameter()) {
      throw ValidationError("cache file " + path.string() + " holds different weights");
    }
    if (cached.n_max() >= c.n) {
      return cached;
    }
    if (!c.build) {
      throw ValidationError("n = " + std::to_string(c.n) + " exceeds cached n_max = " +
                            std::to_string(cached.n_max()) + " (pass --build to extend)");
    }
  }
  err << "building h table to n = " << c.n << "\n";
  HTable table = build_h_table(w, c.n);
  fs::create_directories(c.cache_dir);
  table.save(path);
  return table;
}

StatsTolerances tolerances_of(const RunConfig& c) {
  StatsTolerances t;
  const std::map<std::string, double*> fields = {
      {"increment_mean_rel", &t.increment_mean_rel}, {"dispersion", &t.dispersion},
      {"poisson_tv", &t.poisson_tv},                 {"correlation", &t.correlation},
      {"gumbel_ks", &t.gumbel_ks},                   {"joint_ks", &t.joint_ks},
      {"profile_rel", &t.profile_rel},               {"profile_abs", &t.profile_abs},
      {"bn_bound_factor", &t.bn_bound_factor},       {"bn_max_frequency", &t.bn_max_frequency}};
  for (const auto& kv : c.tol) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("--tol expects key=value, got '" + kv + "'");
    }
    const auto it = fields.find(kv.substr(0, eq));
    if (it == fields.end()) {
      throw ValidationError("unknown tolerance '" + kv.substr(0, eq) + "'");
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(kv.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != kv.size() - eq - 1 || !(value >= 0.0) || !std::isfinite(value)) {
      throw ValidationError("bad tolerance value in '" + kv + "'");
    }
    *it->second = value;
  }
  return t;
}

// Writes to --out when given, else to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) {
        throw ValidationError("cannot open " + path + " for writing");
      }
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit_json(const RunConfig& c, std::ostream& out, const ordered_json& j) {
  Sink sink(c.out_path, out);
  sink.stream() << j.dump(2) << "\n";
}

ordered_json run_config_echo(const RunConfig& c, const WeightSequence& w) {
  return {{"weights", w.describe()}, {"n", c.n},       {"samples", c.samples},
          {"seed", c.seed},          {"workers", c.workers}};
}

int cmd_htable(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const WeightSequence w = weights_of(c);
  require_positive(c.n, "--n");
  const HTable t = obtain_table(c, w, err);
  ordered_json j = {{"weights", w.describe()},
                    {"n_max", t.n_max()},
                    {"log_h_n", t.h(c.n).log()},
                    {"recurrence_residual", t.recurrence_residual(c.n)}};
  if (!c.cache_dir.empty()) {
    j["cache"] = cache_file(c.cache_dir, w).string();
  }
  emit_json(c, out, j);
  return kOk;
}

int cmd_oracle(const RunConfig& c, std::ostream& out) {
  const WeightSequence w = weights_of(c);
  require_positive(c.n, "--n");
  if (c.n > kDefaultEnumerationCap) {
    throw CapacityError("oracle enumerates partitions; --n must be <= " +
                        std::to_string(kDefaultEnumerationCap));
  }
  VerificationReport rep("oracle");
  rep.config() = {{"weights", w.describe()}, {"n", c.n}};

  const HTable t = build_h_table(w, c.n);
  const ScaledReal exact = h_exact(w, c.n);
  rep.add_check("h_recurrence_vs_partition_sum", relative_difference(t.h(c.n), exact), 0.0, 1e-10);
  if (w.family() == WeightFamily::Ewens) {
    // vartheta^(n) / n! = prod_{j<n} (vartheta + j) / (j + 1)
    ScaledReal closed = ScaledReal::from_double(1.0);
    for (std::int64_t j = 0; j < c.n; ++j) {
      closed *= (w.parameter() + static_cast<double>(j)) / static_cast<double>(j + 1);
    }
    rep.add_check("h_closed_form", relative_difference(t.h(c.n), closed), 0.0, 1e-10);
  }

  const Pmf l1 = exact_statistic_pmf(w, c.n, statistic::LongestCycle{});
  ordered_json pmf = ordered_json::object();
  double mass = 0.0;
  for (const auto& [k, p] : l1) {
    pmf[std::to_string(k)] = p;
    mass += p;
  }
  rep.add_check("l1_pmf_mass", mass, 1.0, 1e-12);

  if (c.n <= kSeriesCap) {
    double worst = 0.0;
    for (double x : {1.0, 2.0, 3.0}) {
      for (double s : {-1.0, 0.5, 1.0}) {
        double expected = 0.0;
        for_each_cycle_type(w, c.n, [&](const CycleType& ct, double p) {
          expected += p * std::exp(s * static_cast<double>(ct.tail_count(x)));
        });
        worst = std::max(worst, std::abs(mgf_series(w, c.n, x, s) - expected) / expected);
      }
    }
    rep.add_check("mgf_series_vs_enumeration", worst, 0.0, 1e-10);
  }
  rep.details()["h_n"] = exact.to_double();
  rep.details()["log_h_n"] = exact.log();
  rep.details()["l1_pmf"] = std::move(pmf);
  rep.seal();
  emit_json(c, out, rep.to_json());
  return rep.all_pass() ? kOk : kChecksFailed;
}

int cmd_saddle(const RunConfig& c, std::ostream& out) {
  const WeightSequence w = weights_of(c);
  require_positive(c.n, "--n");
  const SaddleData sd = solve_saddle(w, c.n);
  ordered_json j = {{"weights", w.describe()}, {"saddle", sd.to_json()}};
  if (c.n >= 10) {
    j["log_h_estimate"] = saddle_h_estimate(w, c.n).estimate.log();
  }
  if (!std::isnan(sd.ell_n)) {
    j["x_n(y)"] = cycle_threshold(sd, c.y);
    j["cap"] = cycle_threshold(sd, 0.0);
    j["admissibility"] = admissibility_diagnostics(w, c.n, c.s, c.y).to_json();
  }
  emit_json(c, out, j);
  return kOk;
}

int cmd_sample(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const WeightSequence w = weights_of(c);
  require_positive(c.n, "--n");
  const HTable t = obtain_table(c, w, err);
  SamplerConfig cfg{.n = c.n, .num_samples = c.samples, .seed = c.seed, .workers = c.workers};
  cfg.validate(t);
  Sink sink(c.out_path, out);
  SamplerCounters counters;
  sample_batch(
      t, cfg, [&](std::int64_t i, const CycleType& ct) { write_sample_line(sink.stream(), i, ct); },
      &counters);
  if (counters.numeric_incidents > 0) {
    err << counters.numeric_incidents << " numeric incidents while sampling\n";
  }
  return kOk;
}

int cmd_verify(const std::string& which, const RunConfig& c, std::ostream& out,
               std::ostream& err) {
  const WeightSequence w = weights_of(c);
  require_positive(c.n, "--n");
  const StatsTolerances tol = tolerances_of(c);
  const SaddleData sd = solve_saddle(w, c.n);
  if (std::isnan(sd.ell_n) && which != "profile") {
    throw DomainError("verify " + which + " needs alpha > 0 and n large enough for ell_n");
  }
  if (which == "gumbel" && c.k_longest < 1) {
    throw ValidationError("--k-longest must be positive");
  }
  const HTable t = obtain_table(c, w, err);
  SamplerConfig cfg{.n = c.n, .num_samples = c.samples, .seed = c.seed, .workers = c.workers};
  cfg.validate(t);
  SamplerCounters counters;
  const auto batch = to_process_samples(sample_batch(t, cfg, &counters));
  if (counters.numeric_incidents > 0) {
    throw NumericError(std::to_string(counters.numeric_incidents) + " sampler numeric incidents");
  }

  std::optional<VerificationReport> rep;
  if (which == "poisson") {
    rep.emplace(verify_poisson_increments(batch, sd, c.y_grid, tol));
  } else if (which == "gumbel") {
    rep.emplace(verify_gumbel(batch, sd, c.k_longest, tol));
  } else if (which == "profile") {
    rep.emplace(cumulative_profile(batch, w, sd, c.x_grid, tol));
  } else {
    rep.emplace(bn_event_frequency(batch, w, sd, tol));
  }
  ordered_json j = rep->to_json();
  j["config"]["run"] = run_config_echo(c, w);
  emit_json(c, out, j);
  return rep->all_pass() ? kOk : kChecksFailed;
}

int cmd_expansions(const RunConfig& c, std::ostream& out) {
  Sink sink(c.out_path, out);
  std::ostream& os = sink.stream();
  os << "delta,v,direct,approx,abs_error\n";
  for (double delta : c.deltas) {
    if (!(delta >= 0.0)) {
      throw DomainError("--delta values must be nonnegative");
    }
    for (double v : c.v_grid) {
      if (!(v > 0.0)) {
        throw DomainError("--v-grid values must be positive");
      }
      double direct;
      double approx;
      if (c.partial_x) {
        const PartialSumAsymp p = partial_sum_asymp(delta, v, *c.partial_x, c.terms);
        direct = p.direct;
        approx = p.integral_part + p.correction;
      } else {
        const PolylogAsymp p = polylog_asymp(delta, v);
        direct = p.direct;
        approx = p.approx;
      }
      os << fmt17(delta) << ',' << fmt17(v) << ',' << fmt17(direct) << ',' << fmt17(approx) << ','
         << fmt17(std::abs(direct - approx)) << '\n';
    }
  }
  return kOk;
}

void add_family(CLI::App* app, RunConfig& c) {
  auto* a = app->add_option("--alpha", c.alpha, "polynomial weights theta_k = k^alpha");
  auto* t = app->add_option("--vartheta", c.vartheta, "Ewens weights theta_k = vartheta");
  a->excludes(t);
  t->excludes(a);
}

void add_sampling(CLI::App* app, RunConfig& c) {
  app->add_option("--samples", c.samples, "number of samples");
  app->add_option("--seed", c.seed, "master seed");
  app->add_option("--workers", c.workers, "sampler threads");
  app->add_option("--cache-dir", c.cache_dir, "h table cache directory");
  app->add_flag("--build", c.build, "rebuild the cache when n exceeds its n_max");
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted random permutations: exact tables, sampling, asymptotics, verification",
               "cyclew"};
  app.require_subcommand(1);
  app.allow_windows_style_options(false);
  RunConfig c;

  auto* htable = app.add_subcommand("htable", "build or extend the cached h table");
  add_family(htable, c);
  htable->add_option("--n", c.n, "n_max")->required();
  htable->add_option("--cache-dir", c.cache_dir, "cache directory");
  htable->add_flag("--build", c.build, "rebuild when the cache is too small");
  htable->add_option("--out", c.out_path, "write JSON here");

  auto* oracle = app.add_subcommand("oracle", "small-n enumeration cross-checks");
  add_family(oracle, c);
  oracle->add_option("--n", c.n)->required();
  oracle->add_option("--out", c.out_path);

  auto* saddle = app.add_subcommand("saddle", "saddle point and admissibility diagnostics");
  add_family(saddle, c);
  saddle->add_option("--n", c.n)->required();
  saddle->add_option("--s", c.s, "tilt for the diagnostics");
  saddle->add_option("--y", c.y, "threshold level for the diagnostics");
  saddle->add_option("--out", c.out_path);

  auto* sample = app.add_subcommand("sample", "dump sampled cycle types as JSON lines");
  add_family(sample, c);
  sample->add_option("--n", c.n)->required();
  add_sampling(sample, c);
  sample->add_option("--out", c.out_path);

  auto* verify = app.add_subcommand("verify", "statistical verification reports");
  verify->require_subcommand(1);
  std::string which;
  for (const char* name : {"poisson", "gumbel", "profile", "bn"}) {
    auto* sub = verify->add_subcommand(name);
    add_family(sub, c);
    sub->add_option("--n", c.n)->required();
    add_sampling(sub, c);
    sub->add_option("--tol", c.tol, "tolerance override key=value")->allow_extra_args(false);
    sub->add_option("--out", c.out_path);
    sub->callback([&which, name] { which = name; });
  }
  verify->get_subcommand("poisson")->add_option("--y-grid", c.y_grid)->delimiter(',');
  verify->get_subcommand("gumbel")->add_option("--k-longest", c.k_longest);
  verify->get_subcommand("profile")->add_option("--x-grid", c.x_grid)->delimiter(',');

  auto* expansions = app.add_subcommand("expansions", "polylog and partial-sum sweeps as CSV");
  expansions->add_option("--delta", c.deltas)->delimiter(',');
  expansions->add_option("--v-grid", c.v_grid)->delimiter(',');
  expansions->add_option("--partial-x", c.partial_x, "lower summation limit x");
  expansions->add_option("--terms", c.terms, "terms of the partial-sum expansion");
  expansions->add_option("--out", c.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }

  try {
    if (c.workers < 1) {
      throw ValidationError("--workers must be positive");
    }
    if (*htable) {
      return cmd_htable(c, out, err);
    }
    if (*oracle) {
      return cmd_oracle(c, out);
    }
    if (*saddle) {
      return cmd_saddle(c, out);
    }
    if (*sample) {
      return cmd_sample(c, out, err);
    }
    if (*verify) {
      return cmd_verify(which, c, out, err);
    }
    return cmd_expansions(c, out);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"cyclew"};
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  return run_command(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cyclew::cli
