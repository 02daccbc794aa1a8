// Copyright 2026 The tailfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any failed.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "tailfit/binning.hpp"
#include "tailfit/distributions.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/special.hpp"
#include "tailfit/synthesis.hpp"

namespace {

using namespace tailfit;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> check;
};

std::string fmt(double v, int precision = 6) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

double gamma_of(const FitReport& f) {
  return std::get<PowerLawModel>(f.model).gamma();
}

// ---- 1 ----------------------------------------------------------------------

Outcome sigma_invariance() {
  const auto sample = sample_lognormal(LognormalModel(10.0, 2.0), 1000000,
                                       SeededGenerator(20260101));
  const auto base = std::get<LognormalModel>(fit_lognormal(sample).model);
  Outcome o{true, ""};
  for (double b : {1.0 / 60.0, 1.0 / 3600.0}) {
    const auto scaled =
        std::get<LognormalModel>(fit_lognormal(rescale(sample, b)).model);
    const double dsigma = std::fabs(scaled.sigma() - base.sigma());
    const double dmu = std::fabs(scaled.mu() - base.mu() - std::log(b));
    o.pass = o.pass && dsigma <= 1e-12 && dmu <= 1e-3;
    o.detail += "b=1/" + fmt(1.0 / b) + ": |dsigma|=" + fmt(dsigma, 3) +
                " |dmu-ln b|=" + fmt(dmu, 3) + "; ";
  }
  o.detail += "sigma=" + fmt(base.sigma(), 8) + " mu=" + fmt(base.mu(), 8);
  return o;
}

// ---- 2 ----------------------------------------------------------------------

Outcome binning_deformation() {
  // Lognormal with the follower parameters; see README for the choice.
  const LognormalModel law(10.45, 2.75);
  constexpr int kRuns = 20;
  constexpr std::size_t kReps = 100;
  int exceed = 0;
  bool gamma_ok = true;
  double gmin = 1e300, gmax = -1e300, worst_run = 0.0;
  std::string ps;
  for (int run = 0; run < kRuns; ++run) {
    const auto start = Clock::now();
    const SeededGenerator gen(9000 + static_cast<std::uint64_t>(run));
    const auto seconds = sample_lognormal(law, 1000000, gen);
    const auto hours = quantize(seconds, 3600.0).sample;

    const auto fit_s = fit_powerlaw_tail(seconds);
    const auto fit_h = fit_powerlaw_tail(hours);
    const double g = gamma_of(fit_h);
    gmin = std::min(gmin, g);
    gmax = std::max(gmax, g);
    gamma_ok = gamma_ok && g >= 1.5 && g <= 2.1;

    const double p_s =
        bootstrap_goodness_of_fit(seconds, fit_s, kReps, gen.substream(1u << 20))
            .p_value;
    const double p_h =
        bootstrap_goodness_of_fit(hours, fit_h, kReps, gen.substream(1u << 21))
            .p_value;
    if (p_h > p_s) ++exceed;
    ps += fmt(p_s, 2) + "/" + fmt(p_h, 2) + " ";
    worst_run = std::max(
        worst_run,
        std::chrono::duration<double>(Clock::now() - start).count());
  }
  Outcome o;
  o.pass = gamma_ok && exceed >= 18 && worst_run < 300.0;
  o.detail = "gamma_hours in [" + fmt(gmin, 4) + ", " + fmt(gmax, 4) +
             "], p_hours > p_seconds in " + std::to_string(exceed) + "/" +
             std::to_string(kRuns) + " runs, slowest run " +
             fmt(worst_run, 3) + " s; p_sec/p_hr: " + ps;
  return o;
}

// ---- 3 ----------------------------------------------------------------------

Outcome effective_exponent_bound() {
  const double sigma = 3.4;
  const double closed = 3.0 * std::log(10.0) / (2.0 * sigma * sigma);
  double worst = 0.0;
  for (double mu : {-2.0, 0.54, 6.43, 10.45}) {
    const LognormalModel m(mu, sigma);
    for (double t = 1e-3; t < 1e9; t *= 7.3) {
      const double variation =
          effective_exponent(m, t * 1000.0) - effective_exponent(m, t);
      worst = std::max(worst, std::fabs(variation - closed));
    }
  }
  Outcome o;
  o.pass = worst <= 1e-12 && closed < 0.3 && std::fabs(closed - 0.2988) < 5e-5;
  o.detail = "closed form " + fmt(closed, 10) + ", max deviation " +
             fmt(worst, 3);
  return o;
}

// ---- 4 ----------------------------------------------------------------------

Outcome estimator_recovery() {
  Outcome o{true, ""};
  const std::pair<double, double> laws[] = {{1.53, 59.0}, {2.03, 12.0}};
  std::uint64_t seed = 404;
  for (const auto& [g, tau] : laws) {
    const auto s = sample_powerlaw(PowerLawModel(g, tau), 100000,
                                   SeededGenerator(seed++));
    const auto f = fit_powerlaw_tail(s);
    const double err = std::fabs(gamma_of(f) - g);
    o.pass = o.pass && err <= 0.01;
    o.detail += "gamma " + fmt(g) + " -> " + fmt(gamma_of(f), 6) +
                " (xmin " + fmt(*f.xmin, 5) + "); ";
  }
  const auto s = sample_lognormal(LognormalModel(10.45, 2.75), 100000,
                                  SeededGenerator(seed));
  const auto m = std::get<LognormalModel>(fit_lognormal(s).model);
  o.pass = o.pass && std::fabs(m.mu() - 10.45) <= 0.03 &&
           std::fabs(m.sigma() - 2.75) <= 0.03;
  o.detail += "lognormal -> mu " + fmt(m.mu(), 6) + " sigma " +
              fmt(m.sigma(), 6);
  return o;
}

// ---- 5 ----------------------------------------------------------------------

Outcome family_discrimination() {
  constexpr int kRuns = 20;
  int ln_negative = 0, pl_positive = 0;
  std::string lrs;
  for (int run = 0; run < kRuns; ++run) {
    const SeededGenerator gen(5000 + static_cast<std::uint64_t>(run));
    const auto ln = sample_lognormal(LognormalModel(10.45, 2.75), 100000,
                                     gen.substream(0));
    const auto pl = sample_powerlaw(PowerLawModel(1.53, 59.0), 100000,
                                    gen.substream(1));
    const auto c_ln = compare_families(ln, *fit_powerlaw_tail(ln).xmin);
    const auto c_pl = compare_families(pl, *fit_powerlaw_tail(pl).xmin);
    if (c_ln.lr < 0.0) ++ln_negative;
    if (c_pl.lr > 0.0) ++pl_positive;
    lrs += fmt(c_ln.lr, 3) + "/" + fmt(c_pl.lr, 3) + " ";
  }
  Outcome o;
  o.pass = ln_negative >= 19 && pl_positive >= 19;
  o.detail = "lognormal LR<0 in " + std::to_string(ln_negative) +
             "/20, power-law LR>0 in " + std::to_string(pl_positive) +
             "/20; LR ln/pl: " + lrs;
  return o;
}

// ---- 6 ----------------------------------------------------------------------

Outcome gibrat_clt() {
  GibratProcess p;
  p.s0 = 1.0;
  p.steps = 400;
  p.agents = 10000;
  p.log_factor = LogFactorLaw::normal(0.01, 0.1);
  const auto traj = run_gibrat(p, SeededGenerator(606));
  auto logs = traj.final_log_sizes();
  std::sort(logs.begin(), logs.end());
  const double mean = std::log(p.s0) + 4.0;
  const double sd = 2.0;
  const double d =
      ks_distance(logs, [&](double x) { return normal_cdf((x - mean) / sd); });
  const double pks = ks_pvalue(d, logs.size());
  const auto m = std::get<LognormalModel>(fit_lognormal(traj.final_sizes()).model);
  const double n = static_cast<double>(logs.size());
  const double se_mu = sd / std::sqrt(n);
  const double se_sigma = sd / std::sqrt(2.0 * n);
  Outcome o;
  o.pass = pks >= 0.01 && std::fabs(m.mu() - mean) <= 3.0 * se_mu &&
           std::fabs(m.sigma() - sd) <= 3.0 * se_sigma;
  o.detail = "KS " + fmt(d, 4) + " p=" + fmt(pks, 4) + "; mu " +
             fmt(m.mu(), 6) + " (3se " + fmt(3 * se_mu, 3) + "), sigma " +
             fmt(m.sigma(), 6) + " (3se " + fmt(3 * se_sigma, 3) + ")";
  return o;
}

// ---- 7 ----------------------------------------------------------------------

Outcome exp_of_exponential() {
  const double gamma = 1.53, tau = 59.0;
  const SeededGenerator gen(707);
  const auto a = sample_exp_of_exponential(gamma, tau, 100000, gen.substream(0));
  const auto b = sample_powerlaw(PowerLawModel(gamma, tau), 100000,
                                 gen.substream(1));
  const double d = ks_distance_two_sample(a.values(), b.values());
  const double p = ks_pvalue_two_sample(d, a.size(), b.size());
  return {p >= 0.01, "two-sample KS " + fmt(d, 4) + " p=" + fmt(p, 4)};
}

// ---- 8 ----------------------------------------------------------------------

Outcome analytic_identities() {
  Outcome o{true, ""};
  // Moments round trip.
  double moments_err = 0.0;
  for (double mu : {-1.0, 0.54, 6.43, 10.45}) {
    for (double sigma : {0.3, 1.0, 2.26, 3.4}) {
      const LognormalModel m(mu, sigma);
      const auto mo = ln_moments(m);
      const auto back = params_from_moments(mo.mean, mo.variance);
      moments_err = std::max({moments_err, std::fabs(back.mu() - mu) / std::fabs(mu),
                              std::fabs(back.sigma() - sigma) / sigma});
    }
  }
  o.pass = o.pass && moments_err <= 1e-10;
  o.detail += "moments " + fmt(moments_err, 3) + "; ";

  // pdf = C t^-alpha(t) and the log-log parabola, compared in log space.
  double alpha_err = 0.0, quad_err = 0.0;
  for (double mu : {0.54, 6.43, 10.45}) {
    for (double sigma : {1.0, 2.75, 3.4}) {
      const LognormalModel m(mu, sigma);
      const auto q = loglog_coefficients(m);
      for (double t = 1e-2; t < 1e8; t *= 3.7) {
        const double lf = std::log(t) * -1.0 - std::pow(std::log(t) - mu, 2) /
                                                   (2.0 * sigma * sigma) -
                          std::log(sigma) - 0.5 * std::log(2.0 * kPi);
        const double via_alpha =
            log_effective_prefactor(m) - effective_exponent(m, t) * std::log(t);
        const double scale = std::max(1.0, std::fabs(lf));
        alpha_err = std::max(alpha_err, std::fabs(via_alpha - lf) / scale);
        quad_err = std::max(quad_err, std::fabs(q(std::log(t)) - lf) / scale);
      }
    }
  }
  o.pass = o.pass && alpha_err <= 1e-12 && quad_err <= 1e-12;
  o.detail += "alpha-pdf " + fmt(alpha_err, 3) + ", log-log " +
              fmt(quad_err, 3) + "; ";

  // Tail probability against Monte Carlo.
  const PowerLawModel pl(1.53, 59.0);
  const double kappa = 59.0 * 100.0;
  const auto draws = draw_powerlaw(pl, 1000000, SeededGenerator(808));
  const double mc =
      static_cast<double>(std::count_if(draws.begin(), draws.end(),
                                        [&](double v) { return v > kappa; })) /
      static_cast<double>(draws.size());
  const double tail_err = std::fabs(mc - pl.tail_probability(kappa));
  o.pass = o.pass && tail_err <= 0.003;
  o.detail += "tail prob " + fmt(pl.tail_probability(kappa), 6) + " vs MC " +
              fmt(mc, 6) + "; ";

  // Expected against observed histogram counts. Bins expecting fewer than
  // ten counts are pooled into one cell before the 4-sigma check.
  const LognormalModel ln(3.0, 1.2);
  const auto s = sample_lognormal(ln, 1000000, SeededGenerator(809));
  const auto h = bin_log(s, 10);
  const auto expected = expected_counts(ln, h);
  double worst_z = 0.0, pooled_e = 0.0, pooled_o = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double e = expected[j];
    const double obs = static_cast<double>(h[j].count);
    if (e < 10.0) {
      pooled_e += e;
      pooled_o += obs;
      continue;
    }
    worst_z = std::max(worst_z, std::fabs(obs - e) / std::sqrt(e));
  }
  if (pooled_e > 0.0) {
    worst_z = std::max(worst_z, std::fabs(pooled_o - pooled_e) / std::sqrt(pooled_e));
  }
  o.pass = o.pass && worst_z <= 4.0;
  o.detail += "histogram max |z| " + fmt(worst_z, 4);
  return o;
}

// ---- 9 ----------------------------------------------------------------------

struct ProcessResult {
  int status = -1;
  long max_rss_kb = 0;
};

ProcessResult run_process(const std::vector<std::string>& args,
                          const std::string& stdout_path) {
  const pid_t pid = fork();
  if (pid == 0) {
    if (!stdout_path.empty()) {
      if (!std::freopen(stdout_path.c_str(), "w", stdout)) _exit(127);
    }
    std::vector<char*> argv;
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execv(argv[0], argv.data());
    _exit(127);
  }
  ProcessResult r;
  int status = 0;
  struct rusage usage {};
  if (pid > 0 && wait4(pid, &status, 0, &usage) == pid) {
    r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.max_rss_kb = usage.ru_maxrss;
  }
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome pipeline_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() /
                       ("tailfit_acceptance_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::string cli = TAILFIT_CLI_PATH;
  const std::string events = (dir / "events.csv").string();
  long peak = 0;
  bool ok = true;

  auto step = [&](const std::vector<std::string>& args, const std::string& out) {
    const auto r = run_process(args, out);
    peak = std::max(peak, r.max_rss_kb);
    ok = ok && r.status == 0;
  };
  step({cli, "simulate", "--seed", "99", "-o", events, "events", "--actors",
        "100000", "--events", "10000000", "--mu", "10.45", "--sigma", "2.75"},
       "");
  std::string fits[2];
  for (int k = 0; k < 2; ++k) {
    const std::string durations = (dir / ("d" + std::to_string(k) + ".bin")).string();
    const std::string fit = (dir / ("fit" + std::to_string(k) + ".jsonl")).string();
    step({cli, "--format", "bin", "ingest", "--events", events, "-o", durations,
          "--summary", (dir / ("summary" + std::to_string(k) + ".json")).string()},
         "");
    step({cli, "fit", "-i", durations, "--dist", "both", "--bootstrap", "100",
          "--seed", "7", "-o", fit},
         "");
    fits[k] = slurp(durations) + slurp(fit) +
              slurp((dir / ("summary" + std::to_string(k) + ".json")).string());
  }
  const std::string row = slurp((dir / "fit0.jsonl").string());
  const bool identical = !fits[0].empty() && fits[0] == fits[1];
  fs::remove_all(dir);
  const double peak_gb = static_cast<double>(peak) / (1024.0 * 1024.0);
  Outcome o;
  o.pass = ok && identical && peak_gb < 4.0;
  o.detail = std::string("exit codes ") + (ok ? "ok" : "FAILED") +
             ", outputs " + (identical ? "byte-identical" : "DIFFER") +
             ", peak RSS " + fmt(peak_gb, 3) + " GB; row " +
             row.substr(0, row.find('\n'));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "sigma invariance under rescaling", 10.0, sigma_invariance},
      {2, "binning deformation", 20 * 300.0, binning_deformation},
      {3, "effective-exponent bound", 1.0, effective_exponent_bound},
      {4, "estimator recovery", 3 * 30.0, estimator_recovery},
      {5, "family discrimination", 120.0, family_discrimination},
      {6, "Gibrat process and CLT", 30.0, gibrat_clt},
      {7, "power law from exponential", 5.0, exp_of_exponential},
      {8, "analytic identities", 60.0, analytic_identities},
      {9, "pipeline determinism and scale", 600.0, pipeline_determinism},
  };
  // Optional criterion ids on the command line restrict the run.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    const bool pass = o.pass && elapsed < c.limit_seconds;
    if (!pass) ++failures;
    std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL")
              << " " << c.name << " [" << fmt(elapsed, 3) << " s of "
              << fmt(c.limit_seconds, 4) << " s] " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
