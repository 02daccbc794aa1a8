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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/parallel.hpp"
#include "tailfit/special.hpp"
#include "tailfit/synthesis.hpp"

namespace tailfit {
namespace {

TEST(SeededGenerator, Reproducible) {
  SeededGenerator a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

TEST(SeededGenerator, UniformIsOpen) {
  SeededGenerator g(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(SeededGenerator, SubstreamsDiffer) {
  const SeededGenerator g(7);
  auto a = g.substream(0), b = g.substream(1), a2 = g.substream(0);
  EXPECT_NE(a.next_u64(), b.next_u64());
  a = g.substream(0);
  EXPECT_EQ(a.next_u64(), a2.next_u64());
}

TEST(SampleLognormal, RecoversParameters) {
  const auto s = sample_lognormal(LognormalModel(10.0, 2.0), 1000000, SeededGenerator(1));
  const auto m = std::get<LognormalModel>(fit_lognormal(s).model);
  EXPECT_NEAR(m.mu(), 10.0, 0.01);
  EXPECT_NEAR(m.sigma(), 2.0, 0.01);
}

TEST(SampleLognormal, DegenerateLimit) {
  const auto s = sample_lognormal(LognormalModel(5.0, 1e-9), 100, SeededGenerator(2));
  for (double v : s.values()) EXPECT_NEAR(v / std::exp(5.0), 1.0, 1e-6);
}

TEST(SampleLognormal, LogsAreStandardNormal) {
  const auto s = sample_lognormal(LognormalModel(0.0, 1.0), 100000, SeededGenerator(3));
  const auto logs = s.log_values();
  // Independent oracle: KS against erfc-based Phi.
  double d = 0.0;
  const double n = static_cast<double>(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const double f = 0.5 * std::erfc(-logs[i] / std::sqrt(2.0));
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  EXPECT_GT(ks_pvalue(d, logs.size()), 0.01);
}

TEST(SampleLognormal, EmptyIsError) {
  EXPECT_THROW(sample_lognormal(LognormalModel(0.0, 1.0), 0, SeededGenerator(1)),
               EmptySampleError);
}

TEST(SamplePowerLaw, TailFrequency) {
  const auto s = sample_powerlaw(PowerLawModel(2.0, 1.0), 1000000, SeededGenerator(4));
  const auto v = s.values();
  const auto above = v.end() - std::upper_bound(v.begin(), v.end(), 10.0);
  EXPECT_NEAR(static_cast<double>(above) / 1e6, 0.1, 0.001);
  EXPECT_GE(s.min(), 1.0);
}

TEST(SamplePowerLaw, QuantileAtZeroIsTau) {
  EXPECT_EQ(PowerLawModel(1.53, 59.0).quantile(0.0), 59.0);
}

TEST(SamplePowerLaw, MleRecovers) {
  const auto s = sample_powerlaw(PowerLawModel(1.53, 59.0), 100000, SeededGenerator(5));
  EXPECT_NEAR(powerlaw_exponent_mle(s.values(), 59.0), 1.53, 0.01);
}

TEST(ExpOfExponential, MinimumIsTau) {
  EXPECT_DOUBLE_EQ(exp_of_exponential_value(1.53, 59.0, 0.0), 59.0);
  EXPECT_THROW(draw_exp_of_exponential(1.0, 1.0, 10, SeededGenerator(1)), ParameterError);
}

TEST(ExpOfExponential, MemorylessLogarithm) {
  const double tau = 5.0;
  const auto s = sample_exp_of_exponential(1.8, tau, 1000000, SeededGenerator(6));
  std::vector<double> logs = s.log_values();
  auto frac_above = [&](double x) {
    return static_cast<double>(logs.end() - std::lower_bound(logs.begin(), logs.end(), x));
  };
  const double l0 = std::log(tau);
  for (double u : {l0 + 0.5, l0 + 1.0}) {
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      const double conditional = frac_above(u + t) /
          static_cast<double>(logs.end() - std::upper_bound(logs.begin(), logs.end(), u));
      const double fresh = frac_above(l0 + t) / static_cast<double>(logs.size());
      EXPECT_NEAR(conditional, fresh, 0.02);
    }
  }
}

TEST(Gibrat, ConstantFactorKeepsSize) {
  GibratProcess p;
  p.s0 = 3.5;
  p.steps = 50;
  p.agents = 4;
  p.log_factor = LogFactorLaw::normal(0.0, 0.0);
  const auto t = run_gibrat(p, SeededGenerator(1));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t k = 0; k <= 50; ++k) EXPECT_DOUBLE_EQ(t.size(a, k), 3.5);
  }
}

TEST(Gibrat, CentralLimit) {
  GibratProcess p;
  p.steps = 400;
  p.agents = 10000;
  p.log_factor = LogFactorLaw::normal(0.01, 0.1);
  auto logs = run_gibrat(p, SeededGenerator(8)).final_log_sizes();
  std::sort(logs.begin(), logs.end());
  const double d = ks_distance(logs, [](double x) {
    return 0.5 * std::erfc(-(x - 4.0) / (2.0 * std::sqrt(2.0)));
  });
  EXPECT_GT(ks_pvalue(d, logs.size()), 0.01);
}

TEST(Gibrat, Errors) {
  GibratProcess p;
  p.s0 = 0.0;
  EXPECT_THROW(run_gibrat(p, SeededGenerator(1)), ParameterError);
  EXPECT_THROW(LogFactorLaw::normal(0.0, -1.0), ParameterError);
}

// ---- properties -------------------------------------------------------------

TEST(SynthesisProperties, IndependentOfThreadCount) {
  const std::size_t saved = max_threads();
  set_max_threads(1);
  const auto a = draw_lognormal(LognormalModel(1.0, 2.0), 300000, SeededGenerator(9));
  GibratProcess p;
  p.steps = 30;
  p.agents = 500;
  const auto ga = run_gibrat(p, SeededGenerator(9)).final_log_sizes();
  set_max_threads(4);
  const auto b = draw_lognormal(LognormalModel(1.0, 2.0), 300000, SeededGenerator(9));
  const auto gb = run_gibrat(p, SeededGenerator(9)).final_log_sizes();
  set_max_threads(saved);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ga, gb);
}

TEST(SynthesisProperties, Support) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (double v : draw_lognormal(LognormalModel(-3.0, 4.0), 20000, SeededGenerator(seed))) {
      ASSERT_GT(v, 0.0);
    }
    for (double v : draw_powerlaw(PowerLawModel(1.05, 2.0), 20000, SeededGenerator(seed))) {
      ASSERT_GE(v, 2.0);
      ASSERT_TRUE(std::isfinite(v));
    }
  }
}

TEST(SynthesisProperties, SortedDrawsMatchLaw) {
  SeededGenerator g(10);
  const PowerLawModel m(2.5, 3.0);
  const auto v = sorted_powerlaw_draws(m, 50000, g);
  ASSERT_TRUE(std::is_sorted(v.begin(), v.end()));
  EXPECT_GT(ks_pvalue(ks_distance(v, [&](double t) { return m.cdf(t); }), v.size()), 0.01);
}

TEST(SyntheticEventLog, DeterministicCsv) {
  std::ostringstream a, b;
  write_synthetic_event_log(a, 3, 100, LognormalModel(3.0, 1.0), SeededGenerator(11));
  write_synthetic_event_log(b, 3, 100, LognormalModel(3.0, 1.0), SeededGenerator(11));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().rfind("actor,timestamp\n", 0), 0u);
  const std::string text = a.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 101);
}

}  // namespace
}  // namespace tailfit
