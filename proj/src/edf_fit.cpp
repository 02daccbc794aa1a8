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

#include <cmath>
#include <vector>

#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/optimize.hpp"
#include "tailfit/special.hpp"

namespace tailfit {

EdfNormalFit fit_edf_normal(const DurationSample& sample,
                            const EdfFitOptions& options) {
  const std::size_t n = sample.size();
  if (n < 2) throw InsufficientDataError("EDF fit needs at least two values");
  const std::vector<double> y = sample.log_values();

  // Distinct log-values with the EDF level reached at each.
  std::vector<double> at, level;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 < n && y[i + 1] == y[i]) continue;
    at.push_back(y[i]);
    level.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
  }
  std::vector<double> weight(at.size());
  for (std::size_t k = 0; k < at.size(); ++k) {
    weight[k] = level[k] - (k == 0 ? 0.0 : level[k - 1]);
  }
  if (at.size() < 2) throw DegenerateSampleError("all values are equal");

  long double sum = 0.0L;
  for (double v : y) sum += v;
  const double mean = static_cast<double>(sum / static_cast<long double>(n));
  long double sq = 0.0L;
  for (double v : y) sq += (v - mean) * static_cast<long double>(v - mean);
  const double sd = std::sqrt(static_cast<double>(sq / static_cast<long double>(n)));

  // Squared residuals summed over every sample point; tied points share a
  // residual, hence the weights.
  auto objective = [&](std::span<const double> p) {
    double total = 0.0;
    for (std::size_t k = 0; k < at.size(); ++k) {
      const double r = normal_cdf((at[k] - p[0]) / p[1]) - level[k];
      total += weight[k] * r * r;
    }
    return total;
  };
  const Box box{{mean - 10.0 * sd, 1e-3 * sd}, {mean + 10.0 * sd, 10.0 * sd}};
  auto first = nelder_mead(objective, {mean, sd}, {0.1 * sd, 0.1 * sd}, box,
                           1e-9 * sd, 1e-15, 20000);
  auto second = nelder_mead(objective, first.x, {0.01 * sd, 0.01 * sd}, box,
                            1e-9 * sd, 1e-15, 20000);
  const auto& best = second.value <= first.value ? second : first;

  EdfNormalFit fit;
  fit.mu = best.x[0];
  fit.sigma = best.x[1];
  fit.mle_mu = mean;
  fit.mle_sigma = sd;
  fit.max_deviation = ks_distance(y, [&](double v) {
    return normal_cdf((v - fit.mu) / fit.sigma);
  });
  fit.low_confidence = n < options.min_confident_size;
  fit.misfit = std::fabs(fit.mu - mean) > options.agreement_tolerance ||
               std::fabs(fit.sigma - sd) > options.agreement_tolerance;
  return fit;
}

}  // namespace tailfit
