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
#include <string>
#include <vector>

#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/special.hpp"

namespace tailfit {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::powerlaw:
      return "powerlaw";
    case Verdict::lognormal:
      return "lognormal";
    case Verdict::undecided:
      break;
  }
  return "undecided";
}

ComparisonReport compare_log_densities(std::span<const double> log_powerlaw,
                                       std::span<const double> log_lognormal,
                                       double threshold) {
  if (log_powerlaw.size() != log_lognormal.size()) {
    throw ParameterError("log-density arrays differ in length");
  }
  const std::size_t n = log_powerlaw.size();
  if (n < 2) {
    throw InsufficientDataError("likelihood-ratio test needs two tail values");
  }
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw ParameterError("verdict threshold must lie in (0, 1)");
  }
  long double sum = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    sum += static_cast<long double>(log_powerlaw[i] - log_lognormal[i]);
  }
  const long double mean = sum / static_cast<long double>(n);
  long double sq = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double d =
        static_cast<long double>(log_powerlaw[i] - log_lognormal[i]) - mean;
    sq += d * d;
  }
  ComparisonReport r;
  r.n_tail = n;
  r.n_total = n;
  r.lr = static_cast<double>(sum);
  const double sd = std::sqrt(static_cast<double>(sq / static_cast<long double>(n)));
  if (sd > 0.0) {
    r.normalized = r.lr / (sd * std::sqrt(static_cast<double>(n)));
    r.p_value = two_sided_normal_pvalue(r.normalized);
  } else {
    r.normalized = 0.0;
    r.p_value = 1.0;
  }
  if (r.p_value < threshold && r.lr > 0.0) {
    r.verdict = Verdict::powerlaw;
  } else if (r.p_value < threshold && r.lr < 0.0) {
    r.verdict = Verdict::lognormal;
  }
  return r;
}

ComparisonReport compare_families(const DurationSample& sample, double xmin,
                                  double threshold,
                                  const LognormalFitOptions& lognormal) {
  if (!(xmin > 0.0) || !std::isfinite(xmin)) {
    throw ParameterError("xmin must be positive and finite");
  }
  const auto values = sample.values();
  const auto first = std::lower_bound(values.begin(), values.end(), xmin);
  const auto tail = values.subspan(static_cast<std::size_t>(first - values.begin()));
  if (tail.size() < 2) {
    throw InsufficientDataError("comparison needs two values >= xmin, got " +
                                std::to_string(tail.size()));
  }

  PowerLawFitOptions pl_options;
  pl_options.xmin = xmin;
  const FitReport pl_fit = fit_powerlaw_tail(sample, pl_options);
  LognormalFitOptions ln_options = lognormal;
  ln_options.xmin = xmin;
  const FitReport ln_fit = fit_lognormal(sample, ln_options);
  const auto& pl = std::get<PowerLawModel>(pl_fit.model);
  const auto& ln = std::get<LognormalModel>(ln_fit.model);

  // Both densities are normalized on [xmin, inf).
  const double log_sf_xmin = ln.log_sf(xmin);
  std::vector<double> lp(tail.size()), ll(tail.size());
  for (std::size_t i = 0; i < tail.size(); ++i) {
    lp[i] = pl.log_pdf(tail[i]);
    ll[i] = ln.log_pdf(tail[i]) - log_sf_xmin;
  }
  ComparisonReport r = compare_log_densities(lp, ll, threshold);
  r.xmin = xmin;
  r.n_total = sample.size();
  r.powerlaw = pl;
  r.lognormal = ln;
  return r;
}

}  // namespace tailfit
