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
#include <cstdint>
#include <string>

#include "tailfit/binning.hpp"
#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/parallel.hpp"
#include "tailfit/special.hpp"
#include "tailfit/synthesis.hpp"

namespace tailfit {

namespace {

void require_reps(std::size_t reps) {
  if (reps < kMinBootstrapReps) {
    throw ParameterError("bootstrap needs at least " +
                         std::to_string(kMinBootstrapReps) +
                         " replicates, got " + std::to_string(reps));
  }
}

// `count` ascending draws from the fitted tail law, i.e. the model
// conditioned on x >= xmin.
std::vector<double> sorted_tail_draws(const FitReport& fit, std::size_t count,
                                      SeededGenerator& gen) {
  if (const auto* pl = std::get_if<PowerLawModel>(&fit.model)) {
    return sorted_powerlaw_draws(*pl, count, gen);
  }
  const auto& ln = std::get<LognormalModel>(fit.model);
  std::vector<double> out(count);
  if (fit.xmin) {
    const double xmin = *fit.xmin;
    const double survival = ln.sf(xmin);
    for (double& v : out) {
      // Upper-tail inversion keeps precision when survival is tiny.
      const double z = -normal_quantile(gen.uniform() * survival);
      v = std::max(xmin, std::exp(ln.mu() + ln.sigma() * z));
    }
  } else {
    for (double& v : out) {
      v = std::exp(ln.mu() + ln.sigma() * gen.standard_normal());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BootstrapResult summarize(std::vector<double> ks, double observed) {
  BootstrapResult r;
  r.reps = ks.size();
  r.exceedances = static_cast<std::size_t>(
      std::count_if(ks.begin(), ks.end(),
                    [observed](double d) { return d >= observed; }));
  r.p_value = static_cast<double>(r.exceedances) / static_cast<double>(r.reps);
  r.precision = bootstrap_precision(r.reps);
  r.ks_values = std::move(ks);
  return r;
}

// One replicate of the semi-parametric scheme: which body index each
// non-tail draw picked, and how many draws went to the tail.
struct Split {
  std::vector<std::uint32_t> body_counts;
  std::size_t tail = 0;
};

Split split_draws(std::size_t n_total, std::size_t n_body, double p_tail,
                  SeededGenerator& gen) {
  Split s;
  s.body_counts.assign(n_body, 0);
  for (std::size_t i = 0; i < n_total; ++i) {
    if (n_body == 0 || gen.uniform() < p_tail) {
      ++s.tail;
    } else {
      ++s.body_counts[gen.uniform_index(n_body)];
    }
  }
  return s;
}

}  // namespace

double bootstrap_precision(std::size_t reps) {
  if (reps == 0) throw ParameterError("bootstrap precision needs reps > 0");
  return 0.5 / std::sqrt(static_cast<double>(reps));
}

BootstrapResult bootstrap_goodness_of_fit(
    const DurationSample& sample, const FitReport& fit, std::size_t reps,
    const SeededGenerator& gen, const PowerLawFitOptions& powerlaw,
    const LognormalFitOptions& lognormal) {
  require_reps(reps);
  if (fit.binned) {
    throw ParameterError("binned fits are bootstrapped from their histogram");
  }
  const auto values = sample.values();
  const std::size_t n = values.size();
  const std::size_t n_body =
      fit.xmin ? static_cast<std::size_t>(
                     std::lower_bound(values.begin(), values.end(), *fit.xmin) -
                     values.begin())
               : 0;
  const double p_tail =
      static_cast<double>(n - n_body) / static_cast<double>(n);
  const double resolution = sample.resolution();

  PowerLawFitOptions pl_options = powerlaw;
  pl_options.xmin = fit.xmin_fixed ? fit.xmin : std::nullopt;
  LognormalFitOptions ln_options = lognormal;
  ln_options.xmin = fit.xmin;

  std::vector<double> ks(reps);
  parallel_for(reps, [&](std::size_t r) {
    SeededGenerator local = gen.substream(r);
    const Split split = split_draws(n, n_body, p_tail, local);
    std::vector<double> synthetic;
    synthetic.reserve(n);
    for (std::size_t i = 0; i < n_body; ++i) {
      synthetic.insert(synthetic.end(), split.body_counts[i], values[i]);
    }
    const std::size_t body_end = synthetic.size();
    for (double v : sorted_tail_draws(fit, split.tail, local)) {
      // Synthetic values are stored at the resolution of the data.
      if (resolution > 0.0) v = std::max(resolution, truncate_to_step(v, resolution));
      synthetic.push_back(v);
    }
    if (body_end > 0 && body_end < synthetic.size() &&
        synthetic[body_end] < synthetic[body_end - 1]) {
      std::sort(synthetic.begin(), synthetic.end());
    }
    const auto replicate = DurationSample::from_sorted(
        std::move(synthetic), sample.unit(), resolution);
    const FitReport refit = fit.family() == Family::powerlaw
                                ? fit_powerlaw_tail(replicate, pl_options)
                                : fit_lognormal(replicate, ln_options);
    ks[r] = refit.ks;
  });
  return summarize(std::move(ks), fit.ks);
}

BootstrapResult bootstrap_goodness_of_fit(const Histogram& histogram,
                                          const FitReport& fit,
                                          std::size_t reps,
                                          const SeededGenerator& gen,
                                          const BinnedFitOptions& options) {
  require_reps(reps);
  std::vector<Bin> body;
  std::uint64_t n_body = 0;
  for (const Bin& b : histogram.bins()) {
    if (b.count == 0) continue;
    if (fit.xmin && b.left < *fit.xmin) {
      body.push_back(b);
      n_body += b.count;
    }
  }
  const std::uint64_t n = histogram.total();
  const double p_tail = static_cast<double>(n - n_body) / static_cast<double>(n);
  std::vector<std::uint64_t> cumulative(body.size());
  std::uint64_t running = 0;
  for (std::size_t j = 0; j < body.size(); ++j) {
    running += body[j].count;
    cumulative[j] = running;
  }

  BinnedFitOptions refit_options = options;
  refit_options.xmin =
      fit.xmin_fixed || fit.family() == Family::lognormal ? fit.xmin
                                                          : std::nullopt;
  const BinScheme& scheme = histogram.scheme();

  std::vector<double> ks(reps);
  parallel_for(reps, [&](std::size_t r) {
    SeededGenerator local = gen.substream(r);
    std::vector<std::uint64_t> body_counts(body.size(), 0);
    std::size_t tail = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      if (n_body == 0 || local.uniform() < p_tail) {
        ++tail;
      } else {
        const std::uint64_t k = local.uniform_index(n_body);
        const auto it =
            std::upper_bound(cumulative.begin(), cumulative.end(), k);
        ++body_counts[static_cast<std::size_t>(it - cumulative.begin())];
      }
    }
    std::vector<Bin> bins;
    for (std::size_t j = 0; j < body.size(); ++j) {
      if (body_counts[j] > 0) {
        bins.push_back(Bin{body[j].left, body[j].right, body_counts[j]});
      }
    }
    std::int64_t current = 0;
    bool open = false;
    for (double v : sorted_tail_draws(fit, tail, local)) {
      const std::int64_t k = grid_index(scheme, v);
      if (!open || k != current) {
        bins.push_back(Bin{grid_edge(scheme, k), grid_edge(scheme, k + 1), 0});
        current = k;
        open = true;
      }
      ++bins.back().count;
    }
    const Histogram replicate(scheme, std::move(bins), histogram.unit());
    ks[r] = fit_binned(replicate, fit.family(), refit_options).ks;
  });
  return summarize(std::move(ks), fit.ks);
}

double bootstrap_pvalue(const DurationSample& sample, const FitReport& fit,
                        std::size_t reps, const SeededGenerator& gen,
                        const PowerLawFitOptions& powerlaw) {
  return bootstrap_goodness_of_fit(sample, fit, reps, gen, powerlaw).p_value;
}

}  // namespace tailfit
