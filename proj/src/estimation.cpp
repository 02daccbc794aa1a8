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

#include "tailfit/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "estimation_detail.hpp"
#include "tailfit/error.hpp"
#include "tailfit/optimize.hpp"
#include "tailfit/special.hpp"

namespace tailfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Every value of `sorted` from the first one >= xmin on.
std::span<const double> tail_of(std::span<const double> sorted, double xmin) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), xmin);
  return sorted.subspan(static_cast<std::size_t>(it - sorted.begin()));
}

// Start index of every run of equal values.
std::vector<std::size_t> group_starts(std::span<const double> sorted) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i == 0 || sorted[i] != sorted[i - 1]) starts.push_back(i);
  }
  return starts;
}

// Scan state shared by every cutoff candidate of one sample.
class PowerLawScan {
 public:
  explicit PowerLawScan(std::span<const double> sorted)
      : n_(sorted.size()), starts_(group_starts(sorted)) {
    logx_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) logx_[i] = std::log(sorted[i]);
    suffix_.assign(n_ + 1, 0.0L);
    for (std::size_t i = n_; i-- > 0;) {
      suffix_[i] = suffix_[i + 1] + static_cast<long double>(logx_[i]);
    }
  }

  std::size_t groups() const { return starts_.size(); }
  std::size_t start(std::size_t g) const { return starts_[g]; }
  std::size_t tail_size(std::size_t g) const { return n_ - starts_[g]; }

  // gamma - 1 for the tail beginning at group g.
  double shape(std::size_t g) const {
    const std::size_t a = starts_[g];
    const long double nt = static_cast<long double>(n_ - a);
    const long double sum = suffix_[a] - nt * logx_[a];
    return static_cast<double>(nt / sum);
  }

  double log_sum(std::size_t g) const {
    const std::size_t a = starts_[g];
    return static_cast<double>(suffix_[a] -
                               static_cast<long double>(n_ - a) * logx_[a]);
  }

  // KS distance of group g's tail against its fitted law, or +inf as soon
  // as any deviation exceeds `bound`.
  double ks(std::size_t g, double s, double bound) const {
    const std::size_t a = starts_[g];
    const double lx0 = logx_[a];
    const double inv = 1.0 / static_cast<double>(n_ - a);
    const std::size_t count = starts_.size();
    auto deviation = [&](std::size_t h) {
      const std::size_t lo = starts_[h];
      const std::size_t hi = h + 1 < count ? starts_[h + 1] : n_;
      const double f = -std::expm1(-s * (logx_[lo] - lx0));
      return std::max(f - static_cast<double>(lo - a) * inv,
                      static_cast<double>(hi - a) * inv - f);
    };
    // Sparse passes first: any single deviation is a lower bound.
    for (std::size_t points : {16u, 256u, 4096u}) {
      const std::size_t span = count - g;
      if (span <= 4 * points) break;
      const std::size_t stride = span / points;
      for (std::size_t h = g + stride / 2; h < count; h += stride) {
        if (deviation(h) > bound) return kInf;
      }
    }
    double distance = 0.0;
    for (std::size_t h = g; h < count; ++h) {
      const double d = deviation(h);
      if (d > bound) return kInf;
      distance = std::max(distance, d);
    }
    return distance;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> starts_;
  std::vector<double> logx_;
  std::vector<long double> suffix_;
};

double powerlaw_loglik(std::size_t n_tail, double gamma, double xmin,
                       double log_sum) {
  const double nt = static_cast<double>(n_tail);
  return nt * std::log(gamma - 1.0) - nt * std::log(xmin) - gamma * log_sum;
}

FitReport powerlaw_fixed_xmin(const DurationSample& sample, double xmin) {
  if (!(xmin > 0.0) || !std::isfinite(xmin)) {
    throw ParameterError("xmin must be positive and finite");
  }
  const auto tail = tail_of(sample.values(), xmin);
  if (tail.empty()) {
    throw InsufficientDataError("no values at or above xmin=" +
                                std::to_string(xmin));
  }
  long double sum = 0.0L;
  const double lxmin = std::log(xmin);
  for (double v : tail) sum += static_cast<long double>(std::log(v) - lxmin);
  if (!(sum > 0.0L)) {
    throw DegenerateSampleError("every tail value equals xmin");
  }
  const double log_sum = static_cast<double>(sum);
  const double gamma =
      1.0 + static_cast<double>(static_cast<long double>(tail.size()) / sum);
  FitReport r{.model = PowerLawModel(gamma, xmin)};
  r.xmin = xmin;
  r.xmin_fixed = true;
  r.n_tail = tail.size();
  r.n_total = sample.size();
  r.ks = ks_distance(tail, r.model);
  r.loglik = powerlaw_loglik(tail.size(), gamma, xmin, log_sum);
  return r;
}

}  // namespace

std::string_view to_string(Family family) {
  return family == Family::powerlaw ? "powerlaw" : "lognormal";
}

Family parse_family(std::string_view name) {
  if (name == "powerlaw") return Family::powerlaw;
  if (name == "lognormal") return Family::lognormal;
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

EmpiricalCdf::EmpiricalCdf(std::span<const double> sorted_values)
    : values_(sorted_values.begin(), sorted_values.end()) {
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw ParameterError("EmpiricalCdf needs ascending values");
  }
}

double EmpiricalCdf::operator()(double t) const {
  if (values_.empty()) return 0.0;
  const auto it = std::upper_bound(values_.begin(), values_.end(), t);
  return static_cast<double>(it - values_.begin()) /
         static_cast<double>(values_.size());
}

EmpiricalCdf edf(const DurationSample& sample) {
  return EmpiricalCdf(sample.values());
}

double ks_distance(std::span<const double> sorted, const Model& model) {
  return std::visit(
      [&](const auto& m) {
        return ks_distance(sorted, [&m](double t) { return m.cdf(t); });
      },
      model);
}

double ks_distance_two_sample(std::span<const double> a,
                              std::span<const double> b) {
  if (a.empty() || b.empty()) return 0.0;
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double distance = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == t) ++i;
    while (j < b.size() && b[j] == t) ++j;
    distance = std::max(distance, std::fabs(static_cast<double>(i) / na -
                                            static_cast<double>(j) / nb));
  }
  return distance;
}

double powerlaw_exponent_mle(std::span<const double> tail, double xmin) {
  if (tail.empty()) throw InsufficientDataError("empty tail");
  if (!(xmin > 0.0)) throw ParameterError("xmin must be positive");
  long double sum = 0.0L;
  const double lxmin = std::log(xmin);
  for (double v : tail) {
    if (v < xmin) throw DomainError("tail value below xmin");
    sum += static_cast<long double>(std::log(v) - lxmin);
  }
  if (!(sum > 0.0L)) throw DegenerateSampleError("every tail value equals xmin");
  return 1.0 + static_cast<double>(static_cast<long double>(tail.size()) / sum);
}

FitReport fit_powerlaw_tail(const DurationSample& sample,
                            const PowerLawFitOptions& options) {
  if (options.xmin) return powerlaw_fixed_xmin(sample, *options.xmin);

  const auto values = sample.values();
  const PowerLawScan scan(values);
  const std::size_t groups = scan.groups();
  if (groups == 1) {
    throw DegenerateSampleError("all " + std::to_string(sample.size()) +
                                " values are equal");
  }
  const std::size_t min_tail = std::max<std::size_t>(options.min_tail, 2);
  if (groups < min_tail) {
    throw InsufficientDataError(
        "power-law cutoff scan needs at least " + std::to_string(min_tail) +
        " distinct values, got " + std::to_string(groups));
  }

  // Admissible cutoffs: tails of at least min_tail points spanning two or
  // more distinct values.
  std::vector<std::size_t> candidates;
  for (std::size_t g = 0; g + 1 < groups; ++g) {
    if (scan.tail_size(g) < min_tail) break;
    candidates.push_back(g);
  }
  if (candidates.empty()) {
    throw InsufficientDataError("no cutoff leaves a tail of " +
                                std::to_string(min_tail) + " values");
  }
  const std::size_t max_c = std::max<std::size_t>(options.max_candidates, 2);
  if (candidates.size() > max_c) {
    std::vector<std::size_t> thinned(max_c);
    const double step = static_cast<double>(candidates.size() - 1) /
                        static_cast<double>(max_c - 1);
    for (std::size_t k = 0; k < max_c; ++k) {
      thinned[k] = candidates[static_cast<std::size_t>(
          std::llround(static_cast<double>(k) * step))];
    }
    candidates = std::move(thinned);
  }

  // Exact search: a candidate is abandoned only once one of its deviations
  // strictly exceeds a KS distance already achieved, so it cannot be the
  // minimizer, nor tie with it. Visiting a coarse subset first makes the
  // bound tight early; the result does not depend on the order.
  const std::size_t c = candidates.size();
  std::vector<double> ks(c, kInf);
  std::vector<char> done(c, 0);
  double best = kInf;
  auto visit = [&](std::size_t k) {
    if (done[k]) return;
    done[k] = 1;
    const std::size_t g = candidates[k];
    const double s = scan.shape(g);
    if (!(s > 0.0) || !std::isfinite(s)) return;
    ks[k] = scan.ks(g, s, best);
    best = std::min(best, ks[k]);
  };
  constexpr std::size_t kCoarse = 32;
  for (std::size_t k = c; k-- > 0;) {
    if ((c - 1 - k) % kCoarse == 0) visit(k);
  }
  for (std::size_t k = c; k-- > 0;) visit(k);

  std::size_t chosen = c;
  for (std::size_t k = 0; k < c; ++k) {
    if (ks[k] < kInf && (chosen == c || ks[k] < ks[chosen])) chosen = k;
  }
  if (chosen == c) {
    throw InsufficientDataError("no admissible power-law cutoff");
  }

  const std::size_t g = candidates[chosen];
  const double xmin = values[scan.start(g)];
  const double gamma = 1.0 + scan.shape(g);
  FitReport r{.model = PowerLawModel(gamma, xmin)};
  r.xmin = xmin;
  r.n_tail = scan.tail_size(g);
  r.n_total = sample.size();
  r.ks = ks[chosen];
  r.loglik = powerlaw_loglik(r.n_tail, gamma, xmin, scan.log_sum(g));
  return r;
}

double truncated_lognormal_loglik(std::span<const double> tail, double xmin,
                                  const LognormalModel& model) {
  const auto stats = detail::LogStats::of(tail);
  return detail::truncated_lognormal_loglik(stats, xmin > 0.0 ? std::log(xmin)
                                                              : -kInf,
                                            model.mu(), model.sigma());
}

FitReport fit_lognormal(const DurationSample& sample,
                        const LognormalFitOptions& options) {
  const auto values = sample.values();
  if (!options.xmin) {
    if (sample.size() < 2) {
      throw InsufficientDataError("lognormal fit needs at least two values");
    }
    const auto stats = detail::LogStats::of(values);
    if (!(stats.centered_squares > 0.0)) {
      throw DegenerateSampleError("all values are equal");
    }
    const double sigma = std::sqrt(stats.centered_squares /
                                   static_cast<double>(stats.n));
    FitReport r{.model = LognormalModel(stats.mean, sigma)};
    r.n_tail = sample.size();
    r.n_total = sample.size();
    r.ks = ks_distance(values, r.model);
    r.loglik = detail::truncated_lognormal_loglik(stats, -kInf, stats.mean,
                                                  sigma);
    return r;
  }

  const double xmin = *options.xmin;
  if (!(xmin > 0.0) || !std::isfinite(xmin)) {
    throw ParameterError("xmin must be positive and finite");
  }
  const auto tail = tail_of(values, xmin);
  if (tail.size() < 2) {
    throw InsufficientDataError("truncated lognormal fit needs two values >= "
                                "xmin, got " + std::to_string(tail.size()));
  }
  const auto fitted =
      detail::fit_truncated_lognormal(detail::LogStats::of(tail),
                                      std::log(xmin), options);
  FitReport r{.model = fitted};
  r.xmin = xmin;
  r.xmin_fixed = true;
  r.n_tail = tail.size();
  r.n_total = sample.size();
  const double log_sf_xmin = fitted.log_sf(xmin);
  r.ks = ks_distance(tail, [&](double t) {
    return 1.0 - std::exp(fitted.log_sf(t) - log_sf_xmin);
  });
  r.loglik = truncated_lognormal_loglik(tail, xmin, fitted);
  return r;
}

namespace detail {

LogStats LogStats::of(std::span<const double> values) {
  LogStats s;
  s.n = values.size();
  if (values.empty()) return s;
  long double sum = 0.0L;
  for (double v : values) sum += static_cast<long double>(std::log(v));
  s.log_sum = static_cast<double>(sum);
  const long double mean = sum / static_cast<long double>(values.size());
  long double sq = 0.0L;
  for (double v : values) {
    const long double d = static_cast<long double>(std::log(v)) - mean;
    sq += d * d;
  }
  s.mean = static_cast<double>(mean);
  s.centered_squares = static_cast<double>(sq);
  return s;
}

double truncated_lognormal_loglik(const LogStats& stats, double log_xmin,
                                  double mu, double sigma) {
  const double n = static_cast<double>(stats.n);
  const double dm = stats.mean - mu;
  double ll = -stats.log_sum - n * std::log(sigma) - n * kLnSqrt2Pi -
              (stats.centered_squares + n * dm * dm) / (2.0 * sigma * sigma);
  if (log_xmin > -kInf) ll -= n * normal_log_sf((log_xmin - mu) / sigma);
  return ll;
}

LognormalModel fit_truncated_lognormal(const LogStats& stats, double log_xmin,
                                       const LognormalFitOptions& options) {
  const double n = static_cast<double>(stats.n);
  const double spread = std::sqrt(stats.centered_squares / n);
  if (!(spread > 0.0)) {
    throw DegenerateSampleError("every tail value is equal");
  }
  auto objective = [&](std::span<const double> p) {
    return -truncated_lognormal_loglik(stats, log_xmin, p[0], p[1]) / n;
  };
  const Box box{{stats.mean - options.mu_bound * spread, 1e-3 * spread},
                {stats.mean + options.mu_bound * spread,
                 options.sigma_bound * spread}};
  const double xtol = options.tolerance;
  constexpr double kFtol = 1e-13;
  auto first = nelder_mead(objective, {stats.mean, spread},
                           {0.25 * spread, 0.25 * spread}, box, xtol, kFtol,
                           options.max_evaluations);
  // Restart from the optimum to guard against a collapsed simplex.
  auto second = nelder_mead(objective, first.x, {0.05 * spread, 0.05 * spread},
                            box, xtol, kFtol, options.max_evaluations);
  if (!second.converged) {
    throw ConvergenceError(
        "truncated lognormal search did not converge after " +
        std::to_string(first.evaluations + second.evaluations) +
        " evaluations (mu=" + std::to_string(second.x[0]) +
        ", sigma=" + std::to_string(second.x[1]) + ")");
  }
  const auto& best = second.value <= first.value ? second : first;
  return LognormalModel(best.x[0], best.x[1]);
}

}  // namespace detail

}  // namespace tailfit
