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
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/optimize.hpp"
#include "tailfit/special.hpp"

namespace tailfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Bin> occupied(const Histogram& h) {
  std::vector<Bin> out;
  for (const Bin& b : h.bins()) {
    if (b.count > 0) out.push_back(b);
  }
  return out;
}

// Position of the occupied bin whose left edge is xmin.
std::size_t bin_at_edge(const std::vector<Bin>& bins, double xmin) {
  const double slack = 1e-12 * std::fabs(xmin);
  for (std::size_t j = 0; j < bins.size(); ++j) {
    if (bins[j].right <= xmin) continue;
    if (std::fabs(bins[j].left - xmin) <= slack) return j;
    if (bins[j].left > xmin) {
      // An empty stretch may separate xmin from the next occupied bin.
      if (j == 0 || bins[j - 1].right <= xmin) return j;
    }
    break;
  }
  throw ParameterError("xmin=" + std::to_string(xmin) +
                       " does not fall on a bin edge of the histogram");
}

// KS distance between binned counts and a tail distribution function,
// evaluated at both edges of every bin; +inf once `bound` is exceeded.
template <typename Cdf>
double binned_ks(std::span<const Bin> bins, double n_tail, Cdf&& cdf,
                 double bound = kInf) {
  double cum = 0.0;
  double distance = 0.0;
  for (const Bin& b : bins) {
    const double below = cum / n_tail;
    cum += static_cast<double>(b.count);
    const double above = cum / n_tail;
    const double d = std::max(std::fabs(below - cdf(b.left)),
                              std::fabs(above - cdf(b.right)));
    if (d > bound) return kInf;
    distance = std::max(distance, d);
  }
  return distance;
}

// log(Phi(zr) - Phi(zl)) for zl < zr without cancellation in either tail.
double log_normal_interval(double zl, double zr) {
  if (zl > 0.0) {
    const double a = normal_log_sf(zl);
    return a + std::log1p(-std::exp(normal_log_sf(zr) - a));
  }
  if (zr < 0.0) {
    const double a = normal_log_sf(-zr);
    return a + std::log1p(-std::exp(normal_log_sf(-zl) - a));
  }
  return std::log1p(-(normal_sf(zr) + normal_sf(-zl)));
}

double log_or_neg_inf(double x) { return x > 0.0 ? std::log(x) : -kInf; }

// ---- power law -----------------------------------------------------------

class BinnedPowerLawScan {
 public:
  explicit BinnedPowerLawScan(std::vector<Bin> bins) : bins_(std::move(bins)) {
    const std::size_t k = bins_.size();
    log_left_.resize(k);
    log_right_.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      log_left_[j] = log_or_neg_inf(bins_[j].left);
      log_right_[j] = log_or_neg_inf(bins_[j].right);
    }
    count_.assign(k + 1, 0.0L);
    sum_left_.assign(k + 1, 0.0L);
    sum_right_.assign(k + 1, 0.0L);
    for (std::size_t j = k; j-- > 0;) {
      const auto h = static_cast<long double>(bins_[j].count);
      count_[j] = count_[j + 1] + h;
      if (bins_[j].left > 0.0) {
        sum_left_[j] = sum_left_[j + 1] + h * log_left_[j];
        sum_right_[j] = sum_right_[j + 1] + h * log_right_[j];
      }
    }
  }

  const std::vector<Bin>& bins() const { return bins_; }
  double tail_count(std::size_t c) const {
    return static_cast<double>(count_[c]);
  }

  // The interval likelihood of ln(x/xmin) is that of an exponential with
  // censored observations, so the optimum lies between the estimates that
  // put every count at the right or at the left edge of its bin.
  std::pair<double, double> bracket(std::size_t c) const {
    const long double nt = count_[c];
    const long double base = nt * log_left_[c];
    const long double right = sum_right_[c] - base;
    const long double left = sum_left_[c] - base;
    return {static_cast<double>(nt / right),
            left > 0.0L ? static_cast<double>(nt / left) : kInf};
  }

  double score(std::size_t c, double s) const {
    const double x0 = log_left_[c];
    double total = 0.0;
    for (std::size_t j = c; j < bins_.size(); ++j) {
      const double la = log_left_[j] - x0;
      const double lb = log_right_[j] - x0;
      const double w = lb - la;
      total += static_cast<double>(bins_[j].count) *
               (w / -std::expm1(-s * w) - lb);
    }
    return total;
  }

  double loglik(std::size_t c, double s) const {
    const double x0 = log_left_[c];
    double total = 0.0;
    for (std::size_t j = c; j < bins_.size(); ++j) {
      const double la = log_left_[j] - x0;
      const double w = log_right_[j] - log_left_[j];
      total += static_cast<double>(bins_[j].count) *
               (-s * la + std::log(-std::expm1(-s * w)));
    }
    return total;
  }

  double solve(std::size_t c) const {
    auto [lo, hi] = bracket(c);
    if (!std::isfinite(hi)) hi = 2.0 * lo + 1.0;
    while (score(c, hi) > 0.0) hi *= 2.0;
    const double f_lo = score(c, lo);
    if (!(f_lo > 0.0)) return lo;
    const double f_hi = score(c, hi);
    if (!(f_hi < 0.0)) return hi;
    std::uintmax_t iterations = 200;
    const auto root = boost::math::tools::toms748_solve(
        [&](double s) { return score(c, s); }, lo, hi, f_lo, f_hi,
        boost::math::tools::eps_tolerance<double>(50), iterations);
    if (iterations >= 200) {
      throw ConvergenceError("binned power-law exponent search did not "
                             "converge");
    }
    return 0.5 * (root.first + root.second);
  }

  double cdf(std::size_t c, double s, double log_edge) const {
    return -std::expm1(-s * (log_edge - log_left_[c]));
  }

  // Deviation bound valid for every exponent in [lo, hi], from a sparse
  // subset of edges.
  double lower_bound(std::size_t c, double lo, double hi,
                     std::size_t stride) const {
    const double nt = tail_count(c);
    double cum = 0.0;
    double bound = 0.0;
    for (std::size_t j = c; j < bins_.size(); ++j) {
      const double below = cum / nt;
      cum += static_cast<double>(bins_[j].count);
      if ((j - c) % stride != 0) continue;
      const double above = cum / nt;
      const double fl_lo = cdf(c, lo, log_left_[j]);
      const double fl_hi = cdf(c, hi, log_left_[j]);
      const double fr_lo = cdf(c, lo, log_right_[j]);
      const double fr_hi = cdf(c, hi, log_right_[j]);
      bound = std::max({bound, below - fl_hi, fl_lo - below, above - fr_hi,
                        fr_lo - above});
    }
    return bound;
  }

  double ks(std::size_t c, double s, double bound) const {
    const double nt = tail_count(c);
    double cum = 0.0;
    double distance = 0.0;
    for (std::size_t j = c; j < bins_.size(); ++j) {
      const double below = cum / nt;
      cum += static_cast<double>(bins_[j].count);
      const double above = cum / nt;
      const double d =
          std::max(std::fabs(below - cdf(c, s, log_left_[j])),
                   std::fabs(above - cdf(c, s, log_right_[j])));
      if (d > bound) return kInf;
      distance = std::max(distance, d);
    }
    return distance;
  }

 private:
  std::vector<Bin> bins_;
  std::vector<double> log_left_;
  std::vector<double> log_right_;
  std::vector<long double> count_;
  std::vector<long double> sum_left_;
  std::vector<long double> sum_right_;
};

FitReport binned_powerlaw(const Histogram& histogram, std::vector<Bin> bins,
                          const BinnedFitOptions& options) {
  const BinnedPowerLawScan scan(std::move(bins));
  const auto& b = scan.bins();

  auto report = [&](std::size_t c, double s, double ks, bool fixed) {
    FitReport r{.model = PowerLawModel(1.0 + s, b[c].left)};
    r.xmin = b[c].left;
    r.xmin_fixed = fixed;
    r.binned = true;
    r.n_tail = static_cast<std::size_t>(scan.tail_count(c));
    r.n_total = histogram.total();
    r.ks = ks;
    r.loglik = scan.loglik(c, s);
    return r;
  };

  if (options.xmin) {
    const std::size_t c = bin_at_edge(b, *options.xmin);
    if (!(b[c].left > 0.0)) throw ParameterError("xmin must be positive");
    if (c + 1 >= b.size()) {
      throw DegenerateSampleError("every count above xmin is in one bin");
    }
    const double s = scan.solve(c);
    // An xmin in empty territory snaps to the next occupied bin.
    return report(c, s, scan.ks(c, s, kInf), true);
  }

  std::vector<std::size_t> candidates;
  for (std::size_t c = 0; c + 1 < b.size(); ++c) {
    if (!(b[c].left > 0.0)) continue;
    if (scan.tail_count(c) < static_cast<double>(options.min_tail)) break;
    candidates.push_back(c);
  }
  if (candidates.empty()) {
    throw InsufficientDataError("no bin edge leaves a tail of " +
                                std::to_string(options.min_tail) +
                                " counts in two or more bins");
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

  // Same exact pruning as the unbinned scan; the exponent bracket lets most
  // candidates be rejected before their exponent is solved for.
  const std::size_t n_c = candidates.size();
  std::vector<double> ks(n_c, kInf), shape(n_c, 0.0);
  std::vector<char> done(n_c, 0);
  double best = kInf;
  auto visit = [&](std::size_t k) {
    if (done[k]) return;
    done[k] = 1;
    const std::size_t c = candidates[k];
    const auto [lo, hi] = scan.bracket(c);
    if (std::isfinite(best) && std::isfinite(hi)) {
      const std::size_t tail_bins = b.size() - c;
      if (tail_bins > 256 && scan.lower_bound(c, lo, hi, 32) > best) return;
      if (scan.lower_bound(c, lo, hi, 1) > best) return;
    }
    const double s = scan.solve(c);
    shape[k] = s;
    ks[k] = scan.ks(c, s, best);
    best = std::min(best, ks[k]);
  };
  constexpr std::size_t kCoarse = 32;
  for (std::size_t k = 0; k < n_c; k += kCoarse) visit(k);
  for (std::size_t k = n_c; k-- > 0;) visit(k);

  std::size_t chosen = n_c;
  for (std::size_t k = 0; k < n_c; ++k) {
    if (ks[k] < kInf && (chosen == n_c || ks[k] < ks[chosen])) chosen = k;
  }
  if (chosen == n_c) throw InsufficientDataError("no admissible bin cutoff");
  return report(candidates[chosen], shape[chosen], ks[chosen], false);
}

// ---- lognormal -----------------------------------------------------------

FitReport binned_lognormal(const Histogram& histogram,
                           const std::vector<Bin>& all,
                           const BinnedFitOptions& options) {
  std::size_t first = 0;
  double log_xmin = -kInf;
  if (options.xmin) {
    first = bin_at_edge(all, *options.xmin);
    if (!(*options.xmin > 0.0)) throw ParameterError("xmin must be positive");
    log_xmin = std::log(*options.xmin);
  }
  const std::span<const Bin> bins(all.data() + first, all.size() - first);
  if (bins.size() < 2) {
    throw DegenerateSampleError("every count above xmin is in one bin");
  }

  std::vector<double> log_left(bins.size()), log_right(bins.size());
  double n = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < bins.size(); ++j) {
    log_left[j] = log_or_neg_inf(bins[j].left);
    log_right[j] = std::log(bins[j].right);
    const double mid = bins[j].left > 0.0
                           ? 0.5 * (log_left[j] + log_right[j])
                           : log_right[j] - std::log(2.0);
    const double h = static_cast<double>(bins[j].count);
    n += h;
    m1 += h * mid;
    m2 += h * mid * mid;
  }
  const double mean = m1 / n;
  double spread = std::sqrt(std::max(0.0, m2 / n - mean * mean));
  if (!(spread > 0.0)) spread = log_right.back() - log_left.front();
  if (!(spread > 0.0) || !std::isfinite(spread)) spread = 1.0;

  auto objective = [&](std::span<const double> p) {
    const double mu = p[0], sigma = p[1];
    double total = 0.0;
    for (std::size_t j = 0; j < bins.size(); ++j) {
      const double zl = (log_left[j] - mu) / sigma;
      const double zr = (log_right[j] - mu) / sigma;
      total += static_cast<double>(bins[j].count) * log_normal_interval(zl, zr);
    }
    if (log_xmin > -kInf) total -= n * normal_log_sf((log_xmin - mu) / sigma);
    return -total / n;
  };
  const Box box{{mean - 200.0 * spread, 1e-3 * spread},
                {mean + 200.0 * spread, 10.0 * spread}};
  constexpr double kFtol = 1e-14;
  auto first_pass = nelder_mead(objective, {mean, spread},
                                {0.25 * spread, 0.25 * spread}, box,
                                options.tolerance, kFtol,
                                options.max_evaluations);
  auto second = nelder_mead(objective, first_pass.x,
                            {0.02 * spread, 0.02 * spread}, box,
                            options.tolerance, kFtol, options.max_evaluations);
  if (!second.converged || !std::isfinite(second.value)) {
    throw ConvergenceError("binned lognormal search did not converge (mu=" +
                           std::to_string(second.x[0]) +
                           ", sigma=" + std::to_string(second.x[1]) + ")");
  }
  const auto& best = second.value <= first_pass.value ? second : first_pass;

  FitReport r{.model = LognormalModel(best.x[0], best.x[1])};
  if (options.xmin) {
    r.xmin = *options.xmin;
    r.xmin_fixed = true;
  }
  r.binned = true;
  r.n_tail = static_cast<std::size_t>(n);
  r.n_total = histogram.total();
  r.loglik = -best.value * n;
  r.ks = binned_ks_distance(histogram, r);
  return r;
}

}  // namespace

FitReport fit_binned(const Histogram& histogram, Family family,
                     const BinnedFitOptions& options) {
  std::vector<Bin> bins = occupied(histogram);
  if (bins.size() < 3) {
    throw InsufficientDataError("binned fit needs three non-empty bins, got " +
                                std::to_string(bins.size()));
  }
  for (const Bin& b : bins) {
    if (!(b.right > b.left)) {
      throw DegenerateSampleError("histogram has a zero-width bin");
    }
  }
  if (family == Family::powerlaw) {
    return binned_powerlaw(histogram, std::move(bins), options);
  }
  return binned_lognormal(histogram, bins, options);
}

double binned_ks_distance(const Histogram& histogram, const FitReport& fit) {
  std::vector<Bin> bins = occupied(histogram);
  std::size_t first = 0;
  if (fit.xmin) first = bin_at_edge(bins, *fit.xmin);
  const std::span<const Bin> tail(bins.data() + first, bins.size() - first);
  double n_tail = 0.0;
  for (const Bin& b : tail) n_tail += static_cast<double>(b.count);
  if (!(n_tail > 0.0)) return 0.0;

  if (const auto* pl = std::get_if<PowerLawModel>(&fit.model)) {
    return binned_ks(tail, n_tail, [pl](double e) { return pl->cdf(e); });
  }
  const auto& ln = std::get<LognormalModel>(fit.model);
  if (!fit.xmin) {
    return binned_ks(tail, n_tail, [&ln](double e) { return ln.cdf(e); });
  }
  const double log_sf_xmin = ln.log_sf(*fit.xmin);
  return binned_ks(tail, n_tail, [&](double e) {
    return 1.0 - std::exp(ln.log_sf(e) - log_sf_xmin);
  });
}

}  // namespace tailfit
