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

#ifndef TAILFIT_ESTIMATION_HPP_
#define TAILFIT_ESTIMATION_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tailfit/distributions.hpp"
#include "tailfit/histogram.hpp"
#include "tailfit/random.hpp"
#include "tailfit/sample.hpp"

namespace tailfit {

enum class Family { powerlaw, lognormal };

std::string_view to_string(Family family);
/// "powerlaw" | "lognormal"; ParameterError otherwise.
Family parse_family(std::string_view name);

/// One fitted model: parameters, cutoff and goodness-of-fit summary.
struct FitReport {
  Model model;
  /// Tail cutoff. Equals tau for power laws; empty for a full-range
  /// lognormal fit.
  std::optional<double> xmin{};
  /// True when xmin was imposed rather than selected by the KS scan.
  bool xmin_fixed = false;
  /// Fitted from histogram counts instead of raw values.
  bool binned = false;
  std::size_t n_tail = 0;
  std::size_t n_total = 0;
  /// KS distance between the tail data and the fitted (tail) model.
  double ks = 0.0;
  /// Log-likelihood of the tail at the reported parameters (multinomial for
  /// binned fits).
  double loglik = 0.0;
  std::optional<double> p_value{};

  Family family() const {
    return std::holds_alternative<PowerLawModel>(model) ? Family::powerlaw
                                                        : Family::lognormal;
  }
};

// --- empirical distribution function ----------------------------------------

/// Right-continuous step function (# values <= t) / n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::span<const double> sorted_values);
  double operator()(double t) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

EmpiricalCdf edf(const DurationSample& sample);

// --- Kolmogorov-Smirnov ------------------------------------------------------

/// sup_x |EDF(x) - F(x)| over ascending `sorted`, evaluated on both sides of
/// every jump; tied values form a single jump.
template <std::invocable<double> Cdf>
double ks_distance(std::span<const double> sorted, Cdf&& model_cdf) {
  const std::size_t n = sorted.size();
  if (n == 0) return 0.0;
  const double inv_n = 1.0 / static_cast<double>(n);
  double distance = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && sorted[j] == sorted[i]) ++j;
    const double f = model_cdf(sorted[i]);
    const double below = static_cast<double>(i) * inv_n;
    const double above = static_cast<double>(j) * inv_n;
    distance = std::max({distance, f - below, above - f});
    i = j;
  }
  return distance;
}

double ks_distance(std::span<const double> sorted, const Model& model);

/// Two-sample statistic sup |EDF_a - EDF_b| for ascending inputs.
double ks_distance_two_sample(std::span<const double> a,
                              std::span<const double> b);

// --- power-law tail ----------------------------------------------------------

struct PowerLawFitOptions {
  /// Smallest tail admissible for a candidate cutoff; also the minimum number
  /// of distinct values needed for a scan.
  std::size_t min_tail = 50;
  /// Candidate cutoffs are thinned to at most this many, evenly by rank.
  std::size_t max_candidates = 10000;
  /// Imposed cutoff; skips the scan.
  std::optional<double> xmin{};
};

/// gamma = 1 + n / sum ln(x_i / xmin) over the given tail.
double powerlaw_exponent_mle(std::span<const double> tail, double xmin);

/// Continuous power-law MLE with the cutoff chosen by minimal KS distance.
/// Ties resolve to the smallest cutoff.
FitReport fit_powerlaw_tail(const DurationSample& sample,
                            const PowerLawFitOptions& options = {});

// --- lognormal ---------------------------------------------------------------

struct LognormalFitOptions {
  /// Fit the lognormal truncated to [xmin, inf) instead of the full range.
  std::optional<double> xmin{};
  /// Parameter tolerance of the truncated-likelihood search.
  double tolerance = 1e-6;
  int max_evaluations = 20000;
  /// sigma is searched in (0, sigma_bound * s] with s the spread of the tail
  /// log-values; mu within mu_bound * s of their mean.
  double sigma_bound = 10.0;
  double mu_bound = 200.0;
};

/// Without xmin: mu = mean ln x, sigma = population std of ln x.
/// With xmin: bounded maximization of the truncated likelihood.
FitReport fit_lognormal(const DurationSample& sample,
                        const LognormalFitOptions& options = {});

/// Log-likelihood of `tail` (all >= xmin) under `model` truncated to
/// [xmin, inf); xmin <= 0 means no truncation.
double truncated_lognormal_loglik(std::span<const double> tail, double xmin,
                                  const LognormalModel& model);

// --- binned data -------------------------------------------------------------

struct BinnedFitOptions {
  std::size_t min_tail = 50;
  std::size_t max_candidates = 10000;
  /// Imposed cutoff; must coincide with a bin's left edge.
  std::optional<double> xmin{};
  double tolerance = 1e-8;
  int max_evaluations = 20000;
};

/// Maximizes the multinomial likelihood sum_j h_j ln P_j over the family's
/// parameters, where P_j is the model probability of bin j normalized to the
/// tail. Power laws also scan the cutoff over non-empty bin left edges by
/// minimal binned KS distance. Needs at least three non-empty bins.
FitReport fit_binned(const Histogram& histogram, Family family,
                     const BinnedFitOptions& options = {});

/// KS distance between the binned tail counts and the tail model, evaluated
/// at bin edges.
double binned_ks_distance(const Histogram& histogram, const FitReport& fit);

// --- bootstrap ---------------------------------------------------------------

inline constexpr std::size_t kMinBootstrapReps = 100;

/// Monte-Carlo precision 1 / (2 sqrt(reps)) of a bootstrap p-value.
double bootstrap_precision(std::size_t reps);

struct BootstrapResult {
  double p_value = 0.0;
  double precision = 0.0;
  std::size_t reps = 0;
  /// Replicates whose KS distance reached the observed one.
  std::size_t exceedances = 0;
  /// KS distance of every replicate, in replicate order.
  std::vector<double> ks_values;
};

/// Semi-parametric goodness-of-fit bootstrap. Each replicate draws n_total
/// values: with probability n_tail/n_total from the fitted tail model,
/// otherwise uniformly from the observed values below xmin. The full fit,
/// including cutoff selection, is repeated on every replicate. Samples with a
/// storage resolution have their synthetic tail values truncated to it.
/// Replicate r uses substream r of `gen`.
BootstrapResult bootstrap_goodness_of_fit(
    const DurationSample& sample, const FitReport& fit, std::size_t reps,
    const SeededGenerator& gen, const PowerLawFitOptions& powerlaw = {},
    const LognormalFitOptions& lognormal = {});

/// Same scheme for a binned fit: tail draws are binned on the histogram's
/// grid and body draws resample the observed bins below xmin.
BootstrapResult bootstrap_goodness_of_fit(const Histogram& histogram,
                                          const FitReport& fit,
                                          std::size_t reps,
                                          const SeededGenerator& gen,
                                          const BinnedFitOptions& options = {});

/// p-value only.
double bootstrap_pvalue(const DurationSample& sample, const FitReport& fit,
                        std::size_t reps, const SeededGenerator& gen,
                        const PowerLawFitOptions& powerlaw = {});

// --- family comparison -------------------------------------------------------

enum class Verdict { powerlaw, lognormal, undecided };
std::string_view to_string(Verdict verdict);

struct ComparisonReport {
  /// sum of ln f_PL(x_i) - ln f_LN(x_i) over the tail.
  double lr = 0.0;
  /// lr / (sd of the per-point terms * sqrt(n_tail)).
  double normalized = 0.0;
  /// Two-sided significance of the sign of lr.
  double p_value = 1.0;
  Verdict verdict = Verdict::undecided;
  double xmin = 0.0;
  std::size_t n_tail = 0;
  std::size_t n_total = 0;
  std::optional<PowerLawModel> powerlaw;
  std::optional<LognormalModel> lognormal;
};

inline constexpr double kDefaultVerdictThreshold = 0.1;

/// Verdict from per-point log-densities of the two families on a common
/// tail. Needs at least two points.
ComparisonReport compare_log_densities(std::span<const double> log_powerlaw,
                                       std::span<const double> log_lognormal,
                                       double threshold = kDefaultVerdictThreshold);

/// Fits both families on x >= xmin (both normalized on [xmin, inf)) and
/// compares them.
ComparisonReport compare_families(const DurationSample& sample, double xmin,
                                  double threshold = kDefaultVerdictThreshold,
                                  const LognormalFitOptions& lognormal = {});

// --- EDF fit -----------------------------------------------------------------

struct EdfFitOptions {
  /// Maximum |EDF fit - MLE| in either parameter before flagging misfit.
  double agreement_tolerance = 0.05;
  /// Samples smaller than this are flagged low-confidence.
  std::size_t min_confident_size = 20;
};

struct EdfNormalFit {
  double mu = 0.0;
  double sigma = 0.0;
  double mle_mu = 0.0;
  double mle_sigma = 0.0;
  /// sup |EDF(ln x) - Phi((ln x - mu)/sigma)| at the least-squares optimum.
  double max_deviation = 0.0;
  bool low_confidence = false;
  bool misfit = false;
};

/// Least-squares fit of the normal distribution function to the EDF of
/// ln(values), evaluated at every sample point, checked against the
/// closed-form MLE.
EdfNormalFit fit_edf_normal(const DurationSample& sample,
                            const EdfFitOptions& options = {});

}  // namespace tailfit

#endif  // TAILFIT_ESTIMATION_HPP_
