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

#ifndef TAILFIT_SPECIAL_HPP_
#define TAILFIT_SPECIAL_HPP_

#include <cstddef>

namespace tailfit {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2 = 1.414213562373095048801688724209698079;
inline constexpr double kLnSqrt2Pi = 0.918938533204672741780329736405617639;

/// Standard normal distribution function.
double normal_cdf(double z);

/// Upper tail 1 - normal_cdf(z), accurate far into the right tail.
double normal_sf(double z);

/// log(normal_sf(z)) without underflow for large z.
double normal_log_sf(double z);

/// Inverse of normal_cdf on (0, 1). Wichura's AS241 (PPND16), about 1e-16
/// relative accuracy. Returns -inf / +inf at 0 / 1.
double normal_quantile(double p);

/// Survival function of the limiting Kolmogorov distribution,
/// Pr[K > lambda].
double kolmogorov_sf(double lambda);

/// Asymptotic p-value of the one-sample KS statistic with Stephens'
/// finite-n correction.
double ks_pvalue(double distance, std::size_t n);

/// Two-sample version of ks_pvalue; uses the effective size nm/(n+m).
double ks_pvalue_two_sample(double distance, std::size_t n, std::size_t m);

/// Two-sided p-value of a standard normal statistic.
double two_sided_normal_pvalue(double z);

}  // namespace tailfit

#endif  // TAILFIT_SPECIAL_HPP_
