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

#ifndef TAILFIT_SRC_ESTIMATION_DETAIL_HPP_
#define TAILFIT_SRC_ESTIMATION_DETAIL_HPP_

#include <cstddef>
#include <span>

#include "tailfit/distributions.hpp"
#include "tailfit/estimation.hpp"

namespace tailfit::detail {

// Sufficient statistics of ln x for lognormal likelihoods.
struct LogStats {
  std::size_t n = 0;
  double log_sum = 0.0;
  double mean = 0.0;
  double centered_squares = 0.0;

  static LogStats of(std::span<const double> values);
};

// log_xmin = -inf disables truncation.
double truncated_lognormal_loglik(const LogStats& stats, double log_xmin,
                                  double mu, double sigma);

LognormalModel fit_truncated_lognormal(const LogStats& stats, double log_xmin,
                                       const LognormalFitOptions& options);

}  // namespace tailfit::detail

#endif  // TAILFIT_SRC_ESTIMATION_DETAIL_HPP_
