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

#ifndef TAILFIT_BINNING_HPP_
#define TAILFIT_BINNING_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "tailfit/distributions.hpp"
#include "tailfit/histogram.hpp"
#include "tailfit/sample.hpp"

namespace tailfit {

/// m equal bins of width (x_max - x_min)/m anchored at x_min. Bins are
/// left-closed/right-open except the last, which is closed. x_max == x_min
/// yields one zero-width bin holding every value.
Histogram bin_linear(const DurationSample& sample, std::size_t bins);

/// Bins of fixed `width` on the grid origin + k*width. Only non-empty bins
/// are materialized, so fine widths over many decades stay cheap.
Histogram bin_width(const DurationSample& sample, double width,
                    double origin = 0.0);

/// Bins with edges 10^(k/bins_per_decade) covering [x_min, x_max]; the last
/// bin is closed.
Histogram bin_log(const DurationSample& sample, int bins_per_decade);

/// Every value multiplied by factor; unit and resolution follow.
DurationSample rescale(const DurationSample& sample, double factor);

struct QuantizeResult {
  DurationSample sample;
  /// Values below `step` that truncated to zero and were removed.
  std::size_t dropped = 0;
};

/// floor(value/step)*step, zero results dropped. The returned sample records
/// `step` as its resolution. EmptySampleError if nothing survives.
/// floor(value / step) * step, corrected so that applying it twice is a
/// no-op.
double truncate_to_step(double value, double step);

QuantizeResult quantize(const DurationSample& sample, double step);

/// n * (cdf(right) - cdf(left)) for each bin described by `edges`.
std::vector<double> expected_counts(const Model& model,
                                    std::span<const double> edges, double n);

/// Expected counts for every bin of `histogram` with n = histogram.total().
std::vector<double> expected_counts(const Model& model,
                                    const Histogram& histogram);

}  // namespace tailfit

#endif  // TAILFIT_BINNING_HPP_
