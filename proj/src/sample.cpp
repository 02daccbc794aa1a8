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

#include "tailfit/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tailfit/error.hpp"

namespace tailfit {

TimeUnit TimeUnit::from_factor(double seconds_per_unit) {
  if (!(seconds_per_unit > 0.0) || !std::isfinite(seconds_per_unit)) {
    throw ParameterError("time unit factor must be positive and finite");
  }
  if (seconds_per_unit == 1.0) return seconds();
  if (seconds_per_unit == 60.0) return minutes();
  if (seconds_per_unit == 3600.0) return hours();
  return {"custom", seconds_per_unit};
}

TimeUnit TimeUnit::rescaled(double factor) const {
  if (!(factor > 0.0)) throw ParameterError("rescale factor must be positive");
  // A value v in this unit becomes v * factor; one new unit is worth
  // seconds_per_unit / factor seconds.
  const double spu = seconds_per_unit / factor;
  // Snap the common unit changes so that 1/60 and 1/3600 round-trip to the
  // canonical labels despite the inexact reciprocal.
  for (const TimeUnit& known : {seconds(), minutes(), hours()}) {
    if (std::fabs(spu - known.seconds_per_unit) <=
        1e-12 * known.seconds_per_unit) {
      return known;
    }
  }
  return {"custom", spu};
}

namespace {

void validate(const std::vector<double>& values, double resolution) {
  if (values.empty()) throw EmptySampleError("duration sample is empty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("durations must be finite and strictly positive, got " +
                        std::to_string(v));
    }
  }
  if (!(resolution >= 0.0) || !std::isfinite(resolution)) {
    throw ParameterError("resolution must be finite and non-negative");
  }
}

}  // namespace

DurationSample::DurationSample(std::vector<double> values, TimeUnit unit,
                               double resolution)
    : values_(std::move(values)),
      unit_(std::move(unit)),
      resolution_(resolution) {
  validate(values_, resolution_);
  std::sort(values_.begin(), values_.end());
}

DurationSample::DurationSample(SortedTag, std::vector<double> values,
                               TimeUnit unit, double resolution)
    : values_(std::move(values)),
      unit_(std::move(unit)),
      resolution_(resolution) {
  validate(values_, resolution_);
  if (!std::is_sorted(values_.begin(), values_.end())) {
    throw ParameterError("from_sorted requires ascending values");
  }
}

DurationSample DurationSample::from_sorted(std::vector<double> values,
                                           TimeUnit unit, double resolution) {
  return DurationSample(SortedTag{}, std::move(values), std::move(unit),
                        resolution);
}

std::size_t DurationSample::distinct_count() const {
  std::size_t count = 1;
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] != values_[i - 1]) ++count;
  }
  return count;
}

std::vector<double> DurationSample::log_values() const {
  std::vector<double> logs(values_.size());
  std::transform(values_.begin(), values_.end(), logs.begin(),
                 [](double v) { return std::log(v); });
  return logs;
}

}  // namespace tailfit
