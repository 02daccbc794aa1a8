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

#ifndef TAILFIT_SAMPLE_HPP_
#define TAILFIT_SAMPLE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tailfit {

/// Unit of a duration sample, expressed as the number of seconds per unit.
struct TimeUnit {
  std::string label = "seconds";
  double seconds_per_unit = 1.0;

  static TimeUnit seconds() { return {"seconds", 1.0}; }
  static TimeUnit minutes() { return {"minutes", 60.0}; }
  static TimeUnit hours() { return {"hours", 3600.0}; }
  static TimeUnit from_factor(double seconds_per_unit);

  /// Unit of the values after every value has been multiplied by `factor`.
  TimeUnit rescaled(double factor) const;

  friend bool operator==(const TimeUnit&, const TimeUnit&) = default;
};

/// Sorted, strictly positive inter-event durations.
///
/// `resolution` is the storage step of the values (0 for continuous data).
/// It is set by quantization and lets resampling schemes reproduce the
/// coarse measurement.
class DurationSample {
 public:
  /// Validates (finite, > 0, non-empty) and sorts.
  explicit DurationSample(std::vector<double> values,
                          TimeUnit unit = TimeUnit::seconds(),
                          double resolution = 0.0);

  /// Same validation, but requires `values` to already be ascending.
  static DurationSample from_sorted(std::vector<double> values,
                                    TimeUnit unit = TimeUnit::seconds(),
                                    double resolution = 0.0);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  const TimeUnit& unit() const { return unit_; }
  double resolution() const { return resolution_; }

  std::size_t distinct_count() const;
  std::vector<double> log_values() const;

  friend bool operator==(const DurationSample&,
                         const DurationSample&) = default;

 private:
  struct SortedTag {};
  DurationSample(SortedTag, std::vector<double> values, TimeUnit unit,
                 double resolution);

  std::vector<double> values_;
  TimeUnit unit_;
  double resolution_ = 0.0;
};

}  // namespace tailfit

#endif  // TAILFIT_SAMPLE_HPP_
