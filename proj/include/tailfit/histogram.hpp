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

#ifndef TAILFIT_HISTOGRAM_HPP_
#define TAILFIT_HISTOGRAM_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tailfit/sample.hpp"

namespace tailfit {

/// Equal-width bins [origin + k*width, origin + (k+1)*width).
struct LinearGrid {
  double origin = 0.0;
  double width = 1.0;
  friend bool operator==(const LinearGrid&, const LinearGrid&) = default;
};

/// Bins [10^(k/b), 10^((k+1)/b)) with b bins per decade.
struct LogGrid {
  int bins_per_decade = 1;
  friend bool operator==(const LogGrid&, const LogGrid&) = default;
};

using BinScheme = std::variant<LinearGrid, LogGrid>;

/// Left edge of grid cell `index`.
double grid_edge(const BinScheme& scheme, std::int64_t index);

/// Index k of the cell with grid_edge(k) <= x < grid_edge(k+1), using the
/// computed edges so that a value equal to an edge lands in the right-hand
/// cell.
std::int64_t grid_index(const BinScheme& scheme, double x);

struct Bin {
  double left;
  double right;
  std::uint64_t count;
  friend bool operator==(const Bin&, const Bin&) = default;
};

/// Binned view of a duration sample.
///
/// Bins are ascending and non-overlapping. A histogram is contiguous when
/// every bin's right edge is the next bin's left edge; compact histograms omit
/// empty bins and are not contiguous in general.
class Histogram {
 public:
  Histogram(BinScheme scheme, std::vector<Bin> bins,
            TimeUnit unit = TimeUnit::seconds());

  const BinScheme& scheme() const { return scheme_; }
  std::span<const Bin> bins() const { return bins_; }
  const Bin& operator[](std::size_t j) const { return bins_[j]; }
  std::size_t size() const { return bins_.size(); }
  /// Total count n.
  std::uint64_t total() const { return total_; }
  const TimeUnit& unit() const { return unit_; }

  bool contiguous() const;
  /// m + 1 edges; ParameterError unless contiguous().
  std::vector<double> edges() const;
  std::vector<std::uint64_t> counts() const;

  /// h_j / (n * width_j). A zero-width bin reports its probability mass.
  double density(std::size_t j) const;
  std::vector<double> densities() const;

  /// Copy without empty bins.
  Histogram compacted() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;

 private:
  BinScheme scheme_;
  std::vector<Bin> bins_;
  TimeUnit unit_;
  std::uint64_t total_ = 0;
};

}  // namespace tailfit

#endif  // TAILFIT_HISTOGRAM_HPP_
