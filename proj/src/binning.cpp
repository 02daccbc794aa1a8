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

#include "tailfit/binning.hpp"

#include <algorithm>
#include <cmath>

#include "tailfit/error.hpp"

namespace tailfit {

Histogram bin_linear(const DurationSample& sample, std::size_t bins) {
  if (bins == 0) throw ParameterError("bin_linear needs at least one bin");
  const double lo = sample.min();
  const double hi = sample.max();
  if (hi == lo) {
    return Histogram(LinearGrid{lo, 0.0}, {Bin{lo, hi, sample.size()}},
                     sample.unit());
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  const BinScheme grid = LinearGrid{lo, width};
  std::vector<Bin> out(bins);
  for (std::size_t j = 0; j < bins; ++j) {
    out[j].left = grid_edge(grid, static_cast<std::int64_t>(j));
    out[j].right = j + 1 == bins
                       ? hi
                       : grid_edge(grid, static_cast<std::int64_t>(j + 1));
    out[j].count = 0;
  }
  const auto last = static_cast<std::int64_t>(bins) - 1;
  for (double v : sample.values()) {
    const std::int64_t k = std::clamp<std::int64_t>(grid_index(grid, v), 0, last);
    ++out[static_cast<std::size_t>(k)].count;
  }
  return Histogram(grid, std::move(out), sample.unit());
}

Histogram bin_width(const DurationSample& sample, double width, double origin) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ParameterError("bin width must be positive and finite");
  }
  if (!std::isfinite(origin) || origin > sample.min()) {
    throw ParameterError("bin origin must not exceed the smallest value");
  }
  const BinScheme grid = LinearGrid{origin, width};
  std::vector<Bin> out;
  // Values are sorted, so cells are visited in order.
  std::int64_t current = 0;
  for (double v : sample.values()) {
    const std::int64_t k = grid_index(grid, v);
    if (out.empty() || k != current) {
      out.push_back(Bin{grid_edge(grid, k), grid_edge(grid, k + 1), 0});
      current = k;
    }
    ++out.back().count;
  }
  return Histogram(grid, std::move(out), sample.unit());
}

Histogram bin_log(const DurationSample& sample, int bins_per_decade) {
  if (bins_per_decade < 1) {
    throw ParameterError("bin_log needs at least one bin per decade");
  }
  const BinScheme grid = LogGrid{bins_per_decade};
  const std::int64_t first = grid_index(grid, sample.min());
  std::int64_t last = grid_index(grid, sample.max());
  // A maximum sitting exactly on an edge closes the previous bin.
  if (last > first && grid_edge(grid, last) == sample.max()) --last;

  std::vector<Bin> out(static_cast<std::size_t>(last - first + 1));
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto k = first + static_cast<std::int64_t>(j);
    out[j] = Bin{grid_edge(grid, k), grid_edge(grid, k + 1), 0};
  }
  for (double v : sample.values()) {
    const std::int64_t k = std::min(grid_index(grid, v), last);
    ++out[static_cast<std::size_t>(k - first)].count;
  }
  return Histogram(grid, std::move(out), sample.unit());
}

DurationSample rescale(const DurationSample& sample, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw ParameterError("rescale factor must be positive and finite");
  }
  std::vector<double> values(sample.values().begin(), sample.values().end());
  if (factor != 1.0) {
    for (double& v : values) v *= factor;
  }
  // Multiplication by a positive constant is monotone, order is preserved.
  return DurationSample::from_sorted(std::move(values),
                                     sample.unit().rescaled(factor),
                                     sample.resolution() * factor);
}

double truncate_to_step(double value, double step) {
  double q = std::floor(value / step);
  // Correct the quotient against the product actually stored, which keeps
  // truncation idempotent for steps that are not exactly representable.
  if (q * step > value) q -= 1.0;
  if ((q + 1.0) * step <= value) q += 1.0;
  return q * step;
}

QuantizeResult quantize(const DurationSample& sample, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ParameterError("quantization step must be positive and finite");
  }
  std::vector<double> kept;
  kept.reserve(sample.size());
  std::size_t dropped = 0;
  for (double v : sample.values()) {
    const double t = truncate_to_step(v, step);
    if (t > 0.0) {
      kept.push_back(t);
    } else {
      ++dropped;
    }
  }
  if (kept.empty()) {
    throw EmptySampleError("every value is below the quantization step");
  }
  return {DurationSample::from_sorted(std::move(kept), sample.unit(), step),
          dropped};
}

std::vector<double> expected_counts(const Model& model,
                                    std::span<const double> edges, double n) {
  std::vector<double> out;
  if (edges.size() < 2) return out;
  out.reserve(edges.size() - 1);
  for (std::size_t j = 1; j < edges.size(); ++j) {
    out.push_back(n * interval_probability(model, edges[j - 1], edges[j]));
  }
  return out;
}

std::vector<double> expected_counts(const Model& model,
                                    const Histogram& histogram) {
  const auto n = static_cast<double>(histogram.total());
  std::vector<double> out;
  out.reserve(histogram.size());
  for (const Bin& b : histogram.bins()) {
    out.push_back(n * interval_probability(model, b.left, b.right));
  }
  return out;
}

}  // namespace tailfit
