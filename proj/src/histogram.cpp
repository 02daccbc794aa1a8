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

#include "tailfit/histogram.hpp"

#include <cmath>

#include "tailfit/error.hpp"

namespace tailfit {

double grid_edge(const BinScheme& scheme, std::int64_t index) {
  if (const auto* lin = std::get_if<LinearGrid>(&scheme)) {
    return lin->origin + static_cast<double>(index) * lin->width;
  }
  const auto& lg = std::get<LogGrid>(scheme);
  return std::pow(10.0, static_cast<double>(index) / lg.bins_per_decade);
}

std::int64_t grid_index(const BinScheme& scheme, double x) {
  double guess;
  if (const auto* lin = std::get_if<LinearGrid>(&scheme)) {
    if (!(lin->width > 0.0)) return 0;
    guess = std::floor((x - lin->origin) / lin->width);
  } else {
    const auto& lg = std::get<LogGrid>(scheme);
    if (!(x > 0.0)) throw DomainError("log grid needs positive values");
    guess = std::floor(std::log10(x) * lg.bins_per_decade);
  }
  auto k = static_cast<std::int64_t>(guess);
  // Floating-point division can land one cell off next to an edge.
  while (grid_edge(scheme, k) > x) --k;
  while (grid_edge(scheme, k + 1) <= x) ++k;
  return k;
}

Histogram::Histogram(BinScheme scheme, std::vector<Bin> bins, TimeUnit unit)
    : scheme_(scheme), bins_(std::move(bins)), unit_(std::move(unit)) {
  if (const auto* lg = std::get_if<LogGrid>(&scheme_)) {
    if (lg->bins_per_decade < 1) {
      throw ParameterError("bins per decade must be at least 1");
    }
  }
  for (std::size_t j = 0; j < bins_.size(); ++j) {
    const Bin& b = bins_[j];
    if (!(b.right >= b.left)) throw ParameterError("bin with right < left");
    if (j > 0 && bins_[j - 1].right > b.left) {
      throw ParameterError("histogram bins overlap or are unordered");
    }
    total_ += b.count;
  }
}

bool Histogram::contiguous() const {
  for (std::size_t j = 1; j < bins_.size(); ++j) {
    if (bins_[j - 1].right != bins_[j].left) return false;
  }
  return true;
}

std::vector<double> Histogram::edges() const {
  if (!contiguous()) {
    throw ParameterError("edges() requires a contiguous histogram");
  }
  std::vector<double> out;
  if (bins_.empty()) return out;
  out.reserve(bins_.size() + 1);
  for (const Bin& b : bins_) out.push_back(b.left);
  out.push_back(bins_.back().right);
  return out;
}

std::vector<std::uint64_t> Histogram::counts() const {
  std::vector<std::uint64_t> out;
  out.reserve(bins_.size());
  for (const Bin& b : bins_) out.push_back(b.count);
  return out;
}

double Histogram::density(std::size_t j) const {
  if (total_ == 0) return 0.0;
  const Bin& b = bins_.at(j);
  const double mass = static_cast<double>(b.count) / static_cast<double>(total_);
  const double width = b.right - b.left;
  return width > 0.0 ? mass / width : mass;
}

std::vector<double> Histogram::densities() const {
  std::vector<double> out(bins_.size());
  for (std::size_t j = 0; j < bins_.size(); ++j) out[j] = density(j);
  return out;
}

Histogram Histogram::compacted() const {
  std::vector<Bin> kept;
  for (const Bin& b : bins_) {
    if (b.count > 0) kept.push_back(b);
  }
  return Histogram(scheme_, std::move(kept), unit_);
}

}  // namespace tailfit
