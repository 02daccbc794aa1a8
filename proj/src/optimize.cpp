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

#include "tailfit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tailfit/error.hpp"

namespace tailfit {

namespace {

using Point = std::vector<double>;

void project(Point& p, const Box& box) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::clamp(p[i], box.lower[i], box.upper[i]);
  }
}

}  // namespace

MinimizeResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> start, std::vector<double> initial_step,
    const Box& box, double xtol, double ftol, int max_evaluations) {
  const std::size_t dim = start.size();
  if (dim == 0 || initial_step.size() != dim || box.lower.size() != dim ||
      box.upper.size() != dim) {
    throw ParameterError("nelder_mead: dimension mismatch");
  }

  MinimizeResult result;
  auto eval = [&](Point& p) {
    project(p, box);
    ++result.evaluations;
    const double v = objective(p);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Point> simplex(dim + 1, start);
  for (std::size_t i = 0; i < dim; ++i) {
    simplex[i + 1][i] += initial_step[i];
    // Step inward when the start sits on the upper face.
    if (simplex[i + 1][i] > box.upper[i]) simplex[i + 1][i] -= 2 * initial_step[i];
  }
  std::vector<double> values(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(dim + 1);
  Point centroid(dim), trial(dim), trial2(dim);

  while (result.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];

    double spread = 0.0;
    for (std::size_t i = 0; i <= dim; ++i) {
      for (std::size_t k = 0; k < dim; ++k) {
        spread = std::max(spread, std::fabs(simplex[i][k] - simplex[best][k]));
      }
    }
    if (spread < xtol && std::fabs(values[worst] - values[best]) < ftol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t k = 0; k < dim; ++k) {
      trial[k] = centroid[k] + (centroid[k] - simplex[worst][k]);
    }
    const double reflected = eval(trial);

    if (reflected < values[best]) {
      for (std::size_t k = 0; k < dim; ++k) {
        trial2[k] = centroid[k] + 2.0 * (centroid[k] - simplex[worst][k]);
      }
      const double expanded = eval(trial2);
      if (expanded < reflected) {
        simplex[worst] = trial2;
        values[worst] = expanded;
      } else {
        simplex[worst] = trial;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second]) {
      simplex[worst] = trial;
      values[worst] = reflected;
      continue;
    }

    const bool outside = reflected < values[worst];
    for (std::size_t k = 0; k < dim; ++k) {
      const double from = outside ? trial[k] : simplex[worst][k];
      trial2[k] = centroid[k] + 0.5 * (from - centroid[k]);
    }
    const double contracted = eval(trial2);
    if (contracted < std::min(reflected, values[worst])) {
      simplex[worst] = trial2;
      values[worst] = contracted;
      continue;
    }

    // Shrink toward the best vertex.
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < dim; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      values[i] = eval(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.value = *best_it;
  return result;
}

}  // namespace tailfit
