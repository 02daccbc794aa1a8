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

#ifndef TAILFIT_OPTIMIZE_HPP_
#define TAILFIT_OPTIMIZE_HPP_

#include <functional>
#include <span>
#include <vector>

namespace tailfit {

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead minimization inside a box. Trial points are
/// projected onto the box. Converges when the simplex spans less than `xtol`
/// in every coordinate and its values differ by less than `ftol`.
MinimizeResult nelder_mead(
    const std::function<double(std::span<const double>)>& objective,
    std::vector<double> start, std::vector<double> initial_step,
    const Box& box, double xtol, double ftol, int max_evaluations);

}  // namespace tailfit

#endif  // TAILFIT_OPTIMIZE_HPP_
