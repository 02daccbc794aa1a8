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

#ifndef TAILFIT_PARALLEL_HPP_
#define TAILFIT_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace tailfit {

/// Worker cap for internal parallel loops. Defaults to TAILFIT_THREADS when
/// set, otherwise the hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t threads);

/// Runs body(i) for every i in [0, count). Work items must write to disjoint
/// outputs; results therefore never depend on the number of workers. If any
/// item throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace tailfit

#endif  // TAILFIT_PARALLEL_HPP_
