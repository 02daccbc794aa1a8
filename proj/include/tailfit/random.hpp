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

#ifndef TAILFIT_RANDOM_HPP_
#define TAILFIT_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace tailfit {

/// Deterministic pseudorandom source.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, seeded through splitmix64 from (seed, stream). Uniforms take the
/// top 53 bits and are centred in their cell, so they lie strictly inside
/// (0, 1). Normals use the inverse distribution function, so one uniform
/// yields one normal and nothing depends on library-specific distributions.
class SeededGenerator {
 public:
  static constexpr std::string_view kAlgorithmId =
      "mt19937_64+splitmix64/u53-open/as241-inverse-normal";

  explicit SeededGenerator(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Independent generator for work item `index` of this stream. The result
  /// depends only on (seed, stream, index), never on call order.
  SeededGenerator substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound);
  double standard_normal();
  /// Exponential with unit rate.
  double standard_exponential();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace tailfit

#endif  // TAILFIT_RANDOM_HPP_
