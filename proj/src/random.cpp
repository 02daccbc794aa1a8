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

#include "tailfit/random.hpp"

#include <cmath>

#include "tailfit/special.hpp"

namespace tailfit {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace

SeededGenerator::SeededGenerator(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

SeededGenerator SeededGenerator::substream(std::uint64_t index) const {
  return SeededGenerator(seed_, splitmix64(stream_ * 0xd1342543de82ef95ULL +
                                           index + 1));
}

double SeededGenerator::uniform() {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
}

std::uint64_t SeededGenerator::uniform_index(std::uint64_t bound) {
  // Lemire's nearly-divisionless method with rejection.
  unsigned __int128 product =
      static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double SeededGenerator::standard_normal() {
  return normal_quantile(uniform());
}

double SeededGenerator::standard_exponential() { return -std::log(uniform()); }

}  // namespace tailfit
