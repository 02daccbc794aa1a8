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

#ifndef TAILFIT_SYNTHESIS_HPP_
#define TAILFIT_SYNTHESIS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tailfit/distributions.hpp"
#include "tailfit/random.hpp"
#include "tailfit/sample.hpp"

namespace tailfit {

/// Draws are produced in chunks of this size; chunk k uses substream k of the
/// caller's generator, so output does not depend on the worker count.
inline constexpr std::size_t kDrawChunk = std::size_t{1} << 16;

/// n i.i.d. draws of e^N(mu, sigma^2), in generation order.
std::vector<double> draw_lognormal(const LognormalModel& model, std::size_t n,
                                   const SeededGenerator& gen);

/// n draws tau * (1-U)^(-1/(gamma-1)), in generation order.
std::vector<double> draw_powerlaw(const PowerLawModel& model, std::size_t n,
                                  const SeededGenerator& gen);

/// n draws e^Y with Y = ln(tau) + E/(gamma-1), E ~ Exp(1), in generation order.
std::vector<double> draw_exp_of_exponential(double gamma, double tau,
                                            std::size_t n,
                                            const SeededGenerator& gen);

/// The transform behind draw_exp_of_exponential for one unit-rate
/// exponential draw; exponential_draw = 0 gives tau.
double exp_of_exponential_value(double gamma, double tau,
                                double exponential_draw);

/// Sorted-sample versions of the draws above. n = 0 is an EmptySampleError.
DurationSample sample_lognormal(const LognormalModel& model, std::size_t n,
                                const SeededGenerator& gen);
DurationSample sample_powerlaw(const PowerLawModel& model, std::size_t n,
                               const SeededGenerator& gen);
DurationSample sample_exp_of_exponential(double gamma, double tau,
                                         std::size_t n,
                                         const SeededGenerator& gen);

/// n ascending power-law draws in O(n) via uniform order statistics
/// (normalized exponential spacings). Same law as sorting draw_powerlaw.
std::vector<double> sorted_powerlaw_draws(const PowerLawModel& model,
                                          std::size_t n, SeededGenerator& gen);

/// Law of the per-step log growth factor xi = ln a of a Gibrat process.
struct LogFactorLaw {
  std::string family;
  double mean = 0.0;
  double stddev = 0.0;
  /// One draw of xi. Any i.i.d. law with finite variance is admissible.
  std::function<double(SeededGenerator&)> draw;

  static LogFactorLaw normal(double mean, double stddev);
};

struct GibratProcess {
  double s0 = 1.0;
  std::size_t steps = 1;
  LogFactorLaw log_factor = LogFactorLaw::normal(0.0, 0.1);
  std::size_t agents = 1;
};

/// Log-sizes of every agent at every step 0..steps, row-major by agent.
class GibratTrajectories {
 public:
  GibratTrajectories(std::size_t agents, std::size_t steps,
                     std::vector<double> log_sizes);

  std::size_t agents() const { return agents_; }
  std::size_t steps() const { return steps_; }
  double log_size(std::size_t agent, std::size_t step) const {
    return log_sizes_[agent * (steps_ + 1) + step];
  }
  double size(std::size_t agent, std::size_t step) const;
  std::span<const double> path(std::size_t agent) const;

  std::vector<double> final_log_sizes() const;
  DurationSample final_sizes() const;

 private:
  std::size_t agents_;
  std::size_t steps_;
  std::vector<double> log_sizes_;
};

/// Simulates S_t = a_t * S_{t-1} additively in log space. Agent i uses
/// substream i of `gen`.
GibratTrajectories run_gibrat(const GibratProcess& process,
                              const SeededGenerator& gen);

/// Synthetic event log for pipeline tests: `actors` actors, `events` lines in
/// total, written round-robin as CSV `actor,timestamp` with a header. Gaps
/// between an actor's events are lognormal, truncated to whole seconds.
/// Memory use is O(actors).
void write_synthetic_event_log(std::ostream& out, std::size_t actors,
                               std::size_t events, const LognormalModel& gaps,
                               const SeededGenerator& gen);

}  // namespace tailfit

#endif  // TAILFIT_SYNTHESIS_HPP_
