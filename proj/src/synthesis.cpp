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

#include "tailfit/synthesis.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "tailfit/error.hpp"
#include "tailfit/parallel.hpp"

namespace tailfit {

namespace {

template <typename Draw>
std::vector<double> draw_chunked(std::size_t n, const SeededGenerator& gen,
                                 Draw draw) {
  std::vector<double> out(n);
  const std::size_t chunks = (n + kDrawChunk - 1) / kDrawChunk;
  parallel_for(chunks, [&](std::size_t c) {
    SeededGenerator local = gen.substream(c);
    const std::size_t end = std::min(n, (c + 1) * kDrawChunk);
    for (std::size_t i = c * kDrawChunk; i < end; ++i) out[i] = draw(local);
  });
  return out;
}

void require_nonempty(std::size_t n) {
  if (n == 0) throw EmptySampleError("requested a sample of size 0");
}

}  // namespace

std::vector<double> draw_lognormal(const LognormalModel& model, std::size_t n,
                                   const SeededGenerator& gen) {
  const double mu = model.mu();
  const double sigma = model.sigma();
  return draw_chunked(n, gen, [mu, sigma](SeededGenerator& g) {
    return std::exp(mu + sigma * g.standard_normal());
  });
}

std::vector<double> draw_powerlaw(const PowerLawModel& model, std::size_t n,
                                  const SeededGenerator& gen) {
  return draw_chunked(n, gen, [&model](SeededGenerator& g) {
    return model.quantile(g.uniform());
  });
}

double exp_of_exponential_value(double gamma, double tau,
                                double exponential_draw) {
  if (!(gamma > 1.0)) throw ParameterError("gamma must exceed 1");
  if (!(tau > 0.0)) throw ParameterError("tau must be positive");
  return std::exp(std::log(tau) + exponential_draw / (gamma - 1.0));
}

std::vector<double> draw_exp_of_exponential(double gamma, double tau,
                                            std::size_t n,
                                            const SeededGenerator& gen) {
  exp_of_exponential_value(gamma, tau, 0.0);  // validates
  const double log_tau = std::log(tau);
  const double rate = gamma - 1.0;
  return draw_chunked(n, gen, [=](SeededGenerator& g) {
    return std::exp(log_tau + g.standard_exponential() / rate);
  });
}

DurationSample sample_lognormal(const LognormalModel& model, std::size_t n,
                                const SeededGenerator& gen) {
  require_nonempty(n);
  return DurationSample(draw_lognormal(model, n, gen));
}

DurationSample sample_powerlaw(const PowerLawModel& model, std::size_t n,
                               const SeededGenerator& gen) {
  require_nonempty(n);
  return DurationSample(draw_powerlaw(model, n, gen));
}

DurationSample sample_exp_of_exponential(double gamma, double tau,
                                         std::size_t n,
                                         const SeededGenerator& gen) {
  require_nonempty(n);
  return DurationSample(draw_exp_of_exponential(gamma, tau, n, gen));
}

std::vector<double> sorted_powerlaw_draws(const PowerLawModel& model,
                                          std::size_t n,
                                          SeededGenerator& gen) {
  std::vector<double> out(n);
  if (n == 0) return out;
  // Spacings E_1..E_{n+1}; the k-th smallest of n uniforms is
  // (E_1 + .. + E_k) / (E_1 + .. + E_{n+1}), so its complement is the
  // normalized suffix sum, which keeps full precision in the deep tail.
  std::vector<double> spacing(n + 1);
  for (double& e : spacing) e = gen.standard_exponential();
  double total = 0.0;
  for (double e : spacing) total += e;
  const double inv_slope = -1.0 / (model.gamma() - 1.0);
  double suffix = total;
  for (std::size_t k = 0; k < n; ++k) {
    suffix -= spacing[k];
    const double complement = suffix / total;
    out[k] = model.tau() * std::exp(inv_slope * std::log(complement));
  }
  // Subtractive suffix sums can wobble by an ulp; restore monotonicity.
  for (std::size_t k = 1; k < n; ++k) {
    if (out[k] < out[k - 1]) out[k] = out[k - 1];
  }
  for (double& v : out) {
    if (v < model.tau()) v = model.tau();
  }
  return out;
}

LogFactorLaw LogFactorLaw::normal(double mean, double stddev) {
  if (!std::isfinite(mean) || !(stddev >= 0.0) || !std::isfinite(stddev)) {
    throw ParameterError("log-factor law needs finite mean and stddev >= 0");
  }
  return {"normal", mean, stddev, [mean, stddev](SeededGenerator& g) {
            return mean + stddev * g.standard_normal();
          }};
}

GibratTrajectories::GibratTrajectories(std::size_t agents, std::size_t steps,
                                       std::vector<double> log_sizes)
    : agents_(agents), steps_(steps), log_sizes_(std::move(log_sizes)) {
  if (log_sizes_.size() != agents_ * (steps_ + 1)) {
    throw ParameterError("trajectory storage does not match agents x steps");
  }
}

double GibratTrajectories::size(std::size_t agent, std::size_t step) const {
  return std::exp(log_size(agent, step));
}

std::span<const double> GibratTrajectories::path(std::size_t agent) const {
  return std::span<const double>(log_sizes_).subspan(agent * (steps_ + 1),
                                                     steps_ + 1);
}

std::vector<double> GibratTrajectories::final_log_sizes() const {
  std::vector<double> out(agents_);
  for (std::size_t a = 0; a < agents_; ++a) out[a] = log_size(a, steps_);
  return out;
}

DurationSample GibratTrajectories::final_sizes() const {
  std::vector<double> out(agents_);
  for (std::size_t a = 0; a < agents_; ++a) out[a] = size(a, steps_);
  return DurationSample(std::move(out), TimeUnit{"size", 1.0});
}

GibratTrajectories run_gibrat(const GibratProcess& process,
                              const SeededGenerator& gen) {
  if (!(process.s0 > 0.0) || !std::isfinite(process.s0)) {
    throw ParameterError("Gibrat initial size must be positive");
  }
  if (process.steps < 1) throw ParameterError("Gibrat process needs steps >= 1");
  if (process.agents < 1) throw ParameterError("Gibrat process needs agents >= 1");
  if (!process.log_factor.draw) {
    throw ParameterError("Gibrat log-factor law has no sampler");
  }

  const std::size_t width = process.steps + 1;
  std::vector<double> log_sizes(process.agents * width);
  const double log_s0 = std::log(process.s0);
  parallel_for(process.agents, [&](std::size_t agent) {
    SeededGenerator local = gen.substream(agent);
    double* row = log_sizes.data() + agent * width;
    row[0] = log_s0;
    for (std::size_t t = 1; t <= process.steps; ++t) {
      row[t] = row[t - 1] + process.log_factor.draw(local);
    }
  });
  return GibratTrajectories(process.agents, process.steps,
                            std::move(log_sizes));
}

void write_synthetic_event_log(std::ostream& out, std::size_t actors,
                               std::size_t events, const LognormalModel& gaps,
                               const SeededGenerator& gen) {
  if (actors == 0) throw ParameterError("event log needs at least one actor");
  std::vector<double> clock(actors);
  std::vector<SeededGenerator> streams;
  streams.reserve(actors);
  for (std::size_t a = 0; a < actors; ++a) {
    streams.push_back(gen.substream(a));
    clock[a] = std::floor(streams.back().uniform() * 1e6);
  }

  out << "actor,timestamp\n";
  std::string line;
  char buffer[32];
  for (std::size_t k = 0; k < events; ++k) {
    const std::size_t a = k % actors;
    if (k >= actors) {
      const double gap = gaps.quantile(streams[a].uniform());
      clock[a] = std::floor(clock[a] + gap);
    }
    line.assign("u");
    line += std::to_string(a);
    line += ',';
    const auto res = std::to_chars(buffer, buffer + sizeof buffer, clock[a]);
    line.append(buffer, res.ptr);
    line += '\n';
    out << line;
  }
}

}  // namespace tailfit
