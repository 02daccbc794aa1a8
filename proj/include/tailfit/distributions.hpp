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

#ifndef TAILFIT_DISTRIBUTIONS_HPP_
#define TAILFIT_DISTRIBUTIONS_HPP_

#include <variant>

namespace tailfit {

/// Continuous power law with density c * t^-gamma on [tau, inf).
///
/// The normalization is c = (gamma - 1) * tau^(gamma - 1), the constant that
/// makes Pr[X > kappa] = (kappa / tau)^(1 - gamma).
class PowerLawModel {
 public:
  /// Throws ParameterError unless gamma > 1 and tau > 0.
  PowerLawModel(double gamma, double tau);

  double gamma() const { return gamma_; }
  double tau() const { return tau_; }
  double normalization() const;

  /// Density at t; DomainError for t < tau.
  double pdf(double t) const;
  double log_pdf(double t) const;

  /// Distribution function; 0 below tau.
  double cdf(double t) const;
  /// 1 - cdf(t); 1 below tau.
  double sf(double t) const;

  /// Pr[X > kappa] = (kappa/tau)^(1-gamma); DomainError for kappa < tau.
  double tail_probability(double kappa) const;

  /// Inverse distribution function, tau * (1-u)^(-1/(gamma-1)), u in [0, 1).
  double quantile(double u) const;

  friend bool operator==(const PowerLawModel&, const PowerLawModel&) = default;

 private:
  double gamma_;
  double tau_;
};

/// Law of e^Y with Y ~ N(mu, sigma^2). Natural logarithms throughout.
class LognormalModel {
 public:
  /// Throws ParameterError unless sigma > 0 and both are finite.
  LognormalModel(double mu, double sigma);

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }

  /// Density; pdf(0) = 0, DomainError for t < 0.
  double pdf(double t) const;
  /// log density for t > 0.
  double log_pdf(double t) const;
  /// Phi((ln t - mu) / sigma); DomainError for t < 0.
  double cdf(double t) const;
  double sf(double t) const;
  double log_sf(double t) const;
  double quantile(double u) const;

  double mean() const;
  double variance() const;
  /// Location of the density maximum, e^(mu - sigma^2).
  double mode() const;
  /// Density at the mode, e^(-mu) e^(sigma^2/2) / (sigma sqrt(2 pi)).
  double max_density() const;

  friend bool operator==(const LognormalModel&,
                         const LognormalModel&) = default;

 private:
  double mu_;
  double sigma_;
};

using Model = std::variant<PowerLawModel, LognormalModel>;

double cdf(const Model& model, double t);
double log_pdf(const Model& model, double t);
double sf(const Model& model, double t);

/// Pr[a < X <= b], computed from whichever tail keeps precision.
double interval_probability(const Model& model, double a, double b);

struct Moments {
  double mean;
  double variance;
};

Moments ln_moments(const LognormalModel& model);

/// Lognormal with the given mean and variance:
/// sigma^2 = ln(1 + var/mean^2), mu = ln(mean) - sigma^2/2.
LognormalModel params_from_moments(double mean, double variance);

/// Local power-law exponent alpha(t) = 1 + (ln t - 2 mu) / (2 sigma^2), for
/// which pdf(t) = effective_prefactor() * t^-alpha(t) exactly.
double effective_exponent(const LognormalModel& model, double t);

/// e^(-mu^2 / (2 sigma^2)) / (sigma sqrt(2 pi)).
double effective_prefactor(const LognormalModel& model);

/// log of effective_prefactor, finite where the prefactor underflows.
double log_effective_prefactor(const LognormalModel& model);

struct Interval {
  double lower;
  double upper;
};

/// Range [e^(2mu - 2 sigma^2 eps), e^(2mu + 2 sigma^2 eps)] on which
/// |alpha(t) - 1| <= eps. eps = 0 collapses to the point e^(2 mu).
Interval power_law_window(const LognormalModel& model, double epsilon);

/// ln pdf(t) as a quadratic in ln t.
struct LogLogCoefficients {
  double quadratic;  // -1 / (2 sigma^2)
  double linear;     // mu / sigma^2 - 1
  double constant;   // -ln(sqrt(2 pi) sigma) - mu^2 / (2 sigma^2)

  double operator()(double log_t) const {
    return (quadratic * log_t + linear) * log_t + constant;
  }
};

LogLogCoefficients loglog_coefficients(const LognormalModel& model);

}  // namespace tailfit

#endif  // TAILFIT_DISTRIBUTIONS_HPP_
