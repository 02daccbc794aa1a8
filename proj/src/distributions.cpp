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

#include "tailfit/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tailfit/error.hpp"
#include "tailfit/special.hpp"

namespace tailfit {

namespace {

std::string str(double v) { return std::to_string(v); }

}  // namespace

PowerLawModel::PowerLawModel(double gamma, double tau)
    : gamma_(gamma), tau_(tau) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw ParameterError("power-law exponent must satisfy gamma > 1, got " +
                         str(gamma));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ParameterError("power-law lower bound must satisfy tau > 0, got " +
                         str(tau));
  }
}

double PowerLawModel::normalization() const {
  return std::exp(std::log(gamma_ - 1.0) + (gamma_ - 1.0) * std::log(tau_));
}

double PowerLawModel::log_pdf(double t) const {
  if (!(t >= tau_)) {
    throw DomainError("power-law density requested at t=" + str(t) +
                      " below tau=" + str(tau_));
  }
  return std::log(gamma_ - 1.0) + (gamma_ - 1.0) * std::log(tau_) -
         gamma_ * std::log(t);
}

double PowerLawModel::pdf(double t) const { return std::exp(log_pdf(t)); }

double PowerLawModel::sf(double t) const {
  if (!(t > tau_)) return 1.0;
  return std::exp((1.0 - gamma_) * std::log(t / tau_));
}

double PowerLawModel::cdf(double t) const {
  if (!(t > tau_)) return 0.0;
  return -std::expm1((1.0 - gamma_) * std::log(t / tau_));
}

double PowerLawModel::tail_probability(double kappa) const {
  if (!(kappa >= tau_)) {
    throw DomainError("upper cutoff kappa=" + str(kappa) +
                      " lies below tau=" + str(tau_));
  }
  return sf(kappa);
}

double PowerLawModel::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) {
    throw DomainError("power-law quantile needs u in [0, 1), got " + str(u));
  }
  return tau_ * std::exp(-std::log1p(-u) / (gamma_ - 1.0));
}

LognormalModel::LognormalModel(double mu, double sigma)
    : mu_(mu), sigma_(sigma) {
  if (!std::isfinite(mu)) throw ParameterError("lognormal mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("lognormal sigma must be > 0, got " + str(sigma));
  }
}

double LognormalModel::log_pdf(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("lognormal log-density needs t > 0, got " + str(t));
  }
  const double z = (std::log(t) - mu_) / sigma_;
  return -0.5 * z * z - std::log(sigma_) - std::log(t) - kLnSqrt2Pi;
}

double LognormalModel::pdf(double t) const {
  if (t < 0.0 || std::isnan(t)) {
    throw DomainError("lognormal density needs t >= 0, got " + str(t));
  }
  if (t == 0.0) return 0.0;
  return std::exp(log_pdf(t));
}

double LognormalModel::cdf(double t) const {
  if (t < 0.0 || std::isnan(t)) {
    throw DomainError("lognormal distribution function needs t >= 0, got " +
                      str(t));
  }
  if (t == 0.0) return 0.0;
  return normal_cdf((std::log(t) - mu_) / sigma_);
}

double LognormalModel::sf(double t) const {
  if (t < 0.0 || std::isnan(t)) {
    throw DomainError("lognormal survival function needs t >= 0, got " +
                      str(t));
  }
  if (t == 0.0) return 1.0;
  return normal_sf((std::log(t) - mu_) / sigma_);
}

double LognormalModel::log_sf(double t) const {
  if (t < 0.0 || std::isnan(t)) {
    throw DomainError("lognormal survival function needs t >= 0, got " +
                      str(t));
  }
  if (t == 0.0) return 0.0;
  return normal_log_sf((std::log(t) - mu_) / sigma_);
}

double LognormalModel::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw DomainError("lognormal quantile needs u in [0, 1], got " + str(u));
  }
  return std::exp(mu_ + sigma_ * normal_quantile(u));
}

double LognormalModel::mean() const {
  return std::exp(mu_ + 0.5 * sigma_ * sigma_);
}

double LognormalModel::variance() const {
  const double s2 = sigma_ * sigma_;
  return std::exp(2.0 * mu_ + s2) * std::expm1(s2);
}

double LognormalModel::mode() const { return std::exp(mu_ - sigma_ * sigma_); }

double LognormalModel::max_density() const {
  return std::exp(-mu_ + 0.5 * sigma_ * sigma_ - std::log(sigma_) -
                  kLnSqrt2Pi);
}

double cdf(const Model& model, double t) {
  return std::visit([t](const auto& m) { return m.cdf(t); }, model);
}

double log_pdf(const Model& model, double t) {
  return std::visit([t](const auto& m) { return m.log_pdf(t); }, model);
}

double sf(const Model& model, double t) {
  return std::visit([t](const auto& m) { return m.sf(t); }, model);
}

double interval_probability(const Model& model, double a, double b) {
  if (!(b > a)) return 0.0;
  const double fa = cdf(model, a);
  if (fa < 0.5) return cdf(model, b) - fa;
  return sf(model, a) - sf(model, b);
}

Moments ln_moments(const LognormalModel& model) {
  return {model.mean(), model.variance()};
}

LognormalModel params_from_moments(double mean, double variance) {
  if (!(mean > 0.0) || !(variance > 0.0) || !std::isfinite(mean) ||
      !std::isfinite(variance)) {
    throw DomainError("moments must be positive and finite");
  }
  const double ratio = variance / (mean * mean);
  const double sigma2 = std::log1p(ratio);
  return LognormalModel(std::log(mean) - 0.5 * sigma2, std::sqrt(sigma2));
}

double effective_exponent(const LognormalModel& model, double t) {
  if (!(t > 0.0)) {
    throw DomainError("effective exponent needs t > 0, got " + str(t));
  }
  const double s2 = model.sigma() * model.sigma();
  return 1.0 + (std::log(t) - 2.0 * model.mu()) / (2.0 * s2);
}

double log_effective_prefactor(const LognormalModel& model) {
  const double s2 = model.sigma() * model.sigma();
  return -model.mu() * model.mu() / (2.0 * s2) - std::log(model.sigma()) -
         kLnSqrt2Pi;
}

double effective_prefactor(const LognormalModel& model) {
  return std::exp(log_effective_prefactor(model));
}

Interval power_law_window(const LognormalModel& model, double epsilon) {
  if (!(epsilon >= 0.0)) {
    throw ParameterError("window tolerance must be non-negative");
  }
  const double s2 = model.sigma() * model.sigma();
  const double centre = 2.0 * model.mu();
  return {std::exp(centre - 2.0 * s2 * epsilon),
          std::exp(centre + 2.0 * s2 * epsilon)};
}

LogLogCoefficients loglog_coefficients(const LognormalModel& model) {
  const double mu = model.mu();
  const double s2 = model.sigma() * model.sigma();
  return {-1.0 / (2.0 * s2), mu / s2 - 1.0,
          -(std::log(model.sigma()) + kLnSqrt2Pi) - mu * mu / (2.0 * s2)};
}

}  // namespace tailfit
