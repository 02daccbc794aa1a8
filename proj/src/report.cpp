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

#include "tailfit/report.hpp"

#include <cmath>
#include <ostream>

#include "tailfit/error.hpp"
#include "tailfit/io.hpp"

namespace tailfit {

namespace {

nlohmann::ordered_json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::string cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return format_double(v.get<double>());
}

}  // namespace

nlohmann::ordered_json to_json(const TableRow& row) {
  const bool both = row.powerlaw && row.lognormal;
  std::optional<double> gamma, p, xmin, mu, sigma, loglik_p, lr;
  if (row.powerlaw) {
    const auto& m = std::get<PowerLawModel>(row.powerlaw->model);
    gamma = m.gamma();
    p = row.powerlaw->p_value;
    xmin = row.powerlaw->xmin;
  }
  if (row.lognormal) {
    const auto& m = std::get<LognormalModel>(row.lognormal->model);
    mu = m.mu();
    sigma = m.sigma();
    if (!row.powerlaw) {
      p = row.lognormal->p_value;
      xmin = row.lognormal->xmin;
    }
  }
  if (row.comparison) {
    loglik_p = row.comparison->p_value;
    lr = row.comparison->lr;
    if (!xmin) xmin = row.comparison->xmin;
    if (!gamma && row.comparison->powerlaw) {
      gamma = row.comparison->powerlaw->gamma();
    }
    if (!mu && row.comparison->lognormal) {
      mu = row.comparison->lognormal->mu();
      sigma = row.comparison->lognormal->sigma();
    }
  }
  std::string dist = both || (row.comparison && !row.powerlaw && !row.lognormal)
                         ? "both"
                         : row.powerlaw ? "powerlaw" : "lognormal";

  nlohmann::ordered_json j;
  j["dist"] = dist;
  j["gamma"] = number_or_null(gamma);
  j["p"] = number_or_null(p);
  j["xmin"] = number_or_null(xmin);
  j["mu"] = number_or_null(mu);
  j["sigma"] = number_or_null(sigma);
  j["loglik_p"] = number_or_null(loglik_p);
  j["LR"] = number_or_null(lr);
  j["n"] = row.n;
  return j;
}

std::optional<std::string> schema_error(const nlohmann::json& row) {
  if (!row.is_object()) return "not a JSON object";
  if (row.size() != std::size(kJsonKeys)) {
    return "expected " + std::to_string(std::size(kJsonKeys)) + " keys, got " +
           std::to_string(row.size());
  }
  for (std::string_view key : kJsonKeys) {
    const auto it = row.find(key);
    if (it == row.end()) return "missing key '" + std::string(key) + "'";
    if (key == "dist") {
      if (!it->is_string()) return "'dist' is not a string";
      const auto d = it->get<std::string>();
      if (d != "powerlaw" && d != "lognormal" && d != "both") {
        return "unknown dist '" + d + "'";
      }
    } else if (key == "n") {
      if (!it->is_number_unsigned()) return "'n' is not a count";
    } else if (!it->is_null() && !it->is_number()) {
      return "'" + std::string(key) + "' is neither a number nor null";
    }
  }
  return std::nullopt;
}

TableStyle parse_table_style(std::string_view name) {
  if (name == "md" || name == "markdown") return TableStyle::markdown;
  if (name == "csv") return TableStyle::csv;
  throw ParameterError("unknown table style '" + std::string(name) +
                       "' (expected md or csv)");
}

void write_table(std::ostream& out, const std::vector<nlohmann::json>& rows,
                 TableStyle style, double threshold) {
  static constexpr std::string_view kColumns[] = {
      "dist", "gamma(pl)", "p(pl)", "xmin", "mu",
      "sigma", "p(ln)", "LR", "n", "verdict"};
  static constexpr std::string_view kSource[] = {
      "dist", "gamma", "p", "xmin", "mu", "sigma", "loglik_p", "LR", "n"};

  auto emit = [&](const std::vector<std::string>& cells) {
    if (style == TableStyle::csv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        out << (i ? "," : "") << cells[i];
      }
    } else {
      out << '|';
      for (const auto& c : cells) out << ' ' << (c.empty() ? "-" : c) << " |";
    }
    out << '\n';
  };

  emit(std::vector<std::string>(std::begin(kColumns), std::end(kColumns)));
  if (style == TableStyle::markdown) {
    out << '|';
    for (std::size_t i = 0; i < std::size(kColumns); ++i) out << "---|";
    out << '\n';
  }
  for (const auto& row : rows) {
    if (auto e = schema_error(row)) throw ParameterError(*e);
    std::vector<std::string> cells;
    for (std::string_view key : kSource) cells.push_back(cell(row.at(std::string(key))));
    std::string verdict;
    const auto& lr = row.at("LR");
    const auto& p = row.at("loglik_p");
    if (lr.is_number() && p.is_number()) {
      const double l = lr.get<double>();
      const double q = p.get<double>();
      verdict = q < threshold && l > 0.0   ? "powerlaw"
                : q < threshold && l < 0.0 ? "lognormal"
                                           : "undecided";
    }
    cells.push_back(verdict);
    emit(cells);
  }
  if (!out) throw IoError("write failed");
}

}  // namespace tailfit
