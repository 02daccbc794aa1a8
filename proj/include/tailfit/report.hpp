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

#ifndef TAILFIT_REPORT_HPP_
#define TAILFIT_REPORT_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tailfit/estimation.hpp"

namespace tailfit {

/// One row of the results table: whichever fits were run on one sample.
struct TableRow {
  std::optional<FitReport> powerlaw;
  std::optional<FitReport> lognormal;
  std::optional<ComparisonReport> comparison;
  std::size_t n = 0;
};

/// Keys, in order: dist, gamma, p, xmin, mu, sigma, loglik_p, LR, n.
/// Absent values are null. `p` is the bootstrap p-value of the power law,
/// or of the lognormal when only the lognormal was fitted. `loglik_p` and
/// `LR` come from the likelihood-ratio comparison.
nlohmann::ordered_json to_json(const TableRow& row);

inline constexpr std::string_view kJsonKeys[] = {
    "dist", "gamma", "p", "xmin", "mu", "sigma", "loglik_p", "LR", "n"};

/// Empty when `row` matches the schema, otherwise the reason.
std::optional<std::string> schema_error(const nlohmann::json& row);

enum class TableStyle { markdown, csv };
TableStyle parse_table_style(std::string_view name);

/// Columns dist, gamma(pl), p(pl), xmin, mu, sigma, p(ln), LR, n, verdict;
/// one line per row in input order. Rows must satisfy the schema. The
/// verdict follows the sign of LR when p(ln) is below `threshold`.
void write_table(std::ostream& out, const std::vector<nlohmann::json>& rows,
                 TableStyle style,
                 double threshold = kDefaultVerdictThreshold);

}  // namespace tailfit

#endif  // TAILFIT_REPORT_HPP_
