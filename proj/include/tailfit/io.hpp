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

#ifndef TAILFIT_IO_HPP_
#define TAILFIT_IO_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tailfit/histogram.hpp"

namespace tailfit {

enum class OutputFormat { csv, jsonl, bin };

/// "csv" | "jsonl" | "bin"; ParameterError otherwise.
OutputFormat parse_output_format(std::string_view name);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

inline constexpr char kBinaryMagic[4] = {'T', 'F', 'D', '1'};

/// csv: one decimal per line. jsonl: one {"duration": v} object per line.
/// bin: magic TFD1, u64 little-endian count, then little-endian doubles.
void write_durations(std::ostream& out, std::span<const double> values,
                     OutputFormat format);

/// Reads any format written by write_durations, detected from the first
/// bytes. Text input may carry blank lines, '#' comments and a leading
/// `duration` header. Malformed input is an IoError naming the line.
std::vector<double> read_durations(std::istream& in);

/// csv: header `bin_left,bin_right,count,density`, one row per bin.
/// jsonl: one object per bin with the same keys.
void write_histogram(std::ostream& out, const Histogram& histogram,
                     OutputFormat format);

}  // namespace tailfit

#endif  // TAILFIT_IO_HPP_
