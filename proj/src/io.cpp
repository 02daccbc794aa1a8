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

#include "tailfit/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "tailfit/error.hpp"

namespace tailfit {

namespace {

void put_u64_le(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

bool get_u64_le(std::istream& in, std::uint64_t& v) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) return false;
  v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_number(std::string_view text, double& value) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && end == text.data() + text.size();
}

std::vector<double> read_binary(std::istream& in) {
  std::uint64_t count = 0;
  if (!get_u64_le(in, count)) throw IoError("binary durations: missing count");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, 1u << 24)));
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    if (!get_u64_le(in, bits)) {
      throw IoError("binary durations: expected " + std::to_string(count) +
                    " values, found " + std::to_string(i));
    }
    values.push_back(std::bit_cast<double>(bits));
  }
  return values;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "jsonl") return OutputFormat::jsonl;
  if (name == "bin") return OutputFormat::bin;
  throw ParameterError("unknown format '" + std::string(name) +
                       "' (expected csv, jsonl or bin)");
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buffer, end);
}

void write_durations(std::ostream& out, std::span<const double> values,
                     OutputFormat format) {
  switch (format) {
    case OutputFormat::bin:
      out.write(kBinaryMagic, 4);
      put_u64_le(out, values.size());
      for (double v : values) put_u64_le(out, std::bit_cast<std::uint64_t>(v));
      break;
    case OutputFormat::jsonl:
      for (double v : values) out << "{\"duration\":" << format_double(v) << "}\n";
      break;
    case OutputFormat::csv:
      for (double v : values) out << format_double(v) << '\n';
      break;
  }
  if (!out) throw IoError("write failed");
}

std::vector<double> read_durations(std::istream& in) {
  if (!in) throw IoError("duration input is not readable");
  char magic[4] = {};
  in.read(magic, 4);
  const std::streamsize got = in.gcount();
  if (got == 4 && std::memcmp(magic, kBinaryMagic, 4) == 0) {
    return read_binary(in);
  }
  std::vector<double> values;
  std::size_t line_number = 0;
  auto process = [&](std::string_view raw) {
    ++line_number;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') return;
    double v = 0.0;
    if (parse_number(text, v)) {
      values.push_back(v);
    } else if (text.front() == '{') {
      const auto j = nlohmann::json::parse(text, nullptr, false);
      if (j.is_discarded() || !j.contains("duration") ||
          !j["duration"].is_number()) {
        throw IoError("line " + std::to_string(line_number) +
                      ": expected {\"duration\": number}");
      }
      values.push_back(j["duration"].get<double>());
    } else if (!(values.empty() && text == "duration")) {
      throw IoError("line " + std::to_string(line_number) +
                    ": not a number: '" + std::string(text.substr(0, 40)) + "'");
    }
  };

  // The bytes consumed while probing for the magic start the first line.
  std::string head(magic, static_cast<std::size_t>(got));
  for (auto pos = head.find('\n'); pos != std::string::npos;
       pos = head.find('\n')) {
    process(std::string_view(head).substr(0, pos));
    head.erase(0, pos + 1);
  }
  std::string line;
  if (std::getline(in, line)) head += line;
  if (!head.empty()) process(head);
  while (std::getline(in, line)) process(line);
  if (in.bad()) throw IoError("read error on duration input");
  return values;
}

void write_histogram(std::ostream& out, const Histogram& histogram,
                     OutputFormat format) {
  if (format == OutputFormat::bin) {
    throw ParameterError("histograms are written as csv or jsonl");
  }
  if (format == OutputFormat::csv) out << "bin_left,bin_right,count,density\n";
  for (std::size_t j = 0; j < histogram.size(); ++j) {
    const Bin& b = histogram[j];
    const std::string density = format_double(histogram.density(j));
    if (format == OutputFormat::csv) {
      out << format_double(b.left) << ',' << format_double(b.right) << ','
          << b.count << ',' << density << '\n';
    } else {
      out << "{\"bin_left\":" << format_double(b.left)
          << ",\"bin_right\":" << format_double(b.right)
          << ",\"count\":" << b.count << ",\"density\":" << density << "}\n";
    }
  }
  if (!out) throw IoError("write failed");
}

}  // namespace tailfit
