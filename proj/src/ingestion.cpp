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

#include "tailfit/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>

#include "tailfit/error.hpp"

namespace tailfit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits on commas; no quoting.
std::size_t split(std::string_view line, std::string_view (&fields)[4]) {
  std::size_t count = 0;
  while (true) {
    const auto comma = line.find(',');
    if (count == 4) return 5;
    fields[count++] = trim(line.substr(0, comma));
    if (comma == std::string_view::npos) return count;
    line.remove_prefix(comma + 1);
  }
}

std::optional<double> parse_timestamp(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) return std::nullopt;
  if (!std::isfinite(value) || value < 0.0) return std::nullopt;
  return value;
}

struct Stamp {
  std::uint32_t actor;
  double timestamp;
};

// Gaps of every actor in `stamps`, which is sorted here.
Durations gaps_of(std::vector<Stamp>& stamps) {
  std::sort(stamps.begin(), stamps.end(), [](const Stamp& a, const Stamp& b) {
    return a.actor != b.actor ? a.actor < b.actor : a.timestamp < b.timestamp;
  });
  Durations out;
  out.values.reserve(stamps.size());
  for (std::size_t i = 1; i < stamps.size(); ++i) {
    if (stamps[i].actor != stamps[i - 1].actor) continue;
    const double gap = stamps[i].timestamp - stamps[i - 1].timestamp;
    if (gap > 0.0) {
      out.values.push_back(gap);
    } else {
      ++out.zero_gaps_dropped;
    }
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

std::vector<Stamp> stamps_of(const EventLog& log,
                             const DurationOptions& options) {
  std::vector<Stamp> stamps;
  stamps.reserve(log.events().size());
  for (const EventRecord& e : log.events()) {
    if (options.direction && e.direction != *options.direction) continue;
    stamps.push_back({e.actor, e.timestamp});
  }
  return stamps;
}

}  // namespace

std::string_view to_string(Direction direction) {
  switch (direction) {
    case Direction::outbound:
      return "outbound";
    case Direction::inbound:
      return "inbound";
    case Direction::unspecified:
      break;
  }
  return "";
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text.empty()) return Direction::unspecified;
  if (text == "outbound" || text == "out") return Direction::outbound;
  if (text == "inbound" || text == "in") return Direction::inbound;
  return std::nullopt;
}

std::uint32_t EventLog::intern(std::string_view actor) {
  if (const auto it = ids_.find(actor); it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(actor);
  ids_.emplace(names_.back(), id);
  return id;
}

EventLog parse_events(std::istream& in) {
  if (!in) throw IoError("event input is not readable");
  EventLog log;
  std::string line;
  bool header_seen = false;
  bool has_direction = false;
  std::string_view fields[4];

  while (std::getline(in, line)) {
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const std::size_t count = split(text, fields);
    if (!header_seen) {
      header_seen = true;
      if ((count == 2 || count == 3) && fields[0] == "actor" &&
          fields[1] == "timestamp" && (count == 2 || fields[2] == "direction")) {
        has_direction = count == 3;
        continue;
      }
      // Headerless input: rows may carry the optional direction column.
      has_direction = true;
    }
    const std::size_t expected = has_direction ? 3 : 2;
    std::optional<double> ts;
    std::optional<Direction> dir = Direction::unspecified;
    const bool shape_ok =
        count == expected || (has_direction && count == 2);
    if (shape_ok && !fields[0].empty()) {
      ts = parse_timestamp(fields[1]);
      if (count == 3) dir = parse_direction(fields[2]);
    }
    if (!shape_ok || fields[0].empty() || !ts || !dir) {
      ++log.summary().events_dropped;
      continue;
    }
    log.add({log.intern(fields[0]), *dir, *ts});
    ++log.summary().events_read;
  }
  if (in.bad()) throw IoError("read error on event input");

  auto& summary = log.summary();
  summary.actors = log.actors();
  const std::size_t data_lines = summary.events_read + summary.events_dropped;
  if (data_lines == 0) throw EmptySampleError("event input has no events");
  if (2 * summary.events_dropped > data_lines) {
    throw IoError(std::to_string(summary.events_dropped) + " of " +
                  std::to_string(data_lines) +
                  " event lines are malformed (more than half)");
  }
  return log;
}

Durations parse_precomputed(std::istream& in, IngestSummary& summary) {
  if (!in) throw IoError("duration input is not readable");
  summary = {};
  Durations out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    const bool header = first && text == "duration";
    first = false;
    if (header) continue;
    const auto value = parse_timestamp(text);
    if (!value) {
      ++summary.events_dropped;
    } else if (*value == 0.0) {
      ++summary.events_read;
      ++out.zero_gaps_dropped;
    } else {
      ++summary.events_read;
      out.values.push_back(*value);
    }
  }
  if (in.bad()) throw IoError("read error on duration input");
  const std::size_t data_lines = summary.events_read + summary.events_dropped;
  if (data_lines == 0) throw EmptySampleError("duration input has no values");
  if (2 * summary.events_dropped > data_lines) {
    throw IoError(std::to_string(summary.events_dropped) + " of " +
                  std::to_string(data_lines) +
                  " duration lines are malformed (more than half)");
  }
  std::sort(out.values.begin(), out.values.end());
  summary.durations_emitted = out.values.size();
  summary.zero_gaps_dropped = out.zero_gaps_dropped;
  return out;
}

Durations interevent_durations(EventLog& log, const DurationOptions& options) {
  auto stamps = stamps_of(log, options);
  Durations out = gaps_of(stamps);
  auto& summary = log.summary();
  summary.actors = log.actors();
  summary.durations_emitted = out.values.size();
  summary.zero_gaps_dropped = out.zero_gaps_dropped;
  return out;
}

std::vector<std::pair<std::string, std::vector<double>>> per_actor_durations(
    const EventLog& log, const DurationOptions& options) {
  auto stamps = stamps_of(log, options);
  std::sort(stamps.begin(), stamps.end(), [](const Stamp& a, const Stamp& b) {
    return a.actor != b.actor ? a.actor < b.actor : a.timestamp < b.timestamp;
  });
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (std::size_t i = 0; i < stamps.size();) {
    std::size_t j = i;
    std::vector<double> gaps;
    while (j + 1 < stamps.size() && stamps[j + 1].actor == stamps[i].actor) {
      const double gap = stamps[j + 1].timestamp - stamps[j].timestamp;
      if (gap > 0.0) gaps.push_back(gap);
      ++j;
    }
    if (j > i) out.emplace_back(log.actor_names()[stamps[i].actor], std::move(gaps));
    i = j + 1;
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool ResolutionRule::coarse(const EventRecord& event) const {
  if (epoch) return event.timestamp < *epoch;
  return std::fmod(event.timestamp, step) == 0.0;
}

std::vector<ResolutionPartition> split_by_resolution(
    const EventLog& log, const ResolutionRule& rule,
    const DurationOptions& options) {
  if (!(rule.step > 0.0) || !std::isfinite(rule.step)) {
    throw ParameterError("resolution step must be positive and finite");
  }
  std::vector<Stamp> coarse, fine;
  for (const EventRecord& e : log.events()) {
    if (options.direction && e.direction != *options.direction) continue;
    (rule.coarse(e) ? coarse : fine).push_back({e.actor, e.timestamp});
  }

  std::vector<ResolutionPartition> out;
  Durations c = gaps_of(coarse);
  if (!c.values.empty()) {
    for (double& v : c.values) v /= rule.step;
    out.push_back({"coarse",
                   DurationSample::from_sorted(std::move(c.values),
                                               TimeUnit::from_factor(rule.step),
                                               1.0),
                   c.zero_gaps_dropped});
  }
  Durations f = gaps_of(fine);
  if (!f.values.empty()) {
    out.push_back({"fine",
                   DurationSample::from_sorted(std::move(f.values),
                                               TimeUnit::seconds()),
                   f.zero_gaps_dropped});
  }
  return out;
}

}  // namespace tailfit
