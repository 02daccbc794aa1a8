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

#ifndef TAILFIT_INGESTION_HPP_
#define TAILFIT_INGESTION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tailfit/sample.hpp"

namespace tailfit {

enum class Direction : std::uint8_t { unspecified, outbound, inbound };

std::string_view to_string(Direction direction);
/// "outbound"/"out", "inbound"/"in", or empty for unspecified.
std::optional<Direction> parse_direction(std::string_view text);

struct EventRecord {
  std::uint32_t actor = 0;
  Direction direction = Direction::unspecified;
  /// Seconds since the epoch.
  double timestamp = 0.0;
};

struct IngestSummary {
  std::size_t events_read = 0;
  /// Malformed lines that were skipped.
  std::size_t events_dropped = 0;
  std::size_t actors = 0;
  std::size_t durations_emitted = 0;
  std::size_t zero_gaps_dropped = 0;
};

/// Parsed events with interned actor names.
class EventLog {
 public:
  std::uint32_t intern(std::string_view actor);
  void add(const EventRecord& record) { events_.push_back(record); }

  const std::vector<EventRecord>& events() const { return events_; }
  const std::vector<std::string>& actor_names() const { return names_; }
  std::size_t actors() const { return names_.size(); }
  const IngestSummary& summary() const { return summary_; }
  IngestSummary& summary() { return summary_; }

 private:
  std::vector<EventRecord> events_;
  std::vector<std::string> names_;
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, std::uint32_t, Hash, std::equal_to<>> ids_;
  IngestSummary summary_;
};

/// Reads CSV `actor,timestamp[,direction]` in one pass; the header line is
/// optional. Malformed lines are counted and skipped; more than half
/// malformed data lines is an IoError. No data lines at all is an
/// EmptySampleError.
EventLog parse_events(std::istream& in);

struct DurationOptions {
  /// Keep only events with this direction.
  std::optional<Direction> direction;
};

struct Durations {
  /// Pooled gaps, ascending.
  std::vector<double> values;
  std::size_t zero_gaps_dropped = 0;
};

/// Pre-computed mode: one duration per line, optional `duration` header.
/// Same malformed-line policy as parse_events; zeros are dropped and counted.
/// Fills `summary` (actors stays 0). Values come back ascending.
Durations parse_precomputed(std::istream& in, IngestSummary& summary);

/// Per actor: sort timestamps, take successive differences, drop zeros;
/// gaps of every actor are pooled. Updates the log's summary counters.
Durations interevent_durations(EventLog& log,
                               const DurationOptions& options = {});

/// Same gaps kept per actor, in actor-name order; actors with fewer than two
/// events are omitted.
std::vector<std::pair<std::string, std::vector<double>>> per_actor_durations(
    const EventLog& log, const DurationOptions& options = {});

/// Labels an event with a resolution class.
struct ResolutionRule {
  /// Storage resolution of the coarse class, in seconds.
  double step = 60.0;
  /// Events strictly before this timestamp are coarse. Without an epoch,
  /// events whose timestamp is a multiple of `step` are coarse.
  std::optional<double> epoch;

  bool coarse(const EventRecord& event) const;
};

struct ResolutionPartition {
  /// "coarse" or "fine".
  std::string label;
  /// Coarse gaps are expressed in units of the step, at resolution 1; fine
  /// gaps stay in seconds.
  DurationSample sample;
  std::size_t zero_gaps_dropped = 0;
};

/// Gaps computed within each resolution class separately; a gap between
/// events of different classes is not emitted. Empty classes are omitted.
std::vector<ResolutionPartition> split_by_resolution(
    const EventLog& log, const ResolutionRule& rule,
    const DurationOptions& options = {});

}  // namespace tailfit

#endif  // TAILFIT_INGESTION_HPP_
