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

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <gtest/gtest.h>

#include "tailfit/error.hpp"
#include "tailfit/estimation.hpp"
#include "tailfit/ingestion.hpp"
#include "tailfit/random.hpp"
#include "tailfit/synthesis.hpp"

namespace tailfit {
namespace {

EventLog parse(const std::string& text) {
  std::istringstream in(text);
  return parse_events(in);
}

std::vector<double> pooled(const std::string& text) {
  auto log = parse(text);
  return interevent_durations(log).values;
}

TEST(ParseEvents, TwoRecords) {
  const auto log = parse("actor,timestamp\na,100\na,160\n");
  ASSERT_EQ(log.events().size(), 2u);
  EXPECT_EQ(log.actors(), 1u);
  EXPECT_EQ(log.events()[1].timestamp, 160.0);
  EXPECT_EQ(log.summary().events_read, 2u);
}

TEST(ParseEvents, HeaderIsOptional) {
  const auto log = parse("a,100\na,160\n");
  ASSERT_EQ(log.events().size(), 2u);
  EXPECT_EQ(log.actors(), 1u);
  EXPECT_EQ(parse("a,1,out\nb,2\n").events()[0].direction, Direction::outbound);
  EXPECT_THROW(parse("100\n160\n"), IoError);
}

TEST(ParsePrecomputed, PassesDurationsThrough) {
  std::istringstream in("duration\n60\n0\nx\n2.5\n");
  IngestSummary s;
  const auto d = parse_precomputed(in, s);
  EXPECT_EQ(d.values, (std::vector<double>{2.5, 60.0}));
  EXPECT_EQ(s.events_read, 3u);
  EXPECT_EQ(s.events_dropped, 1u);
  EXPECT_EQ(s.zero_gaps_dropped, 1u);
  EXPECT_EQ(s.durations_emitted, 2u);
  std::istringstream empty("duration\n");
  EXPECT_THROW(parse_precomputed(empty, s), EmptySampleError);
  std::istringstream junk("a\nb\n1\n");
  EXPECT_THROW(parse_precomputed(junk, s), IoError);
}

TEST(ParseEvents, MalformedLinesCounted) {
  const auto log = parse("actor,timestamp\na,100\na,abc\nb,5\n,7\nc,-1\nd,1,2\nb,9\ne,1\ne,2\n");
  EXPECT_EQ(log.summary().events_read, 5u);
  EXPECT_EQ(log.summary().events_dropped, 4u);
}

TEST(ParseEvents, DirectionColumn) {
  auto log = parse("actor,timestamp,direction\na,0,out\na,5,in\na,9,outbound\na,20\n");
  EXPECT_EQ(log.summary().events_read, 4u);
  DurationOptions o;
  o.direction = Direction::outbound;
  EXPECT_EQ(interevent_durations(log, o).values, (std::vector<double>{9.0}));
  EXPECT_EQ(to_string(Direction::inbound), "inbound");
  EXPECT_FALSE(parse_direction("sideways").has_value());
}

TEST(ParseEvents, Errors) {
  EXPECT_THROW(parse(""), EmptySampleError);
  EXPECT_THROW(parse("actor,timestamp\n"), EmptySampleError);
  EXPECT_THROW(parse("actor,timestamp\na,x\nb,y\nc,1\n"), IoError);
  EXPECT_NO_THROW(parse("actor,timestamp\na,x\nb,2\nc,1\n"));
}

TEST(ParseEvents, DecimalAndCrlf) {
  EXPECT_EQ(pooled("actor,timestamp\r\na,1.25\r\na,3.75\r\n"), (std::vector<double>{2.5}));
}

TEST(Durations, SingleActor) {
  EXPECT_EQ(pooled("actor,timestamp\na,0\na,60\na,120\n"), (std::vector<double>{60, 60}));
}

TEST(Durations, PooledAcrossActors) {
  EXPECT_EQ(pooled("actor,timestamp\na,0\nb,5\na,10\nb,7\n"), (std::vector<double>{2, 10}));
}

TEST(Durations, ZeroGapsDropped) {
  auto log = parse("actor,timestamp\na,5\na,5\na,9\n");
  const auto d = interevent_durations(log);
  EXPECT_EQ(d.values, (std::vector<double>{4.0}));
  EXPECT_EQ(d.zero_gaps_dropped, 1u);
  EXPECT_EQ(log.summary().zero_gaps_dropped, 1u);
  EXPECT_EQ(log.summary().durations_emitted, 1u);
}

TEST(Durations, PerActor) {
  const auto log = parse("actor,timestamp\nz,0\nz,4\na,1\na,3\na,10\nsolo,5\n");
  const auto per = per_actor_durations(log);
  ASSERT_EQ(per.size(), 2u);
  EXPECT_EQ(per[0].first, "a");
  EXPECT_EQ(per[0].second, (std::vector<double>{2, 7}));
  EXPECT_EQ(per[1].second, (std::vector<double>{4}));
}

TEST(SplitByResolution, EpochSeparatesClasses) {
  const auto log = parse(
      "actor,timestamp\na,0\na,60\na,180\na,1000\na,1003.5\na,1010\n");
  ResolutionRule rule;
  rule.epoch = 500.0;
  const auto parts = split_by_resolution(log, rule);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].label, "coarse");
  EXPECT_EQ(std::vector<double>(parts[0].sample.values().begin(), parts[0].sample.values().end()),
            (std::vector<double>{1, 2}));
  EXPECT_EQ(parts[0].sample.resolution(), 1.0);
  EXPECT_EQ(parts[1].label, "fine");
  EXPECT_EQ(parts[1].sample.size(), 2u);
}

TEST(SplitByResolution, EmptyPartitionOmitted) {
  const auto log = parse("actor,timestamp\na,1\na,2.5\na,7\n");
  const auto parts = split_by_resolution(log, ResolutionRule{});
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].label, "fine");
}

TEST(SplitByResolution, MixedCorpusShiftsMu) {
  // Before the epoch timestamps are stored per minute, after it per second.
  const LognormalModel gaps(10.0, 2.0);
  SeededGenerator g(31);
  std::ostringstream csv;
  csv.precision(17);
  csv << "actor,timestamp\n";
  const double epoch = 1e12;
  for (int a = 0; a < 200; ++a) {
    double t = 0.0;
    for (int k = 0; k < 500; ++k) {
      t += gaps.quantile(g.uniform());
      csv << "u" << a << ',' << std::floor(t / 60.0) * 60.0 << '\n';
    }
    t = epoch;
    for (int k = 0; k < 500; ++k) {
      t += gaps.quantile(g.uniform());
      csv << "u" << a << ',' << std::floor(t) << '\n';
    }
  }
  ResolutionRule rule;
  rule.epoch = epoch;
  const auto parts = split_by_resolution(parse(csv.str()), rule);
  ASSERT_EQ(parts.size(), 2u);
  const double mu_coarse = std::get<LognormalModel>(fit_lognormal(parts[0].sample).model).mu();
  const double mu_fine = std::get<LognormalModel>(fit_lognormal(parts[1].sample).model).mu();
  EXPECT_NEAR(mu_fine - mu_coarse, std::log(60.0), 0.05);
}

// ---- properties -------------------------------------------------------------

TEST(IngestionProperties, OrderIndependent) {
  std::ostringstream csv;
  write_synthetic_event_log(csv, 20, 2000, LognormalModel(5.0, 2.0), SeededGenerator(3));
  std::istringstream lines(csv.str());
  std::string header, line;
  std::getline(lines, header);
  std::vector<std::string> body;
  while (std::getline(lines, line)) body.push_back(line);
  const auto base = pooled(csv.str());
  SeededGenerator g(4);
  for (int round = 0; round < 3; ++round) {
    for (std::size_t i = body.size(); i > 1; --i) {
      std::swap(body[i - 1], body[g.uniform_index(i)]);
    }
    std::string shuffled = header + "\n";
    for (const auto& l : body) shuffled += l + "\n";
    EXPECT_EQ(pooled(shuffled), base);
  }
}

TEST(IngestionProperties, Conservation) {
  std::ostringstream csv;
  csv << "actor,timestamp\n";
  SeededGenerator g(5);
  std::map<int, int> per_actor;
  for (int i = 0; i < 5000; ++i) {
    const int a = static_cast<int>(g.uniform_index(37));
    ++per_actor[a];
    // Coarse stamps make zero gaps frequent.
    csv << "x" << a << ',' << g.uniform_index(400) << '\n';
  }
  auto log = parse(csv.str());
  interevent_durations(log);
  std::size_t expected = 0;
  for (const auto& [a, c] : per_actor) expected += c > 0 ? c - 1 : 0;
  const auto& s = log.summary();
  EXPECT_GT(s.zero_gaps_dropped, 0u);
  EXPECT_EQ(s.durations_emitted + s.zero_gaps_dropped, expected);
}

}  // namespace
}  // namespace tailfit
