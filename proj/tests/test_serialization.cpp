// Copyright 2026 The rudd Authors
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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rudd/serialization.hpp"

using namespace rudd;

TEST(Json, ScheduleRoundTripIsExact) {
  const Schedule s = qrudd_schedule(2, 1, 1.3, ThetaPulseWidth(0.1), ThetaPulseWidth(0.2));
  const Schedule back = schedule_from_json(to_json(s));
  EXPECT_EQ(back.total(), s.total());
  EXPECT_EQ(back.n(), s.n());
  EXPECT_EQ(back.family(), s.family());
  EXPECT_EQ(back.theta_p(), s.theta_p());
  ASSERT_EQ(back.segments().size(), s.segments().size());
  for (std::size_t i = 0; i < s.segments().size(); ++i) {
    const Segment& a = s.segments()[i];
    const Segment& b = back.segments()[i];
    EXPECT_EQ(a.kind, b.kind);
    EXPECT_EQ(a.start, b.start);
    EXPECT_EQ(a.end, b.end);
    EXPECT_EQ(a.sign, b.sign);
    EXPECT_EQ(a.theta, b.theta);
    EXPECT_EQ(a.axis, b.axis);
  }
  EXPECT_EQ(to_json(back), to_json(s));
}

TEST(Json, ScheduleKeyOrder) {
  const std::string j = to_json(udd_schedule(1, 1.0));
  EXPECT_LT(j.find("\"T\""), j.find("\"n\""));
  EXPECT_LT(j.find("\"family\""), j.find("\"segments\""));
}

TEST(Json, PulseRoundTrip) {
  for (const PulseShape& p : {tabulated_pulse(2.0 * std::numbers::pi, 0.3, Axis::z), naive_pulse(std::numbers::pi, 2.0)}) {
    const PulseShape q = pulse_from_json(to_json(p));
    EXPECT_EQ(q.theta(), p.theta());
    EXPECT_EQ(q.tau_p(), p.tau_p());
    EXPECT_EQ(q.axis(), p.axis());
    EXPECT_EQ(q.waveform(), p.waveform());
    EXPECT_EQ(q.coefficients().b, p.coefficients().b);
  }
}

TEST(Json, ReportRoundTrip) {
  ScalingReport r;
  r.config_name = "demo";
  r.config_hash = 0xfeedfacecafebeefULL;
  r.version = "1.2.3";
  r.wall_time = 0.25;
  SeriesReport s;
  s.name = "a";
  s.kind = "udd-ideal";
  s.sweep = "gamma_t";
  s.points = {{0.1, 0, 1e-5, {}}, {0.1, 1, std::nullopt, "failed"}};
  s.aggregated = {{0.1, 1e-5, 1, true}};
  s.fit = LogLogFit{2.0, -1.0, 0.99};
  s.slope_valid = true;
  s.metrics = {{"m", 3.5}, {"inf", std::numeric_limits<double>::infinity()}};
  r.series.push_back(s);
  r.checks.push_back({"a", "slope", 2.0, "2 +/- 0.2", true});
  const ScalingReport back = report_from_json(to_json(r));
  EXPECT_EQ(back.config_hash, r.config_hash);
  EXPECT_EQ(back.series[0].points[1].error, "failed");
  EXPECT_FALSE(back.series[0].points[1].epsilon);
  EXPECT_EQ(back.series[0].fit->slope, 2.0);
  EXPECT_EQ(*back.series[0].metric("m"), 3.5);
  EXPECT_TRUE(std::isnan(*back.series[0].metric("inf")));
  EXPECT_TRUE(back.passed());
}

TEST(Json, MalformedInputIsRejected) {
  EXPECT_THROW(schedule_from_json("{"), InvalidArgument);
  EXPECT_THROW(schedule_from_json(R"({"T": 1})"), InvalidArgument);
  EXPECT_THROW(schedule_from_json(R"({"T":1,"n":1,"axis":"y","segments":[{"kind":"warp","start":0,"end":1}]})"),
               InvalidArgument);
  EXPECT_THROW(pulse_from_json(R"({"theta": 3.14})"), InvalidArgument);
  EXPECT_THROW(report_from_json("[]"), InvalidArgument);
}
