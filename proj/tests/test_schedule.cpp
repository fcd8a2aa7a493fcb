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

#include "rudd/schedule.hpp"

using namespace rudd;

namespace {

constexpr double kPi = std::numbers::pi;

double sin2(double x) { return std::sin(x) * std::sin(x); }

double theta_of(double t, double total) { return 2.0 * std::asin(std::sqrt(std::clamp(t / total, 0.0, 1.0))); }

// b_l integrated in closed form segment by segment.
double fourier_oracle(const Schedule& s, int l) {
  const double k = l * (s.n() + 1.0);
  double sum = 0.0;
  for (const Segment& seg : s.segments()) {
    if (seg.is_pulse()) continue;
    const double a = theta_of(seg.start, s.total());
    const double b = theta_of(seg.end, s.total());
    sum += seg.sign * (std::cos(k * a) - std::cos(k * b)) / k;
  }
  return 2.0 / kPi * sum;
}

std::vector<const Segment*> pi_windows(const Schedule& s) {
  std::vector<const Segment*> out;
  for (const Segment* p : s.pulses()) {
    if (p->is_pi()) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Udd, InstantsFollowSineSquaredLaw) {
  for (int n = 1; n <= 6; ++n) {
    const auto t = udd_instants(n, 2.0);
    ASSERT_EQ(static_cast<int>(t.size()), n);
    for (int j = 1; j <= n; ++j) EXPECT_NEAR(t[j - 1], 2.0 * sin2(j * kPi / (2.0 * n + 2.0)), 1e-15);
  }
}

TEST(Udd, ScheduleIsValidAndAlternates) {
  const Schedule s = udd_schedule(4, 1.0);
  EXPECT_TRUE(validate(s).empty());
  int expected = 1;
  for (const Segment& seg : s.segments()) {
    if (seg.is_pulse()) {
      EXPECT_EQ(seg.duration(), 0.0);
      expected = -expected;
    } else {
      EXPECT_EQ(seg.sign, expected);
    }
  }
  EXPECT_EQ(pi_windows(s).size(), 4u);
}

TEST(Rudd, WindowEdgesMatchFormula) {
  const int n = 3;
  const double total = 1.5;
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(0.6, n);
  const Schedule s = rudd_schedule(n, total, w);
  const auto pis = pi_windows(s);
  ASSERT_EQ(pis.size(), 3u);
  for (int j = 1; j <= n; ++j) {
    const double c = j * kPi / (2.0 * n + 2.0);
    EXPECT_NEAR(pis[j - 1]->start, total * sin2(c - 0.5 * w.value()), 1e-14);
    EXPECT_NEAR(pis[j - 1]->end, total * sin2(c + 0.5 * w.value()), 1e-14);
  }
  const auto all = s.pulses();
  EXPECT_NEAR(all.front()->end, total * sin2(0.5 * w.value()), 1e-15);
  EXPECT_NEAR(all.back()->start, total * std::pow(std::cos(0.5 * w.value()), 2), 1e-14);
  EXPECT_NEAR(all.front()->theta, 2.0 * kPi, 0.0);
  EXPECT_TRUE(validate(s).empty());
}

TEST(Rudd, RejectsWidthBeyondBound) {
  EXPECT_THROW(rudd_schedule(3, 1.0, ThetaPulseWidth(kPi / 8 * 1.01)), InvalidArgument);
  EXPECT_NO_THROW(rudd_schedule(3, 1.0, ThetaPulseWidth(kPi / 8)));
  EXPECT_THROW(ThetaPulseWidth(-0.1), InvalidArgument);
}

TEST(Rudd, ZeroWidthReducesToUdd) {
  const Schedule r = rudd_schedule(3, 1.0, ThetaPulseWidth(0.0));
  const Schedule u = udd_schedule(3, 1.0);
  ASSERT_EQ(r.segments().size(), u.segments().size());
  for (std::size_t i = 0; i < u.segments().size(); ++i) {
    EXPECT_NEAR(r.segments()[i].start, u.segments()[i].start, 1e-15);
    EXPECT_EQ(r.segments()[i].sign, u.segments()[i].sign);
  }
}

TEST(Rudd, MaximalWidthLeavesZeroLengthFreeGapsOut) {
  const Schedule s = rudd_schedule(2, 1.0, ThetaPulseWidth(ThetaPulseWidth::bound(2)));
  EXPECT_TRUE(validate(s).empty());
  for (const Segment& seg : s.segments()) {
    if (!seg.is_pulse()) EXPECT_GT(seg.duration(), 0.0);
  }
}

TEST(NaiveUdd, CentredWindowsWithRuddDurations) {
  const int n = 3;
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(0.3, n);
  const Schedule s = naive_udd_schedule(n, 1.0, w);
  const auto centres = udd_instants(n, 1.0);
  const auto pis = pi_windows(s);
  ASSERT_EQ(pis.size(), 3u);
  for (int j = 1; j <= n; ++j) {
    const auto* p = pis[j - 1];
    EXPECT_NEAR(0.5 * (p->start + p->end), centres[j - 1], 1e-15);
    EXPECT_NEAR(p->duration(), std::sin(j * kPi / (n + 1.0)) * std::sin(w.value()), 1e-14);
  }
  EXPECT_EQ(s.pulses().size(), 3u);
}

TEST(Cpmg, OneCycleEqualsTwoPulseRudd) {
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(0.5, 2);
  const double t = 0.3;
  const Schedule c = cpmg_rudd_schedule(1, t, w);
  const Schedule r = rudd_schedule(2, 4.0 * t, w);
  ASSERT_EQ(c.segments().size(), r.segments().size());
  for (std::size_t i = 0; i < r.segments().size(); ++i) {
    EXPECT_NEAR(c.segments()[i].start, r.segments()[i].start, 1e-14);
    EXPECT_NEAR(c.segments()[i].end, r.segments()[i].end, 1e-14);
    EXPECT_EQ(c.segments()[i].sign, r.segments()[i].sign);
    EXPECT_EQ(c.segments()[i].theta, r.segments()[i].theta);
  }
}

TEST(Cpmg, CyclesRepeatWithPeriodFourT) {
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(0.8, 2);
  const double t = 0.25;
  const Schedule s = cpmg_rudd_schedule(4, t, w);
  EXPECT_NEAR(s.total(), 16.0 * t, 1e-15);
  const auto pis = pi_windows(s);
  ASSERT_EQ(pis.size(), 8u);
  for (std::size_t k = 2; k < pis.size(); ++k) {
    EXPECT_NEAR(pis[k]->start - pis[k - 2]->start, 4.0 * t, 1e-13);
  }
  // Interior 2pi windows are merged: one per junction plus the two ends.
  EXPECT_EQ(s.pulses().size() - pis.size(), 5u);
  EXPECT_TRUE(validate(s).empty());
}

TEST(Qrudd, SignIsProductOfLevels) {
  const Schedule s = qrudd_schedule(2, 2, 1.0, ThetaPulseWidth(0.0), ThetaPulseWidth(0.0));
  const Schedule outer = udd_schedule(2, 1.0, Axis::x);
  for (const Segment& seg : s.segments()) {
    if (seg.is_pulse()) continue;
    const double mid = 0.5 * (seg.start + seg.end);
    const int outer_sign = outer.switching_value(mid);
    // Inner level: UDD-2 inside the outer interval containing mid.
    double lo = 0.0, hi = 1.0;
    for (const Segment& o : outer.segments()) {
      if (!o.is_pulse() && o.start <= mid && mid < o.end) {
        lo = o.start;
        hi = o.end;
      }
    }
    const Schedule inner = udd_schedule(2, hi - lo, Axis::z);
    EXPECT_EQ(seg.sign, outer_sign * inner.switching_value(mid - lo)) << "at t = " << mid;
  }
  int z = 0, x = 0;
  for (const Segment* p : s.pulses()) (p->axis == Axis::z ? z : x)++;
  EXPECT_EQ(z, 6);
  EXPECT_EQ(x, 2);
}

TEST(Qrudd, RejectsCollidingLevels) {
  EXPECT_THROW(qrudd_schedule(2, 2, 1.0, ThetaPulseWidth(0.1), ThetaPulseWidth(ThetaPulseWidth::bound(2))),
               InvalidArgument);
}

TEST(Fourier, UddCoefficientsClosedForm) {
  for (int n = 1; n <= 5; ++n) {
    const Schedule s = udd_schedule(n, 1.0);
    for (int l = 1; l <= 9; ++l) {
      const double want = l % 2 ? 4.0 / (kPi * l) : 0.0;
      EXPECT_NEAR(fourier_coefficient(s, l), want, 1e-12) << "n " << n << " l " << l;
    }
  }
}

TEST(Fourier, RuddMatchesSegmentwiseOracle) {
  const int n = 4;
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(0.9, n);
  const Schedule s = rudd_schedule(n, 1.0, w);
  for (int l = 1; l <= 9; ++l) {
    EXPECT_NEAR(fourier_coefficient(s, l), fourier_oracle(s, l), 1e-13);
    if (l % 2) EXPECT_NEAR(fourier_coefficient(s, l), 4.0 * std::cos(l * (n + 1) * w.value()) / (kPi * l), 1e-12);
  }
}

TEST(Validate, ReportsBrokenTiling) {
  std::vector<Segment> segs{Segment::free_evolution(0.0, 0.4, 1), Segment::pulse(0.5, 0.5, kPi, Axis::y),
                            Segment::free_evolution(0.5, 1.0, -1)};
  const auto d = validate(Schedule(1.0, 1, Axis::y, segs));
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d.front().code, "tiling");
}

TEST(Validate, ReportsSignError) {
  std::vector<Segment> segs{Segment::free_evolution(0.0, 0.5, 1), Segment::pulse(0.5, 0.5, kPi, Axis::y),
                            Segment::free_evolution(0.5, 1.0, 1)};
  const auto d = validate(Schedule(1.0, 1, Axis::y, segs));
  ASSERT_FALSE(d.empty());
  bool found = false;
  for (const auto& x : d) found |= x.code == "sign" || x.code == "alternation";
  EXPECT_TRUE(found);
}

TEST(Validate, ReportsBudgetViolation) {
  const Schedule good = rudd_schedule(2, 1.0, ThetaPulseWidth(0.2));
  const Schedule bad(1.0, 2, Axis::y, good.segments(), ScheduleFamily::rudd, 2.0);
  bool found = false;
  for (const auto& x : validate(bad)) found |= x.code == "budget";
  EXPECT_TRUE(found);
}

TEST(Switching, ThetaAndTimeAgree) {
  const Schedule s = rudd_schedule(3, 2.0, ThetaPulseWidth(0.1));
  for (double th : {0.05, 0.5, 1.3, 2.9}) {
    EXPECT_EQ(s.switching_in_theta(th), s.switching_value(2.0 * sin2(0.5 * th)));
  }
  EXPECT_THROW(s.switching_value(2.5), InvalidArgument);
}

TEST(IdealRotation, ProductOfPulses) {
  // Two pi rotations about y give -1; the two 2pi end pulses add (-1)^2.
  const ComplexMatrix r = ideal_rotation(rudd_schedule(2, 1.0, ThetaPulseWidth(0.2)));
  EXPECT_LT((r + ComplexMatrix::Identity(2, 2)).norm(), 1e-14);
  const ComplexMatrix r3 = ideal_rotation(udd_schedule(3, 1.0, Axis::x));
  EXPECT_LT((r3 - rotation(Axis::x, 3 * kPi)).norm(), 1e-14);
}

TEST(Axis, ParsesNames) {
  EXPECT_EQ(parse_axis("z"), Axis::z);
  EXPECT_THROW(parse_axis("w"), InvalidArgument);
  EXPECT_EQ(parse_schedule_family("cpmg-rudd"), ScheduleFamily::cpmg_rudd);
}
