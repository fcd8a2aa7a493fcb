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

#include "rudd/pulse.hpp"

using namespace rudd;

namespace {

constexpr double kPi = std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Five residual integrals by brute force: composite Simpson for the single
// integrals and a midpoint grid for the double one.
EtaVector eta_oracle(const PulseShape& p) {
  const double tau = p.tau_p();
  EtaVector e;
  e.eta11 = simpson([&](double t) { return std::sin(p.psi(t)); }, 0.0, tau, 4000);
  e.eta12 = simpson([&](double t) { return std::cos(p.psi(t)); }, 0.0, tau, 4000);
  e.eta21 = simpson([&](double t) { return t * std::sin(p.psi(t)); }, 0.0, tau, 4000);
  e.eta22 = simpson([&](double t) { return t * std::cos(p.psi(t)); }, 0.0, tau, 4000);
  const int n = 1500;
  const double h = tau / n;
  std::vector<double> psi(n);
  for (int i = 0; i < n; ++i) psi[i] = p.psi((i + 0.5) * h);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) s += std::sin(psi[i] - psi[j]);
  }
  e.eta23 = 2.0 * s * h * h;
  return e;
}

}  // namespace

TEST(PulseShape, EndpointsAndAngle) {
  for (const PulseShape& p : {tabulated_pulse(kPi, 0.7), tabulated_pulse(2.0 * kPi, 1.3)}) {
    EXPECT_NEAR(p.amplitude(0.0), 0.0, 1e-12);
    EXPECT_NEAR(p.amplitude(p.tau_p()), 0.0, 1e-12);
    EXPECT_NEAR(p.psi(0.0), 0.0, 1e-14);
    EXPECT_NEAR(p.psi(p.tau_p()), p.theta(), 1e-12);
  }
}

TEST(PulseShape, PsiIsTwiceIntegralOfAmplitude) {
  const PulseShape p = PulseShape::shaped(kPi, 2.0, {3.0, -1.0, 0.5});
  for (double t : {0.1, 0.77, 1.5, 2.0}) {
    const double want = 2.0 * simpson([&](double s) { return p.amplitude(s); }, 0.0, t, 2000);
    EXPECT_NEAR(p.psi(t), want, 1e-11) << "t = " << t;
  }
}

TEST(PulseShape, ConstantPulse) {
  const PulseShape p = naive_pulse(kPi, 0.5);
  EXPECT_DOUBLE_EQ(p.amplitude(0.2), kPi / (2.0 * 0.5));
  EXPECT_NEAR(p.psi(0.25), kPi / 2.0, 1e-15);
  EXPECT_EQ(p.waveform(), PulseShape::Waveform::constant);
}

TEST(PulseShape, RangeAndArgumentChecks) {
  const PulseShape p = tabulated_pulse(kPi, 1.0);
  EXPECT_THROW(p.amplitude(1.5), InvalidArgument);
  EXPECT_THROW(p.psi(-0.1), InvalidArgument);
  EXPECT_THROW(tabulated_pulse(kPi / 2, 1.0), InvalidArgument);
  EXPECT_THROW(PulseShape::shaped(kPi, 0.0, {}), InvalidArgument);
}

TEST(PulseShape, DurationRescalingKeepsNormalizedShape) {
  const PulseShape a = tabulated_pulse(kPi, 1.0);
  const PulseShape b = a.with_duration(0.01);
  EXPECT_NEAR(b.amplitude(0.005) * 0.01, a.amplitude(0.5), 1e-12);
  EXPECT_NEAR(b.psi(0.003), a.psi(0.3), 1e-12);
  EXPECT_EQ(a.with_axis(Axis::z).axis(), Axis::z);
}

TEST(Eta, ConstantPulseClosedForm) {
  const double tau = 0.8;
  const EtaVector e = eta_integrals(naive_pulse(kPi, tau));
  // psi = pi t / tau.
  EXPECT_NEAR(e.eta11, 2.0 * tau / kPi, 1e-12);
  EXPECT_NEAR(e.eta12, 0.0, 1e-12);
  EXPECT_NEAR(e.eta21, tau * tau / kPi, 1e-12);
  EXPECT_NEAR(e.eta22, -2.0 * tau * tau / (kPi * kPi), 1e-12);
}

TEST(Eta, MatchesBruteForceOracle) {
  const PulseShape p = PulseShape::shaped(kPi, 1.0, {1.0, 2.0, 3.0});
  const EtaVector got = eta_integrals(p);
  const EtaVector want = eta_oracle(p);
  EXPECT_NEAR(got.eta11, want.eta11, 1e-10);
  EXPECT_NEAR(got.eta12, want.eta12, 1e-10);
  EXPECT_NEAR(got.eta21, want.eta21, 1e-10);
  EXPECT_NEAR(got.eta22, want.eta22, 1e-10);
  EXPECT_NEAR(got.eta23, want.eta23, 1e-5);
}

TEST(Eta, FastRouteAgreesWithAdaptive) {
  for (const PulseShape& p : {PulseShape::shaped(kPi, 1.0, {4.0, 1.0, -2.0}), tabulated_pulse(2.0 * kPi, 1.0),
                              PulseShape::shaped(2.0 * kPi, 1.0, {12.0, 7.0, 3.0})}) {
    const EtaVector a = eta_integrals(p, 1e-13);
    const EtaVector f = eta_integrals_fast(p);
    EXPECT_NEAR(a.eta11, f.eta11, 1e-12);
    EXPECT_NEAR(a.eta12, f.eta12, 1e-12);
    EXPECT_NEAR(a.eta21, f.eta21, 1e-12);
    EXPECT_NEAR(a.eta22, f.eta22, 1e-12);
    EXPECT_NEAR(a.eta23, f.eta23, 1e-12);
  }
}

TEST(Eta, ScaleWithDuration) {
  const PulseShape p = tabulated_pulse(kPi, 1.0);
  const EtaVector a = eta_integrals(PulseShape::shaped(kPi, 1.0, {2.0, 1.0, 0.5}));
  const EtaVector b = eta_integrals(PulseShape::shaped(kPi, 0.1, {2.0, 1.0, 0.5}));
  EXPECT_NEAR(b.eta11, 0.1 * a.eta11, 1e-12);
  EXPECT_NEAR(b.eta23, 0.01 * a.eta23, 1e-12);
  EXPECT_LT(eta_integrals(p).max_normalized(1.0), 1e-4);
}

TEST(SolveShape, LocalGridFindsTabulatedPiRoot) {
  ShapeSolveOptions opts;
  opts.grid_lo = 10.0;
  opts.grid_hi = 11.0;
  opts.grid_step = 0.5;
  const ShapeSolution sol = solve_shape(kPi, 1.0, Axis::y, opts);
  ASSERT_FALSE(sol.roots.empty());
  bool found = false;
  for (const PulseShape& r : sol.roots) {
    const auto& c = r.coefficients();
    found |= std::abs(c.a - kTabulatedPi.a) < 1e-5 && std::abs(c.b - kTabulatedPi.b) < 1e-5 &&
             std::abs(c.c - kTabulatedPi.c) < 1e-5;
    EXPECT_LT(eta_integrals(r).max_normalized(1.0), 1e-9);
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(sol.trace.size(), 27u);
}

TEST(SolveShape, RootsAreDurationCovariant) {
  ShapeSolveOptions opts;
  opts.grid_lo = 10.0;
  opts.grid_hi = 11.0;
  opts.grid_step = 0.5;
  const ShapeSolution a = solve_shape(kPi, 1.0, Axis::y, opts);
  const ShapeSolution b = solve_shape(kPi, 0.25, Axis::y, opts);
  ASSERT_FALSE(a.roots.empty());
  ASSERT_EQ(a.roots.size(), b.roots.size());
  EXPECT_NEAR(a.best.coefficients().a, b.best.coefficients().a, 1e-8);
  EXPECT_DOUBLE_EQ(b.best.tau_p(), 0.25);
}

TEST(SolveShape, RejectsUnsupportedAngles) {
  EXPECT_THROW(solve_shape(kPi / 2, 1.0), InvalidArgument);
}
