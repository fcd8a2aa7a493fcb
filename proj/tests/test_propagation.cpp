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

#include <unsupported/Eigen/MatrixFunctions>

#include <gtest/gtest.h>

#include "rudd/bath.hpp"
#include "rudd/propagation.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"

using namespace rudd;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix exp_minus_i(const ComplexMatrix& h, double dt) {
  const ComplexMatrix a = Complex(0.0, -dt) * h;
  return a.exp();
}

// Lab-frame midpoint product with Richardson extrapolation, using Eigen's
// general matrix exponential.
ComplexMatrix lab_product(const std::function<ComplexMatrix(double)>& h, double t0, double t1, int steps) {
  auto run = [&](int n) {
    const double dt = (t1 - t0) / n;
    ComplexMatrix u = ComplexMatrix::Identity(h(t0).rows(), h(t0).cols());
    for (int k = 0; k < n; ++k) u = exp_minus_i(h(t0 + (k + 0.5) * dt), dt) * u;
    return u;
  };
  const ComplexMatrix a = run(steps);
  const ComplexMatrix b = run(2 * steps);
  return (4.0 * b - a) / 3.0;
}

ComplexMatrix lab_schedule(const Schedule& s, const std::vector<PulseShape>& shapes, const Bath& bath, int steps) {
  const ComplexMatrix hb = hamiltonian(bath).matrix();
  const Index d = dim_b(bath);
  ComplexMatrix u = ComplexMatrix::Identity(2 * d, 2 * d);
  std::size_t next = 0;
  for (const Segment& seg : s.segments()) {
    if (!seg.is_pulse()) {
      u = exp_minus_i(hb, seg.duration()) * u;
    } else if (seg.duration() == 0.0) {
      u = kron(rotation(seg.axis, seg.theta), ComplexMatrix::Identity(d, d)) * u;
    } else {
      const PulseShape& p = shapes.at(next++);
      const ComplexMatrix sig = kron(pauli(p.axis()), ComplexMatrix::Identity(d, d));
      u = lab_product([&](double t) { return ComplexMatrix(hb + p.amplitude(t) * sig); }, 0.0, p.tau_p(), steps) * u;
    }
  }
  return u;
}

TimeDependentHamiltonian two_level_drive() {
  ComplexMatrix a = pauli_x(), b = pauli_z();
  return [a, b](double t) { return ComplexMatrix(a + std::cos(3.0 * t) * b); };
}

double order_estimate(Integrator integ) {
  const auto h = two_level_drive();
  const ComplexMatrix u1 = propagate_fixed(h, 0.0, 1.0, 8, integ).matrix();
  const ComplexMatrix u2 = propagate_fixed(h, 0.0, 1.0, 16, integ).matrix();
  const ComplexMatrix u4 = propagate_fixed(h, 0.0, 1.0, 32, integ).matrix();
  return std::log2((u1 - u2).norm() / (u2 - u4).norm());
}

}  // namespace

TEST(Propagate, ConstantGeneratorMatchesExpm) {
  BathSpec spec;
  spec.seed = 3;
  const ComplexMatrix h = hamiltonian(generate(spec)).matrix();
  const PropagationResult r = propagate_adaptive([&](double) { return h; }, 0.2, 1.7);
  EXPECT_LT((r.u.matrix() - expm(h, 1.5).matrix()).norm(), 1e-12);
  EXPECT_LE(r.change, 1e-12);
}

TEST(Propagate, CommutingFamilyMatchesExactExponent) {
  // H(t) = f(t) A commutes with itself, so U = exp(-i F A), F = int f.
  BathSpec spec;
  spec.seed = 4;
  const ComplexMatrix a = hamiltonian(generate(spec)).matrix();
  const auto f = [](double t) { return 1.0 + std::sin(5.0 * t); };
  const double big_f = 1.0 + (1.0 - std::cos(5.0)) / 5.0;
  const UnitaryMatrix u = propagate([&](double t) { return ComplexMatrix(f(t) * a); }, 0.0, 1.0);
  EXPECT_LT((u.matrix() - exp_minus_i(a, big_f)).norm(), 1e-11);
}

TEST(Propagate, IntegratorOrders) {
  EXPECT_NEAR(order_estimate(Integrator::midpoint), 2.0, 0.15);
  EXPECT_NEAR(order_estimate(Integrator::magnus4), 4.0, 0.3);
  EXPECT_NEAR(order_estimate(Integrator::magnus6), 6.0, 0.5);
}

TEST(Propagate, AllIntegratorsConverge) {
  const auto h = two_level_drive();
  const ComplexMatrix ref = lab_product(h, 0.0, 1.0, 20000);
  for (Integrator integ : {Integrator::midpoint, Integrator::magnus4, Integrator::magnus6}) {
    PropagateOptions o;
    o.integrator = integ;
    o.tol = 1e-10;
    o.max_refinements = 20;
    EXPECT_LT((propagate(h, 0.0, 1.0, o).matrix() - ref).norm(), 1e-8);
  }
}

TEST(Propagate, ThrowsWhenBudgetIsExhausted) {
  PropagateOptions o;
  o.integrator = Integrator::midpoint;
  o.tol = 1e-15;
  o.max_refinements = 3;
  try {
    propagate_adaptive(two_level_drive(), 0.0, 1.0, o);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.achieved(), 1e-15);
  }
}

TEST(PulsePropagator, MatchesLabFrameOracle) {
  BathSpec spec;
  spec.kind = BathKind::general;
  spec.dim_b = 2;
  spec.gamma = 0.8;
  spec.seed = 11;
  const Bath bath = generate(spec);
  for (const PulseShape& p : {tabulated_pulse(kPi, 0.4), naive_pulse(kPi, 0.4, Axis::x), tabulated_pulse(2 * kPi, 0.3)}) {
    const ComplexMatrix hb = hamiltonian(bath).matrix();
    const ComplexMatrix sig = kron(pauli(p.axis()), ComplexMatrix::Identity(2, 2));
    const ComplexMatrix want =
        lab_product([&](double t) { return ComplexMatrix(hb + p.amplitude(t) * sig); }, 0.0, p.tau_p(), 4000);
    EXPECT_LT((pulse_propagator(p, hamiltonian(bath)).matrix() - want).norm(), 1e-9);
  }
}

TEST(FullPropagator, MatchesLabFrameOracle) {
  BathSpec spec;
  spec.dim_b = 2;
  spec.gamma = 1.0;
  spec.seed = 2;
  const Bath bath = generate(spec);
  const Schedule s = rudd_schedule(2, 1.0, ThetaPulseWidth::fraction_of_bound(0.7, 2));
  for (PulseFamily fam : {PulseFamily::shaped, PulseFamily::naive}) {
    const auto shapes = pulse_train(s, fam);
    EXPECT_LT((full_propagator(s, shapes, bath).matrix() - lab_schedule(s, shapes, bath, 4000)).norm(), 1e-9);
  }
}

TEST(FullPropagator, RejectsMismatchedShapes) {
  BathSpec spec;
  const Bath bath = generate(spec);
  const Schedule s = rudd_schedule(2, 1.0, ThetaPulseWidth(0.2));
  auto shapes = pulse_train(s, PulseFamily::shaped);
  shapes[1] = shapes[1].with_duration(shapes[1].tau_p() * 1.01);
  EXPECT_THROW(full_propagator(s, shapes, bath), InvalidArgument);
  shapes.pop_back();
  EXPECT_THROW(full_propagator(s, shapes, bath), InvalidArgument);
}

TEST(FullPropagator, ZeroCouplingMatchesSubstitution) {
  BathSpec spec;
  spec.weights = {1.0, 0.0};
  spec.seed = 5;
  const Bath bath = generate(spec);
  const Schedule s = rudd_schedule(3, 1.0, ThetaPulseWidth::fraction_of_bound(0.5, 3));
  const UnitaryMatrix a = full_propagator(s, pulse_train(s, PulseFamily::shaped), bath);
  const UnitaryMatrix b = full_propagator_zero_coupling(s, bath);
  EXPECT_LT((a.matrix() - b.matrix()).norm(), 1e-11);
}

TEST(Conditioned, IdealPulsesAgreeWithFullPropagator) {
  BathSpec spec;
  spec.gamma = 0.5;
  spec.seed = 7;
  const Bath bath = generate(spec);
  const Schedule s = udd_schedule(3, 1.0);
  const auto cp = conditioned_propagators(s, std::get<DephasingBath>(bath), PulseMode::ideal);
  const Index d = 4;
  const ComplexMatrix w =
      kron(ideal_rotation(s).adjoint(), ComplexMatrix::Identity(d, d)) * full_propagator(s, {}, bath).matrix();
  EXPECT_LT(w.topRightCorner(d, d).norm(), 1e-12);
  EXPECT_LT(w.bottomLeftCorner(d, d).norm(), 1e-12);
  const double diff = spectral_norm(w.topLeftCorner(d, d) - w.bottomRightCorner(d, d));
  EXPECT_NEAR(distinguishability(cp), diff, 1e-12);
}

TEST(Conditioned, HahnEchoCancelsStaticScalarBath) {
  BathSpec spec;
  spec.kind = BathKind::static_scalar;
  const DephasingBath b = generate_dephasing(spec);
  EXPECT_LT(distinguishability(conditioned_propagators(udd_schedule(1, 1.0), b, PulseMode::ideal)), 1e-14);
}

TEST(Conditioned, ModeAndAxisChecks) {
  BathSpec spec;
  const DephasingBath b = generate_dephasing(spec);
  const Schedule finite = rudd_schedule(2, 1.0, ThetaPulseWidth(0.2));
  EXPECT_THROW(conditioned_propagators(finite, b, PulseMode::ideal), InvalidArgument);
  EXPECT_NO_THROW(conditioned_propagators(finite, b, PulseMode::noise_off));
  EXPECT_THROW(conditioned_propagators(udd_schedule(2, 1.0, Axis::z), b, PulseMode::ideal), InvalidArgument);
}

TEST(PulseDeviation, OrderLadder) {
  auto ratio = [](const PulseShape& p, BathKind kind, DeviationVariant v) {
    BathSpec spec;
    spec.kind = kind;
    spec.seed = 1;
    spec.gamma = 0.04;
    const double a = pulse_deviation(p, generate(spec), v);
    spec.gamma = 0.02;
    const double b = pulse_deviation(p, generate(spec), v);
    return std::log2(a / b);
  };
  EXPECT_NEAR(ratio(naive_pulse(kPi, 1.0), BathKind::dephasing, DeviationVariant::zero()), 1.0, 0.1);
  EXPECT_NEAR(ratio(tabulated_pulse(kPi, 1.0), BathKind::dephasing, DeviationVariant::zero()), 3.0, 0.2);
  EXPECT_NEAR(ratio(tabulated_pulse(kPi, 1.0, Axis::z), BathKind::general, DeviationVariant::longitudinal()), 3.0, 0.2);
}

TEST(PulseDeviation, VariantPreconditions) {
  BathSpec spec;
  const Bath dephasing = generate(spec);
  spec.kind = BathKind::general;
  const Bath general = generate(spec);
  EXPECT_THROW(pulse_deviation(tabulated_pulse(kPi, 1.0), general, DeviationVariant::zero()), InvalidArgument);
  EXPECT_THROW(pulse_deviation(tabulated_pulse(kPi, 1.0), general, DeviationVariant::longitudinal()), InvalidArgument);
  EXPECT_THROW(pulse_deviation(tabulated_pulse(kPi, 1.0, Axis::z), dephasing, DeviationVariant::zero()),
               InvalidArgument);
  EXPECT_THROW(pulse_deviation(tabulated_pulse(kPi, 1.0), dephasing, DeviationVariant::ideal_at(2.0)), InvalidArgument);
}

TEST(PulseDeviation, ConstantPulseKeepsFirstOrderTermAgainstMidpoint) {
  // In the toggling frame sigma_z becomes sigma_z cos(psi) + sigma_x sin(psi)
  // with psi = pi t / tau. The midpoint ideal pulse cancels the cos part; the
  // sin part integrates to 2 tau / pi, leaving (2 tau / pi) ||A1|| at first order.
  auto case_at = [](double g) {
    BathSpec spec;
    spec.gamma = g;
    spec.seed = 2;
    const Bath b = generate(spec);
    const double dev = pulse_deviation(naive_pulse(kPi, 1.0), b, DeviationVariant::ideal_at(0.5));
    const double lead = 2.0 / kPi * spectral_norm(std::get<DephasingBath>(b).a1().matrix());
    return std::pair{dev, lead};
  };
  const auto [d1, l1] = case_at(0.01);
  const auto [d2, l2] = case_at(0.02);
  EXPECT_NEAR(std::log2(d2 / d1), 1.0, 0.05);
  EXPECT_NEAR(d1 / l1, 1.0, 0.05);
}

TEST(OuterFrame, NestedRouteAgreesWithDirectPropagation) {
  BathSpec spec;
  spec.kind = BathKind::general;
  spec.gamma = 0.6;
  spec.seed = 9;
  const Bath bath = generate(spec);
  const Schedule nested = qrudd_schedule(2, 2, 1.0, ThetaPulseWidth(0.0), ThetaPulseWidth(0.0));
  const Schedule outer = udd_schedule(2, 1.0, Axis::x);
  const OuterFrameHamiltonian h_eff(outer, bath);
  const UnitaryMatrix a = propagate_in_outer_frame(nested, h_eff);
  const UnitaryMatrix b = full_propagator(nested, {}, bath);
  EXPECT_LT((a.matrix() - b.matrix()).norm(), 1e-11);
  EXPECT_THROW(h_eff(1.5), InvalidArgument);
}
