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

#include "rudd/propagation.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace rudd {

namespace {

// exp(−iK) − 1 by scaled Taylor series. The products below are accumulated as
// deviations from the identity, U = 1 + Y, so that round-off stays relative to
// ‖Y‖ rather than to 1; with thousands of chained near-identity steps this is
// the difference between a 1e-13 and a 1e-16 floor.
ComplexMatrix step_expm1(const ComplexMatrix& k) {
  double norm1 = k.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  while (norm1 > 0.25) {
    norm1 *= 0.5;
    ++squarings;
  }
  const ComplexMatrix a = Complex(0.0, -std::ldexp(1.0, -squarings)) * k;
  ComplexMatrix term = a;
  ComplexMatrix sum = a;
  for (int n = 2; n <= 14; ++n) {
    term = term * a / static_cast<double>(n);
    sum += term;
  }
  // (1 + X)² − 1 = 2X + X².
  for (int i = 0; i < squarings; ++i) sum = 2.0 * sum + sum * sum;
  return sum;
}

ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) { return x * y - y * x; }

// Returns Y with U = 1 + Y.
ComplexMatrix run_steps(const TimeDependentHamiltonian& h, double t0, double t1, int steps, Integrator integrator) {
  const double dt = (t1 - t0) / steps;
  const Complex mi(0.0, -1.0);
  ComplexMatrix y;
  auto push = [&y](int k, const ComplexMatrix& x) {
    if (k == 0) {
      y = x;
    } else {
      y += x + x * y;
    }
  };
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    switch (integrator) {
      case Integrator::midpoint:
        push(k, step_expm1(dt * h(t + 0.5 * dt)));
        break;
      case Integrator::magnus4: {
        const double r = std::sqrt(3.0) / 6.0;
        const ComplexMatrix h1 = h(t + (0.5 - r) * dt);
        const ComplexMatrix h2 = h(t + (0.5 + r) * dt);
        const Complex c(0.0, -std::sqrt(3.0) / 12.0 * dt * dt);
        push(k, step_expm1((0.5 * dt) * (h1 + h2) + c * commutator(h2, h1)));
        break;
      }
      case Integrator::magnus6: {
        // Three Gauss points; Ω is built from A = −iH and exp(Ω) = exp(−iK), K = iΩ.
        const double r = std::sqrt(15.0) / 10.0;
        const ComplexMatrix a1 = mi * h(t + (0.5 - r) * dt);
        const ComplexMatrix a2 = mi * h(t + 0.5 * dt);
        const ComplexMatrix a3 = mi * h(t + (0.5 + r) * dt);
        const ComplexMatrix b1 = dt * a2;
        const ComplexMatrix b2 = (std::sqrt(15.0) * dt / 3.0) * (a3 - a1);
        const ComplexMatrix b3 = (10.0 * dt / 3.0) * (a3 - 2.0 * a2 + a1);
        const ComplexMatrix c1 = commutator(b1, b2);
        const ComplexMatrix c2 = (-1.0 / 60.0) * commutator(b1, 2.0 * b3 + c1);
        const ComplexMatrix omega = b1 + b3 / 12.0 + (1.0 / 240.0) * commutator(-20.0 * b1 - b3 + c1, b2 + c2);
        push(k, step_expm1(Complex(0.0, 1.0) * omega));
        break;
      }
    }
  }
  return y;
}

ComplexMatrix plus_identity(ComplexMatrix y) {
  y.diagonal().array() += 1.0;
  return y;
}

ComplexMatrix spin_embed(const ComplexMatrix& spin, Index dim_b) {
  return kron(spin, ComplexMatrix::Identity(dim_b, dim_b));
}

// H = Σ_k σ_k ⊗ B_k with σ_0 = 1.
std::array<ComplexMatrix, 4> spin_components(const ComplexMatrix& h) {
  const Index d = h.rows() / 2;
  const ComplexMatrix b00 = h.block(0, 0, d, d);
  const ComplexMatrix b01 = h.block(0, d, d, d);
  const ComplexMatrix b10 = h.block(d, 0, d, d);
  const ComplexMatrix b11 = h.block(d, d, d, d);
  const Complex i(0.0, 1.0);
  return {0.5 * (b00 + b11), 0.5 * (b01 + b10), 0.5 * i * (b01 - b10), 0.5 * (b00 - b11)};
}

const ComplexMatrix& sigma(int k) {
  switch (k) {
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: return pauli_i();
  }
}

double relative_mismatch(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

// --- generic propagation --------------------------------------------------------------

UnitaryMatrix propagate_fixed(const TimeDependentHamiltonian& h, double t0, double t1, int steps,
                              Integrator integrator) {
  if (steps < 1) throw InvalidArgument("propagate_fixed: need at least one step");
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw InvalidArgument("propagate: bad interval");
  if (t1 == t0) return UnitaryMatrix::identity(h(t0).rows());
  return UnitaryMatrix::assume_unitary(plus_identity(run_steps(h, t0, t1, steps, integrator)));
}

PropagationResult propagate_adaptive(const TimeDependentHamiltonian& h, double t0, double t1,
                                     const PropagateOptions& opts) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw InvalidArgument("propagate: bad interval");
  if (!(opts.tol > 0.0) || opts.initial_steps < 1) throw InvalidArgument("propagate: bad options");
  if (t1 == t0) return {UnitaryMatrix::identity(h(t0).rows()), 0, 0.0};
  int steps = opts.initial_steps;
  ComplexMatrix coarse = run_steps(h, t0, t1, steps, opts.integrator);
  double change = 0.0;
  for (int r = 0; r < opts.max_refinements; ++r) {
    steps *= 2;
    ComplexMatrix fine = run_steps(h, t0, t1, steps, opts.integrator);
    change = spectral_norm(fine - coarse);
    if (change <= opts.tol) return {UnitaryMatrix::assume_unitary(plus_identity(std::move(fine))), steps, change};
    coarse = std::move(fine);
  }
  std::ostringstream os;
  os << "propagate: change between the last two refinements (" << steps / 2 << " and " << steps
     << " steps) is " << change << ", above tolerance " << opts.tol;
  throw ConvergenceError(os.str(), change, change);
}

UnitaryMatrix propagate(const TimeDependentHamiltonian& h, double t0, double t1, const PropagateOptions& opts) {
  return propagate_adaptive(h, t0, t1, opts).u;
}

UnitaryMatrix propagate(const HermitianOperator& h, double t0, double t1) {
  if (!std::isfinite(t0) || !std::isfinite(t1) || t1 < t0) throw InvalidArgument("propagate: bad interval");
  return expm(h, t1 - t0);
}

// --- conditioned propagators --------------------------------------------------------------

ConditionedPropagators conditioned_propagators(const Schedule& schedule, const DephasingBath& bath, PulseMode mode) {
  const Index d = bath.dim_b();
  const SpectralPropagator plus(bath.a0() + bath.a1());
  const SpectralPropagator minus(bath.a0() - bath.a1());
  const SpectralPropagator energy(bath.a0());
  ComplexMatrix up = ComplexMatrix::Identity(d, d);
  ComplexMatrix um = ComplexMatrix::Identity(d, d);
  for (const Segment& s : schedule.segments()) {
    const double dt = s.duration();
    if (s.is_pulse()) {
      if (s.axis == Axis::z) {
        throw InvalidArgument("conditioned_propagators: z-axis pulses do not flip the coupling sign");
      }
      if (dt == 0.0) continue;
      if (mode == PulseMode::ideal) {
        std::ostringstream os;
        os << "conditioned_propagators: ideal mode needs zero-length windows, found one of length " << dt
           << "; shaped windows need full_propagator";
        throw InvalidArgument(os.str());
      }
      const ComplexMatrix e = energy.evolve(dt);
      up = e * up;
      um = e * um;
      continue;
    }
    if (s.sign > 0) {
      up = plus.evolve(dt) * up;
      um = minus.evolve(dt) * um;
    } else {
      up = minus.evolve(dt) * up;
      um = plus.evolve(dt) * um;
    }
  }
  return {UnitaryMatrix::assume_unitary(std::move(up)), UnitaryMatrix::assume_unitary(std::move(um))};
}

double distinguishability(const ConditionedPropagators& cp) {
  return spectral_norm(cp.plus.matrix() - cp.minus.matrix());
}

// --- full propagation ------------------------------------------------------------------------

std::vector<PulseShape> pulse_train(const Schedule& schedule, PulseFamily family) {
  std::vector<PulseShape> out;
  for (const Segment& s : schedule.segments()) {
    if (!s.is_pulse() || s.duration() == 0.0) continue;
    out.push_back(family == PulseFamily::shaped ? tabulated_pulse(s.theta, s.duration(), s.axis)
                                               : naive_pulse(s.theta, s.duration(), s.axis));
  }
  return out;
}

UnitaryMatrix pulse_propagator(const PulseShape& shape, const HermitianOperator& h_bath, const PropagateOptions& opts) {
  if (h_bath.dim() % 2 != 0) throw InvalidArgument("pulse_propagator: expected a spin ⊗ bath operator");
  const Index d = h_bath.dim() / 2;
  const std::array<ComplexMatrix, 4> b = spin_components(h_bath.matrix());
  const ComplexMatrix& axis = pauli(shape.axis());
  const double tau = shape.tau_p();

  // Ũ(t) solves i dŨ/dt = P(t)† H P(t) Ũ with P(t) = exp(−iψ(t)σ/2); U = P(τ)Ũ.
  const TimeDependentHamiltonian toggled = [&](double t) {
    const double psi = shape.psi_normalized(t / tau);
    const ComplexMatrix r = std::cos(0.5 * psi) * pauli_i() - Complex(0.0, std::sin(0.5 * psi)) * axis;
    ComplexMatrix out = ComplexMatrix::Zero(2 * d, 2 * d);
    for (int k = 0; k < 4; ++k) {
      const ComplexMatrix s = r.adjoint() * sigma(k) * r;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          if (s(i, j) != Complex(0.0, 0.0)) out.block(i * d, j * d, d, d) += s(i, j) * b[k];
        }
      }
    }
    return out;
  };
  const UnitaryMatrix inner = propagate(toggled, 0.0, tau, opts);
  return UnitaryMatrix::assume_unitary(spin_embed(rotation(shape.axis(), shape.theta()), d) * inner.matrix());
}

UnitaryMatrix full_propagator(const Schedule& schedule, const std::vector<PulseShape>& shapes, const Bath& bath,
                              const PropagateOptions& opts) {
  const HermitianOperator h = hamiltonian(bath);
  const Index d = dim_b(bath);
  const SpectralPropagator free(h);
  ComplexMatrix u = ComplexMatrix::Identity(2 * d, 2 * d);
  std::size_t next = 0;
  for (std::size_t i = 0; i < schedule.segments().size(); ++i) {
    const Segment& s = schedule.segments()[i];
    const double dt = s.duration();
    if (!s.is_pulse()) {
      u = free.evolve(dt) * u;
      continue;
    }
    if (dt == 0.0) {
      u = spin_embed(rotation(s.axis, s.theta), d) * u;
      continue;
    }
    if (next >= shapes.size()) {
      throw InvalidArgument("full_propagator: fewer shapes than finite pulse windows");
    }
    const PulseShape& shape = shapes[next++];
    if (relative_mismatch(shape.tau_p(), dt) > 1e-9) {
      std::ostringstream os;
      os << "full_propagator: shape duration " << shape.tau_p() << " does not match window " << i << " of length "
         << dt;
      throw InvalidArgument(os.str());
    }
    if (shape.axis() != s.axis || relative_mismatch(shape.theta(), s.theta) > 1e-12) {
      throw InvalidArgument("full_propagator: shape angle or axis does not match window " + std::to_string(i));
    }
    u = pulse_propagator(shape, h, opts).matrix() * u;
  }
  if (next != shapes.size()) throw InvalidArgument("full_propagator: more shapes than finite pulse windows");
  return UnitaryMatrix::assume_unitary(std::move(u));
}

UnitaryMatrix full_propagator_zero_coupling(const Schedule& schedule, const Bath& bath) {
  const HermitianOperator h = hamiltonian(bath);
  const Index d = dim_b(bath);
  const SpectralPropagator free(h);
  const SpectralPropagator energy(HermitianOperator::symmetrized(kron(pauli_i(), spin_components(h.matrix())[0])));
  ComplexMatrix u = ComplexMatrix::Identity(2 * d, 2 * d);
  for (const Segment& s : schedule.segments()) {
    const double dt = s.duration();
    if (!s.is_pulse()) {
      u = free.evolve(dt) * u;
    } else {
      if (dt > 0.0) u = energy.evolve(dt) * u;
      u = spin_embed(rotation(s.axis, s.theta), d) * u;
    }
  }
  return UnitaryMatrix::assume_unitary(std::move(u));
}

// --- pulse deviation -----------------------------------------------------------------------------

double pulse_deviation(const PulseShape& shape, const Bath& bath, DeviationVariant variant,
                       const PropagateOptions& opts) {
  const double tau = shape.tau_p();
  const Index d = dim_b(bath);
  const ComplexMatrix p = spin_embed(rotation(shape.axis(), shape.theta()), d);
  const HermitianOperator h = hamiltonian(bath);
  ComplexMatrix reference;
  switch (variant.kind()) {
    case DeviationVariant::Kind::zero:
    case DeviationVariant::Kind::ideal_at: {
      if (!std::holds_alternative<DephasingBath>(bath)) {
        throw InvalidArgument("pulse_deviation: this variant needs a dephasing bath");
      }
      if (shape.axis() == Axis::z) {
        throw InvalidArgument("pulse_deviation: a z-axis pulse does not refocus dephasing; use the longitudinal variant");
      }
      const auto& db = std::get<DephasingBath>(bath);
      if (variant.kind() == DeviationVariant::Kind::zero) {
        reference = kron(pauli_i(), expm(db.a0(), tau).matrix()) * p;
      } else {
        const double ts = variant.tau_s();
        if (!(ts >= 0.0) || !(ts <= tau)) throw InvalidArgument("pulse_deviation: tau_s outside [0, tau_p]");
        const SpectralPropagator sp(h);
        reference = sp.evolve(tau - ts) * p * sp.evolve(ts);
      }
      break;
    }
    case DeviationVariant::Kind::longitudinal: {
      if (!std::holds_alternative<GeneralBath>(bath)) {
        throw InvalidArgument("pulse_deviation: the longitudinal variant needs a general bath");
      }
      if (shape.axis() != Axis::z) throw InvalidArgument("pulse_deviation: the longitudinal variant needs a z-axis pulse");
      const auto& gb = std::get<GeneralBath>(bath);
      const HermitianOperator b0 = HermitianOperator::symmetrized(kron(pauli_i(), gb.a0().matrix()) +
                                                                  kron(pauli_z(), gb.az().matrix()));
      reference = expm(b0, tau).matrix() * p;
      break;
    }
  }
  const UnitaryMatrix u = pulse_propagator(shape, h, opts);
  return spectral_norm(u.matrix() - reference);
}

// --- outer frame ---------------------------------------------------------------------------------

OuterFrameHamiltonian::OuterFrameHamiltonian(const Schedule& outer, const Bath& bath)
    : total_(outer.total()), h_(hamiltonian(bath).matrix()), dim_b_(dim_b(bath)) {
  for (const Segment& s : outer.segments()) {
    if (!s.is_pulse()) continue;
    if (s.axis != Axis::x) throw InvalidArgument("OuterFrameHamiltonian: outer pulses must be about x");
    outer_pulses_.push_back(s);
  }
  a0_only_ = kron(pauli_i(), spin_components(h_)[0]);
}

ComplexMatrix OuterFrameHamiltonian::frame_rotation(double t) const {
  if (!(t >= 0.0) || !(t <= total_)) {
    std::ostringstream os;
    os << "OuterFrameHamiltonian: t = " << t << " outside [0, " << total_ << "]";
    throw InvalidArgument(os.str());
  }
  ComplexMatrix r = pauli_i();
  for (const Segment& s : outer_pulses_) {
    if (s.end <= t) r = rotation(s.axis, s.theta) * r;
  }
  return r;
}

ComplexMatrix OuterFrameHamiltonian::operator()(double t) const {
  const ComplexMatrix r = spin_embed(frame_rotation(t), dim_b_);
  for (const Segment& s : outer_pulses_) {
    if (s.start < t && t < s.end) return a0_only_;
  }
  return r.adjoint() * h_ * r;
}

UnitaryMatrix propagate_in_outer_frame(const Schedule& nested, const OuterFrameHamiltonian& h_eff) {
  if (std::abs(nested.total() - h_eff.total()) > 1e-12 * nested.total()) {
    throw InvalidArgument("propagate_in_outer_frame: schedule and outer level span different times");
  }
  const Index dim = h_eff(0.0).rows();
  const Index d = dim / 2;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const Segment& s : nested.segments()) {
    const double dt = s.duration();
    const double mid = 0.5 * (s.start + s.end);
    if (!s.is_pulse()) {
      u = expm(HermitianOperator::symmetrized(h_eff(mid)), dt).matrix() * u;
      continue;
    }
    if (dt > 0.0) {
      // Only the bath energy acts in a window, and the frame leaves it unchanged.
      const ComplexMatrix energy = kron(pauli_i(), spin_components(h_eff(mid))[0]);
      u = expm(HermitianOperator::symmetrized(energy), dt).matrix() * u;
    }
    if (s.axis == Axis::x) continue;  // outer pulse: absorbed into the frame
    const ComplexMatrix r = h_eff.frame_rotation(s.start);
    u = spin_embed(r.adjoint() * rotation(s.axis, s.theta) * r, d) * u;
  }
  return UnitaryMatrix::assume_unitary(spin_embed(h_eff.frame_rotation(nested.total()), d) * u);
}

}  // namespace rudd
