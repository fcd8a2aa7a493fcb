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

#pragma once

#include <functional>
#include <vector>

#include "rudd/bath.hpp"
#include "rudd/numerics.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"

namespace rudd {

/// H(t), Hermitian at every t.
using TimeDependentHamiltonian = std::function<ComplexMatrix(double)>;

enum class Integrator {
  midpoint,  ///< exp(−ih H(t+h/2)), second order
  magnus4,   ///< two-point Gauss Magnus step with one commutator, fourth order
  magnus6,   ///< three-point Gauss Magnus step, sixth order
};

struct PropagateOptions {
  double tol = 1e-12;  ///< on ‖U_n − U_2n‖ between successive halvings
  int initial_steps = 4;
  int max_refinements = 16;
  Integrator integrator = Integrator::magnus6;
};

struct PropagationResult {
  UnitaryMatrix u;
  int steps = 0;
  double change = 0.0;  ///< ‖U_n − U_2n‖ of the accepted refinement
};

/// Time-ordered exponential over [t0, t1], halving the uniform step until the
/// change between refinements is at most `opts.tol`. Throws ConvergenceError
/// carrying the last change when the budget runs out.
PropagationResult propagate_adaptive(const TimeDependentHamiltonian& h, double t0, double t1,
                                     const PropagateOptions& opts = {});
UnitaryMatrix propagate(const TimeDependentHamiltonian& h, double t0, double t1, const PropagateOptions& opts = {});
/// Constant generator: a single exact exponential.
UnitaryMatrix propagate(const HermitianOperator& h, double t0, double t1);
/// One pass with a fixed number of uniform steps; no error control.
UnitaryMatrix propagate_fixed(const TimeDependentHamiltonian& h, double t0, double t1, int steps,
                              Integrator integrator);

/// Spin-conditioned bath evolutions U± = Π exp(−i(A0 ± F̃A1)Δt), later times
/// on the left.
struct ConditionedPropagators {
  UnitaryMatrix plus;
  UnitaryMatrix minus;
};

enum class PulseMode {
  ideal,      ///< every pulse window must have zero length
  noise_off,  ///< bath evolves under A0 alone inside windows
};

/// Rejects schedules with z-axis pulses, which do not flip σz.
ConditionedPropagators conditioned_propagators(const Schedule& schedule, const DephasingBath& bath,
                                               PulseMode mode);

/// ‖U₊ − U₋‖.
double distinguishability(const ConditionedPropagators& cp);

enum class PulseFamily { shaped, naive };

/// One shape per finite pulse window, in time order, with τ_p equal to the
/// window length.
std::vector<PulseShape> pulse_train(const Schedule& schedule, PulseFamily family);

/// Evolution of spin ⊗ bath through one pulse, H(t) = H_bath + v(t)σ_axis⊗1.
/// Integrated in the frame rotating with the control, so the step size only
/// has to resolve the bath dynamics and the variation of ψ.
UnitaryMatrix pulse_propagator(const PulseShape& shape, const HermitianOperator& h_bath,
                               const PropagateOptions& opts = {});

/// Lab-frame evolution of spin ⊗ bath through the whole schedule. Free
/// segments evolve under the physical bath Hamiltonian, finite windows under
/// `shapes` (see pulse_train), zero-length π windows as ideal rotations.
UnitaryMatrix full_propagator(const Schedule& schedule, const std::vector<PulseShape>& shapes, const Bath& bath,
                              const PropagateOptions& opts = {});

/// Same timeline with each finite window replaced by evolution under the bath
/// energy alone followed by the ideal rotation.
UnitaryMatrix full_propagator_zero_coupling(const Schedule& schedule, const Bath& bath);

/// Reference propagator for pulse_deviation.
class DeviationVariant {
 public:
  enum class Kind { zero, ideal_at, longitudinal };

  /// e^{−iτ_p A0} P_θ.
  static DeviationVariant zero() { return DeviationVariant(Kind::zero, 0.0); }
  /// e^{−i(τ_p−τ_s)H} P_θ e^{−iτ_s H}, an ideal pulse at τ_s inside the window.
  static DeviationVariant ideal_at(double tau_s) { return DeviationVariant(Kind::ideal_at, tau_s); }
  /// e^{−iτ_p B0} P_θ^z with B0 = A0 + Az σz.
  static DeviationVariant longitudinal() { return DeviationVariant(Kind::longitudinal, 0.0); }

  Kind kind() const { return kind_; }
  double tau_s() const { return tau_s_; }

 private:
  DeviationVariant(Kind k, double tau_s) : kind_(k), tau_s_(tau_s) {}
  Kind kind_;
  double tau_s_;
};

/// ‖U_p − reference‖ for one pulse. zero and ideal_at need a dephasing bath and
/// an x or y pulse; longitudinal needs a general bath and a z pulse.
double pulse_deviation(const PulseShape& shape, const Bath& bath, DeviationVariant variant,
                       const PropagateOptions& opts = {});

/// Bath Hamiltonian seen from the frame of the outer (x-axis) level of a
/// nested sequence: H_eff(t) = R(t)† H R(t), R(t) the product of the outer
/// rotations completed by t. Inside finite outer windows only the bath
/// energy A0 acts.
class OuterFrameHamiltonian {
 public:
  OuterFrameHamiltonian(const Schedule& outer, const Bath& bath);

  /// Throws outside [0, T].
  ComplexMatrix operator()(double t) const;
  /// 2×2 accumulated outer rotation R(t).
  ComplexMatrix frame_rotation(double t) const;
  double total() const { return total_; }

 private:
  double total_;
  std::vector<Segment> outer_pulses_;
  ComplexMatrix h_;
  ComplexMatrix a0_only_;
  Index dim_b_;
};

/// Evolves a nested schedule in the outer frame using `h_eff` and maps the
/// result back to the lab frame. Outer pulses become frame changes; inner
/// pulses are conjugated into the frame. Windows of finite length use the
/// zero-coupling substitution.
UnitaryMatrix propagate_in_outer_frame(const Schedule& nested, const OuterFrameHamiltonian& h_eff);

}  // namespace rudd
