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

#include <vector>

#include "rudd/numerics.hpp"
#include "rudd/schedule.hpp"

namespace rudd {

/// Fourier coefficients of a shaped pulse in units of 1/τ_p.
struct PulseCoefficients {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Tabulated second-order-clean coefficients for π and 2π rotations.
inline constexpr PulseCoefficients kTabulatedPi{10.804433, 6.831344, 2.174538};
inline constexpr PulseCoefficients kTabulatedTwoPi{10.236155, 2.9661717, 0.889052};

/// Finite control waveform rotating the spin by θ about `axis` in time τ_p.
/// A shaped pulse has amplitude
///   v(t) = (1/τ_p)[θ/2 + (a−θ/2)cos 2πs + (b−a)cos 4πs + (c−b)cos 6πs − c cos 8πs],
/// s = t/τ_p, which starts and ends at zero; a constant pulse has v = θ/(2τ_p).
/// The rotation angle is ψ(t) = 2∫₀ᵗ v.
class PulseShape {
 public:
  enum class Waveform { shaped, constant };

  static PulseShape shaped(double theta, double tau_p, PulseCoefficients coeffs, Axis axis = Axis::y);
  static PulseShape constant(double theta, double tau_p, Axis axis = Axis::y);

  double theta() const { return theta_; }
  double tau_p() const { return tau_; }
  Axis axis() const { return axis_; }
  Waveform waveform() const { return waveform_; }
  const PulseCoefficients& coefficients() const { return coeffs_; }

  /// Same waveform (coefficients fixed in units 1/τ_p) with a new duration or axis.
  PulseShape with_duration(double tau_p) const;
  PulseShape with_axis(Axis axis) const;

  /// v(t); throws outside [0, τ_p].
  double amplitude(double t) const;
  /// ψ(t), closed form; throws outside [0, τ_p].
  double psi(double t) const;
  /// ψ at normalized time s = t/τ_p, without range checks.
  double psi_normalized(double s) const;
  /// max |v| sampled on a fine grid.
  double peak_amplitude() const;

 private:
  PulseShape(double theta, double tau, PulseCoefficients coeffs, Axis axis, Waveform waveform);

  double theta_;
  double tau_;
  PulseCoefficients coeffs_;
  Axis axis_;
  Waveform waveform_;
};

/// Constant-amplitude pulse, first-order (M = 1).
PulseShape naive_pulse(double theta, double tau_p, Axis axis = Axis::y);
/// The tabulated π or 2π shape; θ must be π or 2π.
PulseShape tabulated_pulse(double theta, double tau_p, Axis axis = Axis::y);

/// η₁₁ = ∫sinψ, η₁₂ = ∫cosψ, η₂₁ = ∫t sinψ, η₂₂ = ∫t cosψ,
/// η₂₃ = ∬ sin(ψ(t₁)−ψ(t₂)) sgn(t₁−t₂) over [0, τ_p]².
struct EtaVector {
  double eta11 = 0.0;
  double eta12 = 0.0;
  double eta21 = 0.0;
  double eta22 = 0.0;
  double eta23 = 0.0;

  /// max(|η₁ᵢ|/τ_p, |η₂ᵢ|/τ_p²).
  double max_normalized(double tau_p) const;
};

/// Adaptive-quadrature evaluation. η₂₃ is reduced to
/// 2∫₀^{τ_p} [sinψ(t)C(t) − cosψ(t)S(t)] dt with S, C the running integrals of
/// sinψ and cosψ. Absolute tolerance 1e-10·τ_p^k by default.
EtaVector eta_integrals(const PulseShape& shape, double tol = 1e-10);

/// Fixed composite Gauss-Legendre evaluation (32 panels, 16 nodes); fast enough
/// for root finding, agrees with eta_integrals to ~1e-14 for the shapes here.
EtaVector eta_integrals_fast(const PulseShape& shape);

struct ShapeSolution {
  /// The root with the smallest peak amplitude.
  PulseShape best;
  /// Every distinct root found, each verified on all five η.
  std::vector<PulseShape> roots;
  /// One entry per multistart point.
  std::vector<RootAttempt> trace;
};

struct ShapeSolveOptions {
  double grid_lo = 0.0;
  double grid_hi = 15.0;
  double grid_step = 2.5;
  double tol = 1e-10;
  /// Roots closer than this (∞-norm, units 1/τ_p) are merged.
  double merge_distance = 1e-6;
};

/// Finds coefficients (a, b, c) for which all five η vanish. The square
/// system solved is (η₁₁, η₂₂, η₂₃) for θ = π and (η₁₂, η₂₁, η₂₃) for θ = 2π;
/// the remaining two conditions follow from the reflection symmetry of the
/// waveform and are re-checked on every root. Throws RootFindingError when no
/// start converges.
ShapeSolution solve_shape(double theta, double tau_p, Axis axis = Axis::y, const ShapeSolveOptions& opts = {});

}  // namespace rudd
