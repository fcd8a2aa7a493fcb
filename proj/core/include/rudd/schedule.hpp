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

#include <string>
#include <string_view>
#include <vector>

#include "rudd/numerics.hpp"

namespace rudd {

enum class Axis { x, y, z };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);
const ComplexMatrix& pauli(Axis axis);

/// One piece of the switching-function timeline. Free segments carry the
/// toggling sign F̃ = ±1; pulse windows carry F̃ = 0 and a rotation angle.
/// A π window with start == end stands for an instantaneous pulse; zero
/// length 2π windows are never stored.
struct Segment {
  enum class Kind { free, pulse };

  Kind kind = Kind::free;
  double start = 0.0;
  double end = 0.0;
  int sign = 0;        ///< ±1 for free segments, 0 inside pulse windows
  double theta = 0.0;  ///< rotation angle of a pulse window
  Axis axis = Axis::x;

  static Segment free_evolution(double start, double end, int sign);
  static Segment pulse(double start, double end, double theta, Axis axis);

  double duration() const { return end - start; }
  bool is_pulse() const { return kind == Kind::pulse; }
  bool is_pi() const;
};

/// Angular half-width ϑ_p of the pulse windows in the variable
/// ϑ with t = T sin²(ϑ/2).
class ThetaPulseWidth {
 public:
  explicit ThetaPulseWidth(double theta_p);
  double value() const { return v_; }
  /// π/(2N+2).
  static double bound(int n);
  /// fraction · π/(2N+2).
  static ThetaPulseWidth fraction_of_bound(double fraction, int n);

 private:
  double v_;
};

enum class ScheduleFamily { udd, rudd, naive_udd, cpmg_rudd, qrudd, custom };

std::string_view to_string(ScheduleFamily family);
ScheduleFamily parse_schedule_family(std::string_view name);

class Schedule {
 public:
  /// Wraps segments without checking them; see validate().
  Schedule(double total, int n, Axis axis, std::vector<Segment> segments,
           ScheduleFamily family = ScheduleFamily::custom, double theta_p = 0.0);

  double total() const { return total_; }
  int n() const { return n_; }
  Axis axis() const { return axis_; }
  ScheduleFamily family() const { return family_; }
  double theta_p() const { return theta_p_; }
  const std::vector<Segment>& segments() const { return segments_; }

  /// F̃(t); at a boundary the later segment wins.
  int switching_value(double t) const;
  /// F(ϑ) = F̃(T sin²(ϑ/2)) for ϑ ∈ [0, π].
  int switching_in_theta(double theta) const;
  std::vector<const Segment*> pulses() const;
  /// Longest pulse window.
  double tau_max() const;
  /// Sum of pulse window durations.
  double pulse_time() const;

 private:
  double total_;
  int n_;
  Axis axis_;
  std::vector<Segment> segments_;
  ScheduleFamily family_;
  double theta_p_;
};

/// t_j = T sin²(jπ/(2N+2)), j = 1…N.
std::vector<double> udd_instants(int n, double total);

/// Ideal UDD timeline with instantaneous π pulses.
Schedule udd_schedule(int n, double total, Axis axis = Axis::y);

/// Interior π windows [t_j⁻, t_j⁺], t_j^± = T sin²(jπ/(2N+2) ± ϑ_p/2), plus 2π
/// windows [0, T sin²(ϑ_p/2)] and [T cos²(ϑ_p/2), T].
Schedule rudd_schedule(int n, double total, ThetaPulseWidth theta_p, Axis axis = Axis::y);

/// UDD centres with centred π windows of the RUDD durations
/// T sin(jπ/(N+1)) sin ϑ_p and no 2π end pulses.
Schedule naive_udd_schedule(int n, double total, ThetaPulseWidth theta_p, Axis axis = Axis::y);

/// Iterated two-pulse RUDD cycle of length 4t, with the 2π pulses where cycles
/// meet merged into one window of twice the length.
Schedule cpmg_rudd_schedule(int n_cycles, double t, ThetaPulseWidth theta_p, Axis axis = Axis::y);

/// Outer x-axis RUDD of N_⊥ pulses; each outer free interval holds an affinely
/// scaled z-axis RUDD of N_z pulses. Free-segment signs are the product of
/// the outer and inner signs.
Schedule qrudd_schedule(int n_z, int n_perp, double total, ThetaPulseWidth theta_inner,
                        ThetaPulseWidth theta_outer);

/// Sine coefficient (2/π)∫₀^π F(ϑ) sin(l(N+1)ϑ) dϑ, integrated numerically
/// piece by piece over the free segments.
double fourier_coefficient(const Schedule& schedule, int l);

struct Diagnostic {
  std::string code;  ///< tiling, budget, sign, alternation, antiperiodicity
  std::string message;
};

/// Returns every violated invariant; empty means valid.
std::vector<Diagnostic> validate(const Schedule& schedule);

/// Net ideal rotation of the spin (2×2), the ordered product of all π and 2π
/// rotations in the schedule.
ComplexMatrix ideal_rotation(const Schedule& schedule);

/// exp(−iθσ_axis/2).
ComplexMatrix rotation(Axis axis, double theta);

}  // namespace rudd
