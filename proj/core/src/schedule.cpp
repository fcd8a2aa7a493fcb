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

#include "rudd/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rudd/bath.hpp"

namespace rudd {

namespace {

constexpr double kPi = std::numbers::pi;

bool close_angle(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Appends pulse windows in time order and fills the gaps with free segments
// whose sign flips after every π pulse.
class TimelineBuilder {
 public:
  explicit TimelineBuilder(double total) : total_(total), snap_(16.0 * 2.2e-16 * total) {}

  void pulse(double a, double b, double theta, Axis axis) {
    if (std::abs(a - cursor_) <= snap_) a = cursor_;
    if (a < cursor_) {
      std::ostringstream os;
      os << "pulse window starting at " << a << " overlaps the previous window ending at " << cursor_;
      throw InvalidArgument(os.str());
    }
    if (b < a) throw InvalidArgument("pulse window ends before it starts");
    if (a > cursor_) segments_.push_back(Segment::free_evolution(cursor_, a, sign_));
    const bool pi = close_angle(theta, kPi);
    if (b > a || pi) segments_.push_back(Segment::pulse(a, b, theta, axis));
    if (pi) sign_ = -sign_;
    cursor_ = b;
  }

  std::vector<Segment> finish() {
    if (std::abs(total_ - cursor_) <= snap_ && !segments_.empty()) {
      segments_.back().end = total_;
      cursor_ = total_;
    }
    if (cursor_ > total_) throw InvalidArgument("pulse window extends past the end of the sequence");
    if (total_ > cursor_) segments_.push_back(Segment::free_evolution(cursor_, total_, sign_));
    return std::move(segments_);
  }

  double cursor() const { return cursor_; }

 private:
  double total_;
  double snap_;
  double cursor_ = 0.0;
  int sign_ = 1;
  std::vector<Segment> segments_;
};

void require_positive_duration(double total, const char* what) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InvalidArgument(std::string(what) + ": duration must be positive and finite");
  }
}

void require_within_bound(ThetaPulseWidth theta_p, int n, const char* what) {
  const double bound = ThetaPulseWidth::bound(n);
  if (theta_p.value() > bound * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << what << ": theta_p = " << theta_p.value() << " exceeds pi/(2N+2) = " << bound << " for N = " << n;
    throw InvalidArgument(os.str());
  }
}

double theta_of_time(double t, double total) {
  const double u = std::clamp(t, 0.0, total);
  return 2.0 * std::atan2(std::sqrt(u), std::sqrt(total - u));
}

// Windows of a RUDD sequence over [offset, offset + total].
void add_rudd_windows(TimelineBuilder& b, int n, double offset, double total, double theta_p, Axis axis) {
  const double half = 0.5 * theta_p;
  const double lead = total * std::pow(std::sin(half), 2);
  b.pulse(offset, offset + lead, 2.0 * kPi, axis);
  for (int j = 1; j <= n; ++j) {
    const double centre = j * kPi / (2.0 * n + 2.0);
    const double lo = total * std::pow(std::sin(centre - half), 2);
    const double hi = total * std::pow(std::sin(centre + half), 2);
    b.pulse(offset + lo, offset + hi, kPi, axis);
  }
  const double trail = total * std::pow(std::cos(half), 2);
  b.pulse(offset + trail, offset + total, 2.0 * kPi, axis);
}

}  // namespace

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::x: return "x";
    case Axis::y: return "y";
    case Axis::z: return "z";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  if (name == "x") return Axis::x;
  if (name == "y") return Axis::y;
  if (name == "z") return Axis::z;
  throw InvalidArgument("unknown axis '" + std::string(name) + "'");
}

const ComplexMatrix& pauli(Axis axis) {
  switch (axis) {
    case Axis::x: return pauli_x();
    case Axis::y: return pauli_y();
    case Axis::z: return pauli_z();
  }
  return pauli_z();
}

ComplexMatrix rotation(Axis axis, double theta) {
  return std::cos(0.5 * theta) * pauli_i() - Complex(0.0, std::sin(0.5 * theta)) * pauli(axis);
}

std::string_view to_string(ScheduleFamily family) {
  switch (family) {
    case ScheduleFamily::udd: return "udd";
    case ScheduleFamily::rudd: return "rudd";
    case ScheduleFamily::naive_udd: return "naive-udd";
    case ScheduleFamily::cpmg_rudd: return "cpmg-rudd";
    case ScheduleFamily::qrudd: return "qrudd";
    case ScheduleFamily::custom: return "custom";
  }
  return "?";
}

ScheduleFamily parse_schedule_family(std::string_view name) {
  for (auto f : {ScheduleFamily::udd, ScheduleFamily::rudd, ScheduleFamily::naive_udd, ScheduleFamily::cpmg_rudd,
                 ScheduleFamily::qrudd, ScheduleFamily::custom}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown schedule family '" + std::string(name) + "'");
}

// --- Segment / ThetaPulseWidth ---------------------------------------------------

Segment Segment::free_evolution(double start, double end, int sign) {
  Segment s;
  s.kind = Kind::free;
  s.start = start;
  s.end = end;
  s.sign = sign;
  return s;
}

Segment Segment::pulse(double start, double end, double theta, Axis axis) {
  Segment s;
  s.kind = Kind::pulse;
  s.start = start;
  s.end = end;
  s.sign = 0;
  s.theta = theta;
  s.axis = axis;
  return s;
}

bool Segment::is_pi() const { return kind == Kind::pulse && close_angle(theta, kPi); }

ThetaPulseWidth::ThetaPulseWidth(double theta_p) : v_(theta_p) {
  if (!(theta_p >= 0.0) || !std::isfinite(theta_p)) {
    throw InvalidArgument("theta_p must be finite and non-negative");
  }
}

double ThetaPulseWidth::bound(int n) {
  if (n < 1) throw InvalidArgument("theta_p bound needs N >= 1");
  return kPi / (2.0 * n + 2.0);
}

ThetaPulseWidth ThetaPulseWidth::fraction_of_bound(double fraction, int n) {
  return ThetaPulseWidth(fraction * bound(n));
}

// --- Schedule ---------------------------------------------------------------------

Schedule::Schedule(double total, int n, Axis axis, std::vector<Segment> segments, ScheduleFamily family,
                   double theta_p)
    : total_(total), n_(n), axis_(axis), segments_(std::move(segments)), family_(family), theta_p_(theta_p) {}

int Schedule::switching_value(double t) const {
  if (t < 0.0 || t > total_) throw InvalidArgument("switching_value: t outside [0, T]");
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const Segment& s) { return v < s.start; });
  // Walk back over instantaneous pulses sitting exactly at t.
  while (it != segments_.begin()) {
    --it;
    if (it->end > t || (it->end == t && t == total_)) return it->sign;
    if (it->end < t) break;
  }
  return 0;
}

int Schedule::switching_in_theta(double theta) const {
  if (theta < 0.0 || theta > kPi) throw InvalidArgument("switching_in_theta: theta outside [0, pi]");
  return switching_value(total_ * std::pow(std::sin(0.5 * theta), 2));
}

std::vector<const Segment*> Schedule::pulses() const {
  std::vector<const Segment*> out;
  for (const Segment& s : segments_) {
    if (s.is_pulse()) out.push_back(&s);
  }
  return out;
}

double Schedule::tau_max() const {
  double m = 0.0;
  for (const Segment& s : segments_) {
    if (s.is_pulse()) m = std::max(m, s.duration());
  }
  return m;
}

double Schedule::pulse_time() const {
  double sum = 0.0;
  for (const Segment& s : segments_) {
    if (s.is_pulse()) sum += s.duration();
  }
  return sum;
}

// --- constructors -------------------------------------------------------------------

std::vector<double> udd_instants(int n, double total) {
  if (n < 1) throw InvalidArgument("udd_instants: N must be at least 1");
  require_positive_duration(total, "udd_instants");
  std::vector<double> t(n);
  for (int j = 1; j <= n; ++j) t[j - 1] = total * std::pow(std::sin(j * kPi / (2.0 * n + 2.0)), 2);
  return t;
}

Schedule udd_schedule(int n, double total, Axis axis) {
  TimelineBuilder b(total);
  for (double t : udd_instants(n, total)) b.pulse(t, t, kPi, axis);
  return Schedule(total, n, axis, b.finish(), ScheduleFamily::udd, 0.0);
}

Schedule rudd_schedule(int n, double total, ThetaPulseWidth theta_p, Axis axis) {
  if (n < 1) throw InvalidArgument("rudd_schedule: N must be at least 1");
  require_positive_duration(total, "rudd_schedule");
  require_within_bound(theta_p, n, "rudd_schedule");
  const double th = std::min(theta_p.value(), ThetaPulseWidth::bound(n));
  TimelineBuilder b(total);
  add_rudd_windows(b, n, 0.0, total, th, axis);
  return Schedule(total, n, axis, b.finish(), ScheduleFamily::rudd, theta_p.value());
}

Schedule naive_udd_schedule(int n, double total, ThetaPulseWidth theta_p, Axis axis) {
  if (n < 1) throw InvalidArgument("naive_udd_schedule: N must be at least 1");
  require_positive_duration(total, "naive_udd_schedule");
  require_within_bound(theta_p, n, "naive_udd_schedule");
  const std::vector<double> centres = udd_instants(n, total);
  TimelineBuilder b(total);
  for (int j = 1; j <= n; ++j) {
    const double tau = total * std::sin(j * kPi / (n + 1.0)) * std::sin(theta_p.value());
    const double lo = centres[j - 1] - 0.5 * tau;
    if (lo < 0.0) throw InvalidArgument("naive_udd_schedule: first window starts before t = 0");
    b.pulse(lo, centres[j - 1] + 0.5 * tau, kPi, axis);
  }
  return Schedule(total, n, axis, b.finish(), ScheduleFamily::naive_udd, theta_p.value());
}

Schedule cpmg_rudd_schedule(int n_cycles, double t, ThetaPulseWidth theta_p, Axis axis) {
  if (n_cycles < 1) throw InvalidArgument("cpmg_rudd_schedule: at least one cycle is required");
  require_positive_duration(t, "cpmg_rudd_schedule");
  require_within_bound(theta_p, 2, "cpmg_rudd_schedule");
  const double th = theta_p.value();
  const double t1 = 2.0 * t * (1.0 - std::cos(th));
  const double t2 = 2.0 * t * std::sin(kPi / 6.0 - th);
  const double tau = 4.0 * t * std::cos(kPi / 6.0) * std::sin(th);
  const double cycle = 4.0 * t;
  const double total = cycle * n_cycles;

  TimelineBuilder b(total);
  b.pulse(0.0, t1, 2.0 * kPi, axis);
  for (int k = 0; k < n_cycles; ++k) {
    const double base = cycle * k;
    b.pulse(base + t1 + t2, base + t1 + t2 + tau, kPi, axis);
    b.pulse(base + t1 + 3.0 * t2 + tau, base + t1 + 3.0 * t2 + 2.0 * tau, kPi, axis);
    const double next = cycle * (k + 1);
    const double hi = (k + 1 == n_cycles) ? total : next + t1;
    b.pulse(next - t1, hi, 2.0 * kPi, axis);
  }
  return Schedule(total, 2 * n_cycles, axis, b.finish(), ScheduleFamily::cpmg_rudd, th);
}

Schedule qrudd_schedule(int n_z, int n_perp, double total, ThetaPulseWidth theta_inner,
                        ThetaPulseWidth theta_outer) {
  if (n_perp < 1) throw InvalidArgument("qrudd_schedule: N_perp must be at least 1");
  if (n_z < 0) throw InvalidArgument("qrudd_schedule: N_z must be non-negative");
  require_positive_duration(total, "qrudd_schedule");
  require_within_bound(theta_outer, n_perp, "qrudd_schedule (outer)");
  if (n_z > 0) require_within_bound(theta_inner, n_z, "qrudd_schedule (inner)");

  const Schedule outer = rudd_schedule(n_perp, total, theta_outer, Axis::x);
  TimelineBuilder b(total);
  int block = 0;
  for (const Segment& s : outer.segments()) {
    if (s.is_pulse()) {
      b.pulse(s.start, s.end, s.theta, Axis::x);
      continue;
    }
    if (n_z > 0) {
      if (!(s.duration() > 0.0)) {
        std::ostringstream os;
        os << "qrudd_schedule: outer free interval " << block << " has zero length; inner pulses "
           << "would collide with the outer windows";
        throw InvalidArgument(os.str());
      }
      add_rudd_windows(b, n_z, s.start, s.duration(), theta_inner.value(), Axis::z);
    }
    ++block;
  }
  // Outer intervals squeezed to zero length never produce a free segment, so
  // the collision check above needs the count as well.
  if (n_z > 0 && block != n_perp + 1) {
    throw InvalidArgument("qrudd_schedule: outer windows touch; inner blocks would collide with them");
  }
  return Schedule(total, n_perp, Axis::x, b.finish(), ScheduleFamily::qrudd, theta_outer.value());
}

// --- diagnostics ------------------------------------------------------------------------

double fourier_coefficient(const Schedule& schedule, int l) {
  if (l < 1) throw InvalidArgument("fourier_coefficient: l must be at least 1");
  const double k = static_cast<double>(l) * (schedule.n() + 1);
  const double total = schedule.total();
  double sum = 0.0;
  for (const Segment& s : schedule.segments()) {
    if (s.is_pulse() || s.sign == 0) continue;
    const double a = theta_of_time(s.start, total);
    const double b = theta_of_time(s.end, total);
    const QuadResult r = quad([k](double th) { return std::sin(k * th); }, a, b, 1e-15, 20000);
    sum += s.sign * r.value;
  }
  return 2.0 / kPi * sum;
}

std::vector<Diagnostic> validate(const Schedule& schedule) {
  std::vector<Diagnostic> out;
  auto report = [&out](std::string code, const std::string& msg) { out.push_back({std::move(code), msg}); };
  const double total = schedule.total();
  const auto& segs = schedule.segments();
  const double eps = 1e-12 * std::max(1.0, total);

  if (!(total > 0.0)) report("tiling", "total duration must be positive");
  if (segs.empty()) {
    report("tiling", "schedule has no segments");
    return out;
  }
  if (std::abs(segs.front().start) > eps) {
    std::ostringstream os;
    os << "first segment starts at " << segs.front().start << " instead of 0";
    report("tiling", os.str());
  }
  if (std::abs(segs.back().end - total) > eps) {
    std::ostringstream os;
    os << "last segment ends at " << segs.back().end << " instead of T = " << total;
    report("tiling", os.str());
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    const bool may_be_point = s.is_pi();
    if (s.end < s.start || (!may_be_point && !(s.end > s.start))) {
      std::ostringstream os;
      os << "segment " << i << " [" << s.start << ", " << s.end << "] has non-positive length";
      report("tiling", os.str());
    }
    if (i > 0) {
      const double gap = s.start - segs[i - 1].end;
      if (gap > eps) {
        std::ostringstream os;
        os << "gap of " << gap << " between segments " << i - 1 << " and " << i;
        report("tiling", os.str());
      } else if (gap < -eps) {
        std::ostringstream os;
        os << "segments " << i - 1 << " and " << i << " overlap by " << -gap;
        report("tiling", os.str());
      }
    }
    if (s.is_pulse()) {
      if (s.sign != 0) report("sign", "pulse window " + std::to_string(i) + " carries a nonzero switching value");
      if (!close_angle(s.theta, kPi) && !close_angle(s.theta, 2.0 * kPi)) {
        report("sign", "pulse window " + std::to_string(i) + " has an angle other than pi or 2pi");
      }
    } else if (s.sign != 1 && s.sign != -1) {
      report("sign", "free segment " + std::to_string(i) + " must carry +1 or -1");
    }
  }

  if (schedule.pulse_time() > total + eps) {
    std::ostringstream os;
    os << "pulse windows take " << schedule.pulse_time() << " which exceeds T = " << total;
    report("budget", os.str());
  }
  const ScheduleFamily fam = schedule.family();
  if ((fam == ScheduleFamily::rudd || fam == ScheduleFamily::naive_udd) && schedule.n() > 0 &&
      schedule.theta_p() > ThetaPulseWidth::bound(schedule.n()) * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "theta_p = " << schedule.theta_p() << " exceeds the bound " << ThetaPulseWidth::bound(schedule.n());
    report("budget", os.str());
  }

  int expected = 1;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    if (s.is_pulse()) {
      if (s.is_pi()) expected = -expected;
    } else if (s.sign != expected) {
      std::ostringstream os;
      os << "free segment " << i << " carries " << s.sign << " but " << expected << " is expected";
      report("alternation", os.str());
      expected = s.sign;
    }
  }

  const bool antiperiodic_family =
      schedule.family() == ScheduleFamily::udd || schedule.family() == ScheduleFamily::rudd;
  if (antiperiodic_family && out.empty() && schedule.n() >= 1) {
    const double shift = kPi / (schedule.n() + 1);
    std::vector<double> edges;
    for (const Segment& s : segs) {
      edges.push_back(theta_of_time(s.start, total));
      edges.push_back(theta_of_time(s.end, total));
    }
    auto near_edge = [&edges](double th) {
      return std::any_of(edges.begin(), edges.end(), [th](double e) { return std::abs(th - e) < 1e-9; });
    };
    const int samples = 10000;
    int bad = 0;
    double first_bad = 0.0;
    for (int i = 0; i <= samples; ++i) {
      const double th = (kPi - shift) * i / samples;
      if (near_edge(th) || near_edge(th + shift)) continue;
      if (schedule.switching_in_theta(th + shift) != -schedule.switching_in_theta(th)) {
        if (bad++ == 0) first_bad = th;
      }
    }
    if (bad > 0) {
      std::ostringstream os;
      os << "F(theta + pi/(N+1)) != -F(theta) at " << bad << " grid points, first at theta = " << first_bad;
      report("antiperiodicity", os.str());
    }
  }
  return out;
}

ComplexMatrix ideal_rotation(const Schedule& schedule) {
  ComplexMatrix r = pauli_i();
  for (const Segment& s : schedule.segments()) {
    if (s.is_pulse()) r = rotation(s.axis, s.theta) * r;
  }
  return r;
}

}  // namespace rudd
