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

#include "rudd/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "rudd/bath.hpp"
#include "rudd/channel.hpp"
#include "rudd/propagation.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"

#ifndef RUDD_VERSION_STRING
#define RUDD_VERSION_STRING "unknown"
#endif

namespace rudd {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Role { primary, naive };

struct Job {
  const SeriesConfig* config;
  Role role;
  std::string name;
};

struct Task {
  std::size_t job;
  double x;
  std::uint64_t seed;
};

// Parameters of one sweep point.
struct Point {
  double gamma;
  double theta_fraction;
};

Point resolve(const SeriesConfig& c, double x) {
  const bool single_pulse = c.kind == ExperimentKind::pulse_order || c.kind == ExperimentKind::longitudinal;
  const double scale = single_pulse ? c.tau_p : c.total;
  switch (c.sweep) {
    case SweepVariable::gamma_t:
    case SweepVariable::gamma_tau:
      return {x / scale, c.theta_fraction};
    case SweepVariable::theta_fraction:
      return {c.gamma_t / scale, x};
  }
  return {0.0, 0.0};
}

BathSpec bath_for(const SeriesConfig& c, double gamma, std::uint64_t seed) {
  BathSpec spec = c.bath;
  spec.gamma = gamma;
  spec.seed = seed;
  return spec;
}

const DephasingBath& require_dephasing(const Bath& bath, const char* what) {
  if (const auto* db = std::get_if<DephasingBath>(&bath)) return *db;
  throw InvalidArgument(std::string(what) + " needs a dephasing bath");
}

double channel_error(const Schedule& s, PulseFamily family, const Bath& bath, const PropagateOptions& opts) {
  const UnitaryMatrix u = full_propagator(s, pulse_train(s, family), bath, opts);
  return spin_channel_error(u, ideal_rotation(s), maximally_mixed_state(dim_b(bath))).epsilon;
}

double evaluate(const SeriesConfig& c, Role role, double x, std::uint64_t seed) {
  const Point p = resolve(c, x);
  switch (c.kind) {
    case ExperimentKind::udd_ideal: {
      const Bath bath = generate(bath_for(c, p.gamma, seed));
      const auto cp = conditioned_propagators(udd_schedule(c.n, c.total, c.axis),
                                              require_dephasing(bath, "udd-ideal"), PulseMode::ideal);
      return distinguishability(cp);
    }
    case ExperimentKind::rudd_noise_off: {
      const Bath bath = generate(bath_for(c, p.gamma, seed));
      const Schedule s = rudd_schedule(c.n, c.total, ThetaPulseWidth::fraction_of_bound(p.theta_fraction, c.n), c.axis);
      return distinguishability(
          conditioned_propagators(s, require_dephasing(bath, "rudd-noise-off"), PulseMode::noise_off));
    }
    case ExperimentKind::pulse_order:
    case ExperimentKind::longitudinal: {
      const bool longitudinal = c.kind == ExperimentKind::longitudinal;
      BathSpec spec = bath_for(c, p.gamma, seed);
      if (longitudinal) spec.kind = BathKind::general;
      const Bath bath = generate(spec);
      const Axis axis = longitudinal ? Axis::z : c.axis;
      const PulseShape shape =
          c.pulses == PulseFamily::naive ? naive_pulse(kPi, c.tau_p, axis) : tabulated_pulse(kPi, c.tau_p, axis);
      DeviationVariant variant = DeviationVariant::zero();
      if (longitudinal || c.variant == DeviationVariant::Kind::longitudinal) {
        variant = DeviationVariant::longitudinal();
      } else if (c.variant == DeviationVariant::Kind::ideal_at) {
        variant = DeviationVariant::ideal_at(c.tau_s * c.tau_p);
      }
      return pulse_deviation(shape, bath, variant, c.propagate);
    }
    case ExperimentKind::rudd_shaped: {
      const Bath bath = generate(bath_for(c, p.gamma, seed));
      const Schedule s = rudd_schedule(c.n, c.total, ThetaPulseWidth::fraction_of_bound(p.theta_fraction, c.n), c.axis);
      return channel_error(s, c.pulses, bath, c.propagate);
    }
    case ExperimentKind::rudd_vs_naive: {
      const Bath bath = generate(bath_for(c, p.gamma, seed));
      const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(p.theta_fraction, c.n);
      if (role == Role::naive) {
        return channel_error(naive_udd_schedule(c.n, c.total, w, c.axis), PulseFamily::naive, bath, c.propagate);
      }
      return channel_error(rudd_schedule(c.n, c.total, w, c.axis), PulseFamily::shaped, bath, c.propagate);
    }
    case ExperimentKind::cpmg: {
      const Bath bath = generate(bath_for(c, p.gamma, seed));
      const Schedule s = cpmg_rudd_schedule(c.n, c.total / (4.0 * c.n),
                                            ThetaPulseWidth::fraction_of_bound(p.theta_fraction, 2), c.axis);
      return channel_error(s, c.pulses, bath, c.propagate);
    }
    case ExperimentKind::qrudd: {
      BathSpec spec = bath_for(c, p.gamma, seed);
      spec.kind = BathKind::general;
      const Bath bath = generate(spec);
      const ThetaPulseWidth inner =
          c.n_z > 0 ? ThetaPulseWidth::fraction_of_bound(c.theta_fraction_inner, c.n_z) : ThetaPulseWidth(0.0);
      const Schedule s = qrudd_schedule(c.n_z, c.n_perp, c.total, inner,
                                        ThetaPulseWidth::fraction_of_bound(p.theta_fraction, c.n_perp));
      return channel_error(s, c.pulses, bath, c.propagate);
    }
    default:
      throw InvalidArgument("evaluate: not a sweep kind");
  }
}

// --- diagnostic kinds ------------------------------------------------------------------

using Metrics = std::vector<std::pair<std::string, double>>;

Metrics eta_metrics(const SeriesConfig& c) {
  const EtaVector e = eta_integrals(tabulated_pulse(c.theta, c.tau_p, c.axis));
  return {{"eta11", e.eta11},
          {"eta12", e.eta12},
          {"eta21", e.eta21},
          {"eta22", e.eta22},
          {"eta23", e.eta23},
          {"max_normalized", e.max_normalized(c.tau_p)}};
}

double relative_distance(const PulseCoefficients& got, const PulseCoefficients& want) {
  return std::max({std::abs(got.a - want.a) / std::abs(want.a), std::abs(got.b - want.b) / std::abs(want.b),
                   std::abs(got.c - want.c) / std::abs(want.c)});
}

Metrics shape_metrics(const SeriesConfig& c) {
  const bool pi = std::abs(c.theta - kPi) < 1e-12;
  if (!pi && std::abs(c.theta - 2.0 * kPi) > 1e-12) throw InvalidArgument("shape-solve: theta must be pi or 2pi");
  const PulseCoefficients target = pi ? kTabulatedPi : kTabulatedTwoPi;
  const ShapeSolution sol = solve_shape(c.theta, c.tau_p, c.axis);
  double recovery = std::numeric_limits<double>::infinity();
  for (const PulseShape& r : sol.roots) recovery = std::min(recovery, relative_distance(r.coefficients(), target));
  const PulseCoefficients& best = sol.best.coefficients();
  return {{"roots", static_cast<double>(sol.roots.size())},
          {"recovery", recovery},
          {"best_a", best.a},
          {"best_b", best.b},
          {"best_c", best.c},
          {"best_peak", sol.best.peak_amplitude() * c.tau_p},
          {"best_recovery", relative_distance(best, target)}};
}

Metrics fourier_metrics(const SeriesConfig& c) {
  Schedule s = udd_schedule(c.n, c.total, c.axis);
  double theta_p = 0.0;
  if (c.family == ScheduleFamily::rudd) {
    const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(c.theta_fraction, c.n);
    theta_p = w.value();
    s = rudd_schedule(c.n, c.total, w, c.axis);
  } else if (c.family != ScheduleFamily::udd) {
    throw InvalidArgument("fourier: family must be udd or rudd");
  }
  double odd = 0.0;
  double even = 0.0;
  for (int l = 1; l <= c.harmonics; ++l) {
    const double b = fourier_coefficient(s, l);
    if (l % 2 == 0) {
      even = std::max(even, std::abs(b));
    } else {
      const double expected = 4.0 * std::cos(l * (c.n + 1) * theta_p) / (kPi * l);
      odd = std::max(odd, std::abs(b - expected));
    }
  }
  return {{"max_odd_error", odd}, {"max_even", even}};
}

Metrics exact_zero_metrics(const SeriesConfig& c) {
  const double gamma = c.gamma_t / c.total;
  if (c.zero_case == "hahn-static") {
    double worst = 0.0;
    for (std::uint64_t seed : c.seeds) {
      BathSpec spec = bath_for(c, gamma, seed);
      spec.kind = BathKind::static_scalar;
      const DephasingBath bath = generate_dephasing(spec);
      worst = std::max(worst, distinguishability(
                                  conditioned_propagators(udd_schedule(1, c.total, c.axis), bath, PulseMode::ideal)));
    }
    return {{"distinguishability", worst}};
  }
  if (c.zero_case == "zero-coupling") {
    double udd = 0.0, noise_off = 0.0, shaped = 0.0, naive = 0.0, deviation = 0.0;
    const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(c.theta_fraction, c.n);
    for (std::uint64_t seed : c.seeds) {
      BathSpec spec = bath_for(c, gamma, seed);
      spec.kind = BathKind::dephasing;
      spec.weights = {1.0, 0.0};
      const DephasingBath db = generate_dephasing(spec);
      const Bath bath = db;
      udd = std::max(udd, distinguishability(
                              conditioned_propagators(udd_schedule(c.n, c.total, c.axis), db, PulseMode::ideal)));
      const Schedule rs = rudd_schedule(c.n, c.total, w, c.axis);
      noise_off = std::max(noise_off, distinguishability(conditioned_propagators(rs, db, PulseMode::noise_off)));
      shaped = std::max(shaped, channel_error(rs, PulseFamily::shaped, bath, c.propagate));
      naive = std::max(naive, channel_error(naive_udd_schedule(c.n, c.total, w, c.axis), PulseFamily::naive, bath,
                                            c.propagate));
      deviation = std::max(deviation, pulse_deviation(naive_pulse(kPi, c.tau_p, c.axis), bath,
                                                      DeviationVariant::zero(), c.propagate));
    }
    return {{"udd_distinguishability", udd},
            {"noise_off_distinguishability", noise_off},
            {"shaped_channel_error", shaped},
            {"naive_channel_error", naive},
            {"pulse_deviation", deviation},
            {"max_error", std::max({udd, noise_off, shaped, naive, deviation})}};
  }
  throw InvalidArgument("exact-zero: unknown case '" + c.zero_case + "'");
}

// Structural metrics of the CPMG-RUDD timeline: cycle lengths and agreement of
// a one-cycle sequence with the two-pulse RUDD of the same length.
Metrics cpmg_structure(const SeriesConfig& c) {
  const ThetaPulseWidth w = ThetaPulseWidth::fraction_of_bound(c.theta_fraction, 2);
  const double t = c.total / (4.0 * c.n);
  const Schedule s = cpmg_rudd_schedule(c.n, t, w, c.axis);
  std::vector<const Segment*> pis;
  for (const Segment* seg : s.pulses()) {
    if (seg->is_pi()) pis.push_back(seg);
  }
  double cycle_error = 0.0;
  if (static_cast<int>(pis.size()) != 2 * c.n) {
    cycle_error = std::numeric_limits<double>::infinity();
  } else {
    // Cycle boundaries sit halfway between the second π window of one cycle and
    // the first of the next.
    double start = 0.0;
    for (int k = 0; k < c.n; ++k) {
      const double end = k + 1 == c.n ? s.total() : 0.5 * (pis[2 * k + 1]->end + pis[2 * k + 2]->start);
      cycle_error = std::max(cycle_error, std::abs(end - start - 4.0 * t));
      start = end;
    }
  }
  const Schedule one = cpmg_rudd_schedule(1, t, w, c.axis);
  const Schedule ref = rudd_schedule(2, 4.0 * t, w, c.axis);
  double mismatch = 0.0;
  if (one.segments().size() != ref.segments().size()) {
    mismatch = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < ref.segments().size(); ++i) {
      const Segment& a = one.segments()[i];
      const Segment& b = ref.segments()[i];
      if (a.kind != b.kind || a.sign != b.sign || a.axis != b.axis || a.theta != b.theta) {
        mismatch = std::numeric_limits<double>::infinity();
        break;
      }
      mismatch = std::max({mismatch, std::abs(a.start - b.start), std::abs(a.end - b.end)});
    }
  }
  return {{"cycle_duration_error", cycle_error}, {"single_cycle_mismatch", mismatch}};
}

// ε ≈ c₁ + c₂ sin³ϑ_p by least squares in relative error.
std::pair<double, double> two_term_fit(const std::vector<std::pair<double, double>>& pts, int n) {
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (const auto& [frac, eps] : pts) {
    const double u = std::pow(std::sin(frac * ThetaPulseWidth::bound(n)), 3);
    const double a = 1.0 / eps, b = u / eps;
    s11 += a * a;
    s12 += a * b;
    s22 += b * b;
    r1 += a;
    r2 += b;
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 0.0)) return {0.0, 0.0};
  return {(r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det};
}

Metrics two_term_metrics(const SeriesReport& rep, const SeriesConfig& c) {
  std::vector<std::pair<double, double>> agg;
  for (const AggregatePoint& a : rep.aggregated) agg.emplace_back(a.x, a.epsilon);
  if (agg.size() < 2) return {};
  const auto [c1, c2] = two_term_fit(agg, c.n);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::uint64_t seed : c.seeds) {
    std::vector<std::pair<double, double>> pts;
    for (const PointResult& p : rep.points) {
      if (p.seed == seed && p.epsilon) pts.emplace_back(p.x, *p.epsilon);
    }
    if (pts.size() < 2) continue;
    const double k = two_term_fit(pts, c.n).second;
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  Metrics m{{"two_term_c1", c1}, {"two_term_c2", c2}};
  if (lo > 0.0 && std::isfinite(lo)) m.emplace_back("two_term_c2_seed_ratio", hi / lo);
  return m;
}

double default_floor(const SeriesConfig& c) {
  if (c.floor) return *c.floor;
  if (c.kind == ExperimentKind::udd_ideal || c.kind == ExperimentKind::rudd_noise_off) return 1e-16;
  return c.propagate.tol;
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void add_checks(const SeriesConfig& c, const SeriesReport& rep, std::vector<Check>& out) {
  const double slope = rep.fit ? rep.fit->slope : std::numeric_limits<double>::quiet_NaN();
  if (c.expect_slope) {
    const bool ok = rep.slope_valid && std::abs(slope - *c.expect_slope) <= c.slope_tol;
    out.push_back({rep.name, "slope", slope, format(*c.expect_slope) + " +/- " + format(c.slope_tol), ok});
  }
  if (c.min_slope) {
    const bool ok = rep.slope_valid && slope >= *c.min_slope;
    out.push_back({rep.name, "slope", slope, ">= " + format(*c.min_slope), ok});
  }
  for (const auto& [name, limit] : c.limits) {
    const auto v = rep.metric(name);
    const double value = v.value_or(std::numeric_limits<double>::quiet_NaN());
    out.push_back({rep.name, name, value, "<= " + format(limit), v.has_value() && value <= limit});
  }
}

}  // namespace

std::optional<double> SeriesReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  return std::nullopt;
}

bool ScalingReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const SeriesReport* ScalingReport::find(const std::string& name) const {
  for (const SeriesReport& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

unsigned default_workers() {
  if (const char* env = std::getenv("RUDD_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void aggregate_and_fit(SeriesReport& series, double floor) {
  std::map<double, std::pair<double, int>> sums;
  for (const PointResult& p : series.points) {
    auto& [log_sum, count] = sums[p.x];
    if (p.epsilon && *p.epsilon > 0.0) {
      log_sum += std::log(*p.epsilon);
      ++count;
    }
  }
  series.aggregated.clear();
  for (const auto& [x, acc] : sums) {
    if (acc.second == 0) continue;
    series.aggregated.push_back({x, std::exp(acc.first / acc.second), acc.second, false});
  }

  series.fit.reset();
  series.slope_valid = false;
  std::vector<std::pair<double, double>> window;
  for (std::size_t i = 0; i + 1 < series.aggregated.size(); ++i) {
    AggregatePoint& a = series.aggregated[i];
    if (a.epsilon < 1e3 * floor) continue;
    a.in_fit = true;
    window.emplace_back(a.x, a.epsilon);
  }
  if (window.size() < 3) {
    series.fit_note = "fewer than 3 points above 1e3 x floor (" + format(floor) + ")";
    return;
  }
  series.fit = fit_loglog(window);
  series.slope_valid = series.fit->r2 >= 0.98;
  series.fit_note = series.slope_valid ? "" : "r2 below 0.98";
}

ScalingReport run(const ExperimentConfig& config, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ScalingReport report;
  report.config_name = config.name;
  report.config_hash = config.hash;
  report.version = RUDD_VERSION_STRING;

  std::vector<Job> jobs;
  for (const SeriesConfig& s : config.series) {
    if (s.kind == ExperimentKind::rudd_vs_naive) {
      jobs.push_back({&s, Role::primary, s.name + ".rudd"});
      jobs.push_back({&s, Role::naive, s.name + ".naive"});
    } else {
      jobs.push_back({&s, Role::primary, s.name});
    }
  }

  // Every task writes only its own slot.
  std::vector<Task> tasks;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const SeriesConfig& c = *jobs[j].config;
    if (is_sweep(c.kind)) {
      for (double x : c.grid) {
        for (std::uint64_t seed : c.seeds) tasks.push_back({j, x, seed});
      }
    } else {
      tasks.push_back({j, 0.0, 0});
    }
  }
  std::vector<PointResult> results(tasks.size());
  std::vector<Metrics> metrics(tasks.size());

  auto work = [&](std::size_t i) {
    const Task& t = tasks[i];
    const Job& job = jobs[t.job];
    const SeriesConfig& c = *job.config;
    results[i] = {t.x, t.seed, std::nullopt, {}};
    try {
      switch (c.kind) {
        case ExperimentKind::eta_residual: metrics[i] = eta_metrics(c); break;
        case ExperimentKind::shape_solve: metrics[i] = shape_metrics(c); break;
        case ExperimentKind::fourier: metrics[i] = fourier_metrics(c); break;
        case ExperimentKind::exact_zero: metrics[i] = exact_zero_metrics(c); break;
        default: results[i].epsilon = evaluate(c, job.role, t.x, t.seed); break;
      }
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers ? opts.workers : default_workers(),
                                                           static_cast<unsigned>(tasks.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) work(i);
    });
  }
  for (std::thread& th : pool) th.join();

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const SeriesConfig& c = *jobs[j].config;
    SeriesReport rep;
    rep.name = jobs[j].name;
    rep.kind = std::string(to_string(c.kind));
    if (is_sweep(c.kind)) rep.sweep = std::string(to_string(c.sweep));
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].job != j) continue;
      if (is_sweep(c.kind)) {
        rep.points.push_back(results[i]);
      } else if (!results[i].error.empty()) {
        rep.fit_note = results[i].error;
      } else {
        rep.metrics = metrics[i];
      }
    }
    if (is_sweep(c.kind)) {
      aggregate_and_fit(rep, default_floor(c));
      if (c.kind == ExperimentKind::rudd_shaped && c.sweep == SweepVariable::theta_fraction) {
        for (auto& m : two_term_metrics(rep, c)) rep.metrics.push_back(std::move(m));
      }
      if (c.kind == ExperimentKind::cpmg) {
        try {
          for (auto& m : cpmg_structure(c)) rep.metrics.push_back(std::move(m));
        } catch (const std::exception& e) {
          rep.fit_note = e.what();
        }
      }
    }
    report.series.push_back(std::move(rep));
  }

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const SeriesConfig& c = *jobs[j].config;
    if (c.kind == ExperimentKind::rudd_vs_naive) {
      if (jobs[j].role != Role::primary) continue;
      const SeriesReport& rudd = report.series[j];
      const SeriesReport& naive = report.series[j + 1];
      if (c.min_wins) {
        int wins = 0;
        try {
          wins = compare(rudd, naive).wins;
        } catch (const InvalidArgument&) {
        }
        report.checks.push_back({c.name, "wins", static_cast<double>(wins), ">= " + std::to_string(*c.min_wins),
                                 wins >= *c.min_wins});
      }
      add_checks(c, rudd, report.checks);
      continue;
    }
    add_checks(c, report.series[j], report.checks);
  }

  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::optional<double> budget;
  for (const SeriesConfig& c : config.series) {
    if (c.max_seconds) budget = std::min(budget.value_or(*c.max_seconds), *c.max_seconds);
  }
  if (budget) {
    report.checks.push_back(
        {config.name, "wall_time", report.wall_time, "<= " + format(*budget), report.wall_time <= *budget});
  }
  return report;
}

Comparison compare(const SeriesReport& a, const SeriesReport& b) {
  if (a.aggregated.size() != b.aggregated.size()) throw InvalidArgument("compare: grids differ in length");
  Comparison out;
  for (std::size_t i = 0; i < a.aggregated.size(); ++i) {
    const AggregatePoint& pa = a.aggregated[i];
    const AggregatePoint& pb = b.aggregated[i];
    if (pa.x != pb.x) throw InvalidArgument("compare: grids differ at x = " + format(pa.x));
    out.rows.push_back({pa.x, pa.epsilon, pb.epsilon, pa.epsilon / pb.epsilon});
  }
  std::map<std::pair<double, std::uint64_t>, double> other;
  for (const PointResult& p : b.points) {
    if (p.epsilon) other[{p.x, p.seed}] = *p.epsilon;
  }
  for (const PointResult& p : a.points) {
    if (!p.epsilon) continue;
    const auto it = other.find({p.x, p.seed});
    if (it == other.end()) continue;
    if (*p.epsilon < it->second) {
      ++out.wins;
    } else {
      ++out.losses;
    }
  }
  return out;
}

std::vector<std::pair<std::string, Comparison>> compare(const ScalingReport& a, const ScalingReport& b) {
  std::vector<std::pair<std::string, Comparison>> out;
  for (const SeriesReport& s : a.series) {
    if (s.sweep.empty()) continue;
    const SeriesReport* other = b.find(s.name);
    if (!other) throw InvalidArgument("compare: series '" + s.name + "' missing from the second report");
    out.emplace_back(s.name, compare(s, *other));
  }
  return out;
}

void write_csv(const SeriesReport& series, std::ostream& out) {
  const auto prec = out.precision(17);
  out << "x,seed,epsilon\n";
  for (const PointResult& p : series.points) {
    out << p.x << ',' << p.seed << ',';
    if (p.epsilon) out << *p.epsilon;
    out << '\n';
  }
  out.precision(prec);
}

}  // namespace rudd
