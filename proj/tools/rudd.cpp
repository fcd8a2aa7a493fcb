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

// rudd: command-line driver for schedules, pulse shapes, single simulations and
// scaling sweeps.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rudd/bath.hpp"
#include "rudd/channel.hpp"
#include "rudd/config.hpp"
#include "rudd/experiment.hpp"
#include "rudd/propagation.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"
#include "rudd/serialization.hpp"

namespace fs = std::filesystem;
using namespace rudd;

namespace {

double parse_angle(const std::string& s) {
  if (s == "pi") return std::numbers::pi;
  if (s == "2pi") return 2.0 * std::numbers::pi;
  return std::stod(s);
}

struct ScheduleArgs {
  std::string family = "rudd";
  int n = 3;
  int n_z = 2;
  int n_perp = 2;
  double total = 1.0;
  double theta_fraction = 0.5;
  double theta_fraction_inner = 0.5;
  std::string axis = "y";
};

void add_schedule_options(CLI::App* app, ScheduleArgs& a) {
  app->add_option("--family", a.family, "udd | rudd | naive-udd | cpmg-rudd | qrudd")->capture_default_str();
  app->add_option("-n,--n", a.n, "pulse count N (cycles for cpmg-rudd)")->capture_default_str();
  app->add_option("--n-z", a.n_z, "inner pulse count (qrudd)")->capture_default_str();
  app->add_option("--n-perp", a.n_perp, "outer pulse count (qrudd)")->capture_default_str();
  app->add_option("-T,--total", a.total, "total duration")->capture_default_str();
  app->add_option("--theta-fraction", a.theta_fraction, "pulse width as a fraction of pi/(2N+2)")
      ->capture_default_str();
  app->add_option("--theta-fraction-inner", a.theta_fraction_inner, "inner width fraction (qrudd)")
      ->capture_default_str();
  app->add_option("--axis", a.axis, "pulse axis x | y | z")->capture_default_str();
}

Schedule build_schedule(const ScheduleArgs& a) {
  const Axis axis = parse_axis(a.axis);
  switch (parse_schedule_family(a.family)) {
    case ScheduleFamily::udd:
      return udd_schedule(a.n, a.total, axis);
    case ScheduleFamily::rudd:
      return rudd_schedule(a.n, a.total, ThetaPulseWidth::fraction_of_bound(a.theta_fraction, a.n), axis);
    case ScheduleFamily::naive_udd:
      return naive_udd_schedule(a.n, a.total, ThetaPulseWidth::fraction_of_bound(a.theta_fraction, a.n), axis);
    case ScheduleFamily::cpmg_rudd:
      return cpmg_rudd_schedule(a.n, a.total / (4.0 * a.n), ThetaPulseWidth::fraction_of_bound(a.theta_fraction, 2),
                                axis);
    case ScheduleFamily::qrudd:
      return qrudd_schedule(a.n_z, a.n_perp, a.total,
                            a.n_z > 0 ? ThetaPulseWidth::fraction_of_bound(a.theta_fraction_inner, a.n_z)
                                      : ThetaPulseWidth(0.0),
                            ThetaPulseWidth::fraction_of_bound(a.theta_fraction, a.n_perp));
    case ScheduleFamily::custom:
      break;
  }
  throw InvalidArgument("cannot build a custom schedule; load it from JSON instead");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text << '\n';
  } else {
    write_file(out_path, text);
  }
}

struct PulseArgs {
  std::string theta = "pi";
  double tau = 1.0;
  std::string file;
  std::vector<double> coeffs;
  std::string axis = "y";
};

void add_pulse_options(CLI::App* app, PulseArgs& a) {
  app->add_option("--theta", a.theta, "rotation angle: pi, 2pi or a number")->capture_default_str();
  app->add_option("--tau", a.tau, "pulse duration")->capture_default_str();
  app->add_option("--file", a.file, "pulse JSON written by `pulse solve`");
  app->add_option("--coeffs", a.coeffs, "a b c in units of 1/tau (default: tabulated shape)")->expected(3);
  app->add_option("--axis", a.axis, "x | y | z")->capture_default_str();
}

PulseShape load_pulse(const PulseArgs& a) {
  if (!a.file.empty()) return pulse_from_json(read_file(a.file));
  const double theta = parse_angle(a.theta);
  const Axis axis = parse_axis(a.axis);
  if (!a.coeffs.empty()) return PulseShape::shaped(theta, a.tau, {a.coeffs[0], a.coeffs[1], a.coeffs[2]}, axis);
  return tabulated_pulse(theta, a.tau, axis);
}

void print_report(const ScalingReport& r, std::ostream& os) {
  char line[256];
  os << "config " << r.config_name << "  hash " << std::hex << r.config_hash << std::dec << "  version " << r.version
     << "  wall " << r.wall_time << " s\n";
  for (const SeriesReport& s : r.series) {
    os << "\n[" << s.name << "] " << s.kind;
    if (!s.sweep.empty()) os << "  sweep " << s.sweep;
    os << '\n';
    if (!s.sweep.empty()) {
      os << "  x              epsilon (geo)   n  fit\n";
      for (const AggregatePoint& a : s.aggregated) {
        std::snprintf(line, sizeof line, "  %-14.6g %-15.6e %-2d %s\n", a.x, a.epsilon, a.count,
                      a.in_fit ? "*" : "");
        os << line;
      }
      int failed = 0;
      for (const PointResult& p : s.points) failed += p.epsilon ? 0 : 1;
      if (failed > 0) os << "  " << failed << " point(s) failed\n";
      if (s.fit) {
        std::snprintf(line, sizeof line, "  slope %.4f  r2 %.5f%s\n", s.fit->slope, s.fit->r2,
                      s.slope_valid ? "" : "  (flagged)");
        os << line;
      }
    }
    for (const auto& [k, v] : s.metrics) {
      std::snprintf(line, sizeof line, "  %-30s %.10g\n", k.c_str(), v);
      os << line;
    }
    if (!s.fit_note.empty()) os << "  note: " << s.fit_note << '\n';
  }
  os << '\n';
  for (const Check& c : r.checks) {
    std::snprintf(line, sizeof line, "%s  %-24s %-12s %-14.6g %s\n", c.passed ? "PASS" : "FAIL", c.series.c_str(),
                  c.name.c_str(), c.value, c.expectation.c_str());
    os << line;
  }
}

std::string series_file(const std::string& base, const std::string& series, bool many) {
  if (!many) return base;
  fs::path p(base);
  std::string tag = series;
  for (char& ch : tag) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_' && ch != '.') ch = '_';
  }
  return (p.parent_path() / (p.stem().string() + "." + tag + p.extension().string())).string();
}

int cmd_scaling_run(const std::string& config_path, const std::string& out_dir) {
  const ExperimentConfig cfg = load_config(config_path);
  const ScalingReport report = run(cfg);
  print_report(report, std::cout);
  const fs::path dir(out_dir);
  if (!cfg.output_csv.empty()) {
    std::size_t sweeps = 0;
    for (const SeriesReport& s : report.series) sweeps += s.sweep.empty() ? 0 : 1;
    for (const SeriesReport& s : report.series) {
      if (s.sweep.empty()) continue;
      const fs::path path = dir / series_file(cfg.output_csv, s.name, sweeps > 1);
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      std::ostringstream os;
      write_csv(s, os);
      write_file(path.string(), os.str());
    }
  }
  if (!cfg.output_json.empty()) {
    const fs::path path = dir / cfg.output_json;
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_file(path.string(), to_json(report));
  }
  return report.passed() ? 0 : 1;
}

int cmd_scaling_compare(const std::string& a_path, const std::string& b_path) {
  const ScalingReport a = report_from_json(read_file(a_path));
  const ScalingReport b = report_from_json(read_file(b_path));
  for (const auto& [name, cmp] : compare(a, b)) {
    std::cout << "[" << name << "]  wins " << cmp.wins << "  losses " << cmp.losses << '\n';
    char line[160];
    for (const ComparisonRow& r : cmp.rows) {
      std::snprintf(line, sizeof line, "  %-14.6g %-14.6e %-14.6e %.6g\n", r.x, r.a, r.b, r.ratio);
      std::cout << line;
    }
  }
  return 0;
}

struct SimulateArgs {
  ScheduleArgs schedule;
  std::string schedule_file;
  std::string pulses = "shaped";
  std::string bath = "dephasing";
  int dim_b = 4;
  double gamma_t = 0.1;
  std::uint64_t seed = 0;
  double tol = 1e-12;
};

int cmd_simulate(const SimulateArgs& a) {
  const Schedule s = a.schedule_file.empty() ? build_schedule(a.schedule) : schedule_from_json(read_file(a.schedule_file));
  BathSpec spec;
  spec.kind = parse_bath_kind(a.bath);
  spec.dim_b = a.dim_b;
  spec.gamma = a.gamma_t / s.total();
  spec.seed = a.seed;
  const Bath bath = generate(spec);

  std::cout.precision(10);
  std::cout << "family " << to_string(s.family()) << "  N " << s.n() << "  T " << s.total() << "  gamma " << spec.gamma
            << "  seed " << a.seed << '\n';
  if (a.pulses == "ideal" || a.pulses == "noise-off") {
    const auto* db = std::get_if<DephasingBath>(&bath);
    if (!db) throw InvalidArgument("simulate: ideal and noise-off modes need a dephasing bath");
    const auto cp = conditioned_propagators(s, *db, a.pulses == "ideal" ? PulseMode::ideal : PulseMode::noise_off);
    std::cout << "distinguishability " << distinguishability(cp) << '\n';
    return 0;
  }
  PropagateOptions opts;
  opts.tol = a.tol;
  const PulseFamily family = a.pulses == "naive" ? PulseFamily::naive : PulseFamily::shaped;
  if (a.pulses != "naive" && a.pulses != "shaped") throw InvalidArgument("simulate: unknown pulse family " + a.pulses);
  const UnitaryMatrix u = full_propagator(s, pulse_train(s, family), bath, opts);
  const ChannelError e = spin_channel_error(u, ideal_rotation(s), maximally_mixed_state(spec.dim_b));
  std::cout << "channel_error " << e.epsilon << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical decoupling schedules with finite shaped pulses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(RUDD_VERSION_STRING));

  // schedule
  auto* schedule = app.add_subcommand("schedule", "build, validate and export pulse schedules");
  schedule->require_subcommand(1);
  ScheduleArgs build_args;
  std::string build_out;
  auto* build = schedule->add_subcommand("build", "construct a schedule and print it as JSON");
  add_schedule_options(build, build_args);
  build->add_option("-o,--output", build_out, "output file (default stdout)");

  std::string validate_file;
  auto* validate_cmd = schedule->add_subcommand("validate", "check a schedule JSON for invariant violations");
  validate_cmd->add_option("file", validate_file)->required();

  std::string export_file, export_format = "csv";
  int export_fourier = 0;
  auto* export_cmd = schedule->add_subcommand("export", "export segments as CSV or sine coefficients");
  export_cmd->add_option("file", export_file)->required();
  export_cmd->add_option("--format", export_format, "csv | json")->capture_default_str();
  export_cmd->add_option("--fourier", export_fourier, "print b_l for l = 1..L instead of segments");

  // pulse
  auto* pulse = app.add_subcommand("pulse", "solve, evaluate and render shaped pulses");
  pulse->require_subcommand(1);
  std::string solve_theta = "pi", solve_out;
  double solve_tau = 1.0;
  bool solve_all = false;
  auto* solve = pulse->add_subcommand("solve", "find coefficients that cancel all first and second order terms");
  solve->add_option("--theta", solve_theta, "pi or 2pi")->capture_default_str();
  solve->add_option("--tau", solve_tau, "pulse duration")->capture_default_str();
  solve->add_flag("--all", solve_all, "list every root found");
  solve->add_option("-o,--output", solve_out, "write the selected shape as JSON");

  PulseArgs eta_args;
  auto* eta = pulse->add_subcommand("eta", "print the five residual integrals of a pulse");
  add_pulse_options(eta, eta_args);

  PulseArgs render_args;
  int render_samples = 201;
  auto* render = pulse->add_subcommand("render", "sample v(t) and psi(t) as CSV");
  add_pulse_options(render, render_args);
  render->add_option("--samples", render_samples)->capture_default_str()->check(CLI::Range(2, 1000000));

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "propagate one schedule against one random bath");
  add_schedule_options(simulate, sim.schedule);
  simulate->add_option("--schedule", sim.schedule_file, "schedule JSON (overrides the family options)");
  simulate->add_option("--pulses", sim.pulses, "shaped | naive | ideal | noise-off")->capture_default_str();
  simulate->add_option("--bath", sim.bath, "dephasing | general | static-scalar")->capture_default_str();
  simulate->add_option("--dim-b", sim.dim_b)->capture_default_str();
  simulate->add_option("--gamma-t", sim.gamma_t, "coupling strength times T")->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--tol", sim.tol, "propagator tolerance")->capture_default_str();

  // scaling
  auto* scaling = app.add_subcommand("scaling", "run sweeps from config files and compare reports");
  scaling->require_subcommand(1);
  std::string run_config, run_out = ".";
  auto* run_cmd = scaling->add_subcommand("run", "run a config; exit status reflects its checks");
  run_cmd->add_option("config", run_config)->required();
  run_cmd->add_option("--out-dir", run_out, "directory for CSV and JSON outputs")->capture_default_str();
  std::string cmp_a, cmp_b;
  auto* cmp = scaling->add_subcommand("compare", "ratio table of two JSON reports");
  cmp->add_option("a", cmp_a)->required();
  cmp->add_option("b", cmp_b)->required();

  // report
  auto* report = app.add_subcommand("report", "inspect JSON reports");
  report->require_subcommand(1);
  std::string show_file;
  auto* show = report->add_subcommand("show", "print a report summary");
  show->add_option("file", show_file)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      emit(build_out, to_json(build_schedule(build_args)));
      return 0;
    }
    if (validate_cmd->parsed()) {
      const Schedule s = schedule_from_json(read_file(validate_file));
      const auto diags = validate(s);
      for (const Diagnostic& d : diags) std::cout << d.code << ": " << d.message << '\n';
      if (diags.empty()) std::cout << "ok\n";
      return diags.empty() ? 0 : 1;
    }
    if (export_cmd->parsed()) {
      const Schedule s = schedule_from_json(read_file(export_file));
      std::cout.precision(17);
      if (export_fourier > 0) {
        std::cout << "l,b_l\n";
        for (int l = 1; l <= export_fourier; ++l) std::cout << l << ',' << fourier_coefficient(s, l) << '\n';
      } else if (export_format == "json") {
        std::cout << to_json(s) << '\n';
      } else if (export_format == "csv") {
        std::cout << "kind,start,end,F,theta,axis\n";
        for (const Segment& seg : s.segments()) {
          std::cout << (seg.is_pulse() ? "pulse" : "free") << ',' << seg.start << ',' << seg.end << ',' << seg.sign
                    << ',' << seg.theta << ',' << to_string(seg.axis) << '\n';
        }
      } else {
        throw InvalidArgument("unknown export format '" + export_format + "'");
      }
      return 0;
    }
    if (solve->parsed()) {
      const ShapeSolution sol = solve_shape(parse_angle(solve_theta), solve_tau);
      std::printf("%zu distinct roots\n", sol.roots.size());
      if (solve_all) {
        std::printf("%-14s %-14s %-14s %s\n", "a", "b", "c", "peak*tau");
        for (const PulseShape& r : sol.roots) {
          std::printf("%-14.9f %-14.9f %-14.9f %.4f\n", r.coefficients().a, r.coefficients().b, r.coefficients().c,
                      r.peak_amplitude() * solve_tau);
        }
      }
      const PulseCoefficients& b = sol.best.coefficients();
      std::printf("selected (min peak): a = %.9f  b = %.9f  c = %.9f  peak*tau = %.4f\n", b.a, b.b, b.c,
                  sol.best.peak_amplitude() * solve_tau);
      if (!solve_out.empty()) write_file(solve_out, to_json(sol.best));
      return 0;
    }
    if (eta->parsed()) {
      const PulseShape p = load_pulse(eta_args);
      const EtaVector e = eta_integrals(p);
      std::printf("eta11 %.3e\neta12 %.3e\neta21 %.3e\neta22 %.3e\neta23 %.3e\nmax_normalized %.3e\n", e.eta11,
                  e.eta12, e.eta21, e.eta22, e.eta23, e.max_normalized(p.tau_p()));
      return 0;
    }
    if (render->parsed()) {
      const PulseShape p = load_pulse(render_args);
      std::printf("t,v,psi\n");
      for (int i = 0; i < render_samples; ++i) {
        const double t = p.tau_p() * i / (render_samples - 1);
        std::printf("%.12g,%.12g,%.12g\n", t, p.amplitude(t), p.psi(t));
      }
      return 0;
    }
    if (simulate->parsed()) return cmd_simulate(sim);
    if (run_cmd->parsed()) return cmd_scaling_run(run_config, run_out);
    if (cmp->parsed()) return cmd_scaling_compare(cmp_a, cmp_b);
    if (show->parsed()) {
      print_report(report_from_json(read_file(show_file)), std::cout);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "rudd: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
