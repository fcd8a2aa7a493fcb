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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rudd/bath.hpp"
#include "rudd/error.hpp"
#include "rudd/propagation.hpp"
#include "rudd/schedule.hpp"

namespace rudd {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind {
  udd_ideal,
  rudd_noise_off,
  pulse_order,
  rudd_shaped,
  rudd_vs_naive,
  longitudinal,
  cpmg,
  qrudd,
  eta_residual,
  shape_solve,
  fourier,
  exact_zero,
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);
/// Kinds that sweep a variable and fit a slope; the others only compute metrics.
bool is_sweep(ExperimentKind kind);

enum class SweepVariable {
  gamma_t,         ///< γT, with γ = x/T
  gamma_tau,       ///< γτ_p for single-pulse kinds, with γ = x/τ_p
  theta_fraction,  ///< ϑ_p as a fraction of π/(2N+2)
};

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

/// One sweep (or one diagnostic) inside an experiment. Every field can be set
/// at the top level of the file and overridden inside a [series name] block.
struct SeriesConfig {
  std::string name;
  ExperimentKind kind = ExperimentKind::udd_ideal;

  int n = 1;
  int n_z = 0;
  int n_perp = 0;
  double total = 1.0;
  double tau_p = 1.0;
  Axis axis = Axis::y;

  SweepVariable sweep = SweepVariable::gamma_t;
  std::vector<double> grid;
  /// Value of γT (or γτ_p) when it is not the swept variable.
  double gamma_t = 0.1;
  /// Value of ϑ_p/(π/(2N+2)) when it is not the swept variable.
  double theta_fraction = 0.5;
  double theta_fraction_inner = 0.0;

  BathSpec bath;
  std::vector<std::uint64_t> seeds{0};

  PropagateOptions propagate;
  /// Points whose aggregate falls below 10³·floor are left out of the fit.
  /// Defaults to the integrator tolerance, or 1e-16 for kinds that only
  /// multiply exact exponentials.
  std::optional<double> floor;

  PulseFamily pulses = PulseFamily::shaped;
  DeviationVariant::Kind variant = DeviationVariant::Kind::zero;
  double tau_s = 0.5;

  /// Diagnostic-kind parameters.
  double theta = 0.0;  ///< rotation angle for eta-residual / shape-solve
  ScheduleFamily family = ScheduleFamily::udd;
  int harmonics = 9;
  std::string zero_case = "hahn-static";

  std::optional<double> expect_slope;
  double slope_tol = 0.2;
  std::optional<double> min_slope;
  std::optional<int> min_wins;
  std::map<std::string, double> limits;  ///< metric name → upper bound
  std::optional<double> max_seconds;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string output_csv;
  std::string output_json;
  std::vector<SeriesConfig> series;
  /// FNV-1a of the normalized key = value text.
  std::uint64_t hash = 0;
};

class ConfigError : public InvalidArgument {
 public:
  ConfigError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the key = value format. Lines starting with # are comments;
/// `[series NAME]` opens a block whose keys override the top-level ones.
/// A file without blocks describes a single series named after the file.
ExperimentConfig parse_config(std::string_view text, std::string_view default_name = "experiment");
ExperimentConfig load_config(const std::string& path);

/// Grid syntax: `a, b, c`, `logspace(lo, hi, k)` or `linspace(lo, hi, k)`.
std::vector<double> parse_grid(std::string_view text);

std::uint64_t fnv1a(std::string_view text);

}  // namespace rudd
