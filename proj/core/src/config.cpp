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

#include "rudd/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

namespace rudd {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 12> kKindNames{{
    {ExperimentKind::udd_ideal, "udd-ideal"},
    {ExperimentKind::rudd_noise_off, "rudd-noise-off"},
    {ExperimentKind::pulse_order, "pulse-order"},
    {ExperimentKind::rudd_shaped, "rudd-shaped"},
    {ExperimentKind::rudd_vs_naive, "rudd-vs-naive"},
    {ExperimentKind::longitudinal, "longitudinal"},
    {ExperimentKind::cpmg, "cpmg"},
    {ExperimentKind::qrudd, "qrudd"},
    {ExperimentKind::eta_residual, "eta-residual"},
    {ExperimentKind::shape_solve, "shape-solve"},
    {ExperimentKind::fourier, "fourier"},
    {ExperimentKind::exact_zero, "exact-zero"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    out.push_back(trim(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

double parse_double(std::string_view s) {
  s = trim(s);
  if (s == "pi") return std::numbers::pi;
  if (s == "2pi") return 2.0 * std::numbers::pi;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidArgument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

long long parse_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

int parse_int(std::string_view s) { return static_cast<int>(parse_integer(s)); }

std::vector<std::uint64_t> parse_seeds(std::string_view s) {
  std::vector<std::uint64_t> out;
  if (const auto dots = s.find(".."); dots != std::string_view::npos) {
    const long long lo = parse_integer(s.substr(0, dots));
    const long long hi = parse_integer(s.substr(dots + 2));
    if (lo < 0 || hi < lo) throw InvalidArgument("seed range must be lo..hi with 0 <= lo <= hi");
    for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<std::uint64_t>(v));
    return out;
  }
  for (auto part : split(s, ',')) {
    const long long v = parse_integer(part);
    if (v < 0) throw InvalidArgument("seeds must be non-negative");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

PulseFamily parse_pulse_family(std::string_view s) {
  if (s == "shaped") return PulseFamily::shaped;
  if (s == "naive" || s == "constant") return PulseFamily::naive;
  throw InvalidArgument("unknown pulse family '" + std::string(s) + "'");
}

DeviationVariant::Kind parse_variant(std::string_view s) {
  if (s == "zero") return DeviationVariant::Kind::zero;
  if (s == "ideal-at") return DeviationVariant::Kind::ideal_at;
  if (s == "longitudinal") return DeviationVariant::Kind::longitudinal;
  throw InvalidArgument("unknown deviation variant '" + std::string(s) + "'");
}

Integrator parse_integrator(std::string_view s) {
  if (s == "midpoint") return Integrator::midpoint;
  if (s == "magnus4") return Integrator::magnus4;
  if (s == "magnus6") return Integrator::magnus6;
  throw InvalidArgument("unknown integrator '" + std::string(s) + "'");
}

using Entries = std::vector<std::pair<std::string, std::string>>;

void apply(SeriesConfig& c, const std::string& key, const std::string& value) {
  if (key == "kind") c.kind = parse_experiment_kind(value);
  else if (key == "n") c.n = parse_int(value);
  else if (key == "n_z") c.n_z = parse_int(value);
  else if (key == "n_perp") c.n_perp = parse_int(value);
  else if (key == "total") c.total = parse_double(value);
  else if (key == "tau_p") c.tau_p = parse_double(value);
  else if (key == "axis") c.axis = parse_axis(value);
  else if (key == "sweep") c.sweep = parse_sweep_variable(value);
  else if (key == "grid") c.grid = parse_grid(value);
  else if (key == "gamma_t") c.gamma_t = parse_double(value);
  else if (key == "theta_fraction") c.theta_fraction = parse_double(value);
  else if (key == "theta_fraction_inner") c.theta_fraction_inner = parse_double(value);
  else if (key == "bath") c.bath.kind = parse_bath_kind(value);
  else if (key == "dim_b") c.bath.dim_b = parse_int(value);
  else if (key == "weights") {
    c.bath.weights.clear();
    for (auto w : split(value, ',')) c.bath.weights.push_back(parse_double(w));
  } else if (key == "seeds") c.seeds = parse_seeds(value);
  else if (key == "tol") c.propagate.tol = parse_double(value);
  else if (key == "integrator") c.propagate.integrator = parse_integrator(value);
  else if (key == "initial_steps") c.propagate.initial_steps = parse_int(value);
  else if (key == "max_refinements") c.propagate.max_refinements = parse_int(value);
  else if (key == "floor") c.floor = parse_double(value);
  else if (key == "pulses") c.pulses = parse_pulse_family(value);
  else if (key == "variant") c.variant = parse_variant(value);
  else if (key == "tau_s") c.tau_s = parse_double(value);
  else if (key == "theta") c.theta = parse_double(value);
  else if (key == "family") c.family = parse_schedule_family(value);
  else if (key == "harmonics") c.harmonics = parse_int(value);
  else if (key == "case") c.zero_case = value;
  else if (key == "expect_slope") c.expect_slope = parse_double(value);
  else if (key == "slope_tol") c.slope_tol = parse_double(value);
  else if (key == "min_slope") c.min_slope = parse_double(value);
  else if (key == "min_wins") c.min_wins = parse_int(value);
  else if (key == "max_seconds") c.max_seconds = parse_double(value);
  else if (key.starts_with("limit.") && key.size() > 6) c.limits[key.substr(6)] = parse_double(value);
  else throw InvalidArgument("unknown key '" + key + "'");
}

void check_series(const SeriesConfig& c) {
  const std::string where = "series '" + c.name + "': ";
  if (c.seeds.empty()) throw InvalidArgument(where + "seeds must not be empty");
  if (!(c.total > 0.0)) throw InvalidArgument(where + "total must be positive");
  if (!(c.tau_p > 0.0)) throw InvalidArgument(where + "tau_p must be positive");
  if (!is_sweep(c.kind)) return;
  const std::size_t min_points = c.kind == ExperimentKind::rudd_vs_naive ? 1 : 3;
  if (c.grid.size() < min_points) {
    throw InvalidArgument(where + "grid needs at least " + std::to_string(min_points) + " points");
  }
  for (std::size_t i = 0; i < c.grid.size(); ++i) {
    if (!(c.grid[i] > 0.0)) throw InvalidArgument(where + "grid values must be positive");
    if (i > 0 && !(c.grid[i] > c.grid[i - 1])) throw InvalidArgument(where + "grid must be strictly increasing");
  }
}

std::string normalized(const Entries& entries) {
  Entries sorted = entries;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (const auto& [k, v] : sorted) out += k + "=" + v + "\n";
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw InvalidArgument("unknown experiment kind '" + std::string(name) + "'");
}

bool is_sweep(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::eta_residual:
    case ExperimentKind::shape_solve:
    case ExperimentKind::fourier:
    case ExperimentKind::exact_zero:
      return false;
    default:
      return true;
  }
}

std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::gamma_t: return "gamma_t";
    case SweepVariable::gamma_tau: return "gamma_tau";
    case SweepVariable::theta_fraction: return "theta_fraction";
  }
  return "unknown";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "gamma_t") return SweepVariable::gamma_t;
  if (name == "gamma_tau") return SweepVariable::gamma_tau;
  if (name == "theta_fraction") return SweepVariable::theta_fraction;
  throw InvalidArgument("unknown sweep variable '" + std::string(name) + "'");
}

ConfigError::ConfigError(int line, const std::string& what)
    : InvalidArgument("config line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<double> parse_grid(std::string_view text) {
  text = trim(text);
  const bool log = text.starts_with("logspace(");
  const bool lin = text.starts_with("linspace(");
  if (log || lin) {
    if (!text.ends_with(")")) throw InvalidArgument("grid: missing ')'");
    const auto args = split(text.substr(9, text.size() - 10), ',');
    if (args.size() != 3) throw InvalidArgument("grid: expected (lo, hi, count)");
    const double lo = parse_double(args[0]);
    const double hi = parse_double(args[1]);
    const int k = parse_int(args[2]);
    if (k < 2) throw InvalidArgument("grid: count must be at least 2");
    if (log && !(lo > 0.0 && hi > 0.0)) throw InvalidArgument("grid: logspace bounds must be positive");
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      const double f = static_cast<double>(i) / (k - 1);
      out[i] = log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
    // Pin the endpoints exactly.
    out.front() = lo;
    out.back() = hi;
    return out;
  }
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ExperimentConfig parse_config(std::string_view text, std::string_view default_name) {
  ExperimentConfig cfg;
  cfg.name = std::string(default_name);
  Entries top;
  std::vector<std::pair<std::string, Entries>> blocks;
  std::optional<int> version;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
      const std::string_view inner = trim(line.substr(1, line.size() - 2));
      if (!inner.starts_with("series")) throw ConfigError(line_no, "only [series NAME] sections are supported");
      const std::string name(trim(inner.substr(6)));
      if (name.empty()) throw ConfigError(line_no, "series needs a name");
      for (const auto& b : blocks) {
        if (b.first == name) throw ConfigError(line_no, "duplicate series '" + name + "'");
      }
      blocks.emplace_back(name, Entries{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError(line_no, "empty key or value");

    const bool file_level = key == "schema_version" || key == "name" || key == "output_csv" || key == "output_json";
    if (file_level && !blocks.empty()) throw ConfigError(line_no, "'" + key + "' must precede the first series");
    try {
      if (key == "schema_version") {
        version = parse_int(value);
      } else if (key == "name") {
        cfg.name = value;
      } else if (key == "output_csv") {
        cfg.output_csv = value;
      } else if (key == "output_json") {
        cfg.output_json = value;
      } else {
        // Validate eagerly so errors carry the line number.
        SeriesConfig probe;
        apply(probe, key, value);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ConfigError(line_no, e.what());
    }
    Entries& target = blocks.empty() ? top : blocks.back().second;
    auto it = std::find_if(target.begin(), target.end(), [&](const auto& kv) { return kv.first == key; });
    if (it != target.end()) throw ConfigError(line_no, "duplicate key '" + key + "'");
    target.emplace_back(key, value);
  }

  if (!version) throw InvalidArgument("config: schema_version is required");
  if (*version != kSchemaVersion) {
    throw InvalidArgument("config: unsupported schema_version " + std::to_string(*version) + " (expected " +
                          std::to_string(kSchemaVersion) + ")");
  }
  cfg.schema_version = *version;

  if (blocks.empty()) blocks.emplace_back(cfg.name, Entries{});
  std::string canon = normalized(top);
  for (const auto& [name, entries] : blocks) {
    SeriesConfig s;
    s.name = name;
    for (const auto& [k, v] : top) {
      if (k != "schema_version" && k != "name" && k != "output_csv" && k != "output_json") apply(s, k, v);
    }
    for (const auto& [k, v] : entries) apply(s, k, v);
    check_series(s);
    cfg.series.push_back(std::move(s));
    canon += "[" + name + "]\n" + normalized(entries);
  }
  cfg.hash = fnv1a(canon);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_config(ss.str(), stem);
}

}  // namespace rudd
