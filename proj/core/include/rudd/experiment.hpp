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
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rudd/config.hpp"
#include "rudd/numerics.hpp"

namespace rudd {

/// One evaluation of the error metric. `epsilon` is empty when the point
/// failed; `error` then holds the reason.
struct PointResult {
  double x = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::string error;
};

struct AggregatePoint {
  double x = 0.0;
  double epsilon = 0.0;  ///< geometric mean over the successful seeds
  int count = 0;
  bool in_fit = false;
};

struct SeriesReport {
  std::string name;
  std::string kind;
  std::string sweep;  ///< empty for diagnostic kinds
  std::vector<PointResult> points;
  std::vector<AggregatePoint> aggregated;
  std::optional<LogLogFit> fit;
  /// The fit passed r² ≥ 0.98 on at least three points.
  bool slope_valid = false;
  std::string fit_note;
  std::vector<std::pair<std::string, double>> metrics;

  std::optional<double> metric(const std::string& name) const;
};

struct Check {
  std::string series;
  std::string name;
  double value = 0.0;
  std::string expectation;
  bool passed = false;
};

struct ScalingReport {
  std::string config_name;
  std::uint64_t config_hash = 0;
  std::string version;
  double wall_time = 0.0;
  std::vector<SeriesReport> series;
  std::vector<Check> checks;

  bool passed() const;
  const SeriesReport* find(const std::string& name) const;
};

struct RunOptions {
  /// 0 reads RUDD_WORKERS, falling back to the hardware concurrency.
  unsigned workers = 0;
};

unsigned default_workers();

/// Runs every series of `config`. Failures of single points are recorded in
/// the report instead of aborting the run.
ScalingReport run(const ExperimentConfig& config, const RunOptions& opts = {});

/// Geometric means per x and the log-log fit over the fit window: the largest
/// x is dropped, as is every point below 10³·floor.
void aggregate_and_fit(SeriesReport& series, double floor);

struct ComparisonRow {
  double x = 0.0;
  double a = 0.0;
  double b = 0.0;
  double ratio = 0.0;  ///< a / b
};

struct Comparison {
  std::vector<ComparisonRow> rows;
  /// Over points paired by (x, seed): a < b counts as a win.
  int wins = 0;
  int losses = 0;
};

/// Throws InvalidArgument when the aggregated grids differ.
Comparison compare(const SeriesReport& a, const SeriesReport& b);
/// Series are matched by name; every series of `a` must exist in `b`.
std::vector<std::pair<std::string, Comparison>> compare(const ScalingReport& a, const ScalingReport& b);

/// Columns x, seed, epsilon; failed points leave epsilon empty.
void write_csv(const SeriesReport& series, std::ostream& out);

}  // namespace rudd
