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

// Acceptance runner: `rudd_acceptance N` runs configs/cNN_*.cfg and checks
// the report against pinned tolerances, independently of the checks the
// harness itself evaluates. Prints one PASS/FAIL line per criterion.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rudd/experiment.hpp"

namespace fs = std::filesystem;
using namespace rudd;

namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail << (cond ? "" : "!") << what << "; ";
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// Ordinary least squares on (log x, log eps) over the points the harness
// marked as in the fit window.
std::optional<LogLogFit> refit(const SeriesReport& s) {
  std::vector<double> lx, ly;
  for (const auto& a : s.aggregated) {
    if (!a.in_fit || !(a.epsilon > 0.0)) continue;
    lx.push_back(std::log(a.x));
    ly.push_back(std::log(a.epsilon));
  }
  const std::size_t n = lx.size();
  if (n < 3) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  LogLogFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0 ? sxy * sxy / (sxx * syy) : 1.0;
  return f;
}

const SeriesReport* series(const ScalingReport& r, Verdict& v, const std::string& name) {
  const SeriesReport* s = r.find(name);
  v.require(s != nullptr, "series " + name + " present");
  return s;
}

void slope_near(const ScalingReport& r, Verdict& v, const std::string& name, double expect, double tol) {
  const SeriesReport* s = series(r, v, name);
  if (!s) return;
  const auto f = refit(*s);
  if (!f) {
    v.require(false, name + " slope: fewer than 3 points in fit window");
    return;
  }
  v.require(std::abs(f->slope - expect) <= tol && f->r2 >= 0.98,
            name + " slope " + fmt(f->slope) + " (r2 " + fmt(f->r2) + ") vs " + fmt(expect) + "+/-" + fmt(tol));
}

void metric_below(const ScalingReport& r, Verdict& v, const std::string& name, const std::string& metric,
                  double limit) {
  const SeriesReport* s = series(r, v, name);
  if (!s) return;
  const auto m = s->metric(metric);
  v.require(m && *m <= limit, name + " " + metric + " " + (m ? fmt(*m) : "missing") + " <= " + fmt(limit));
}

void runtime(const ScalingReport& r, Verdict& v, double limit) {
  v.require(r.wall_time <= limit, "wall " + fmt(r.wall_time) + "s <= " + fmt(limit) + "s");
}

void no_failed_points(const ScalingReport& r, Verdict& v) {
  int failed = 0;
  for (const auto& s : r.series)
    for (const auto& p : s.points) failed += p.epsilon ? 0 : 1;
  v.require(failed == 0, std::to_string(failed) + " failed points");
}

fs::path find_config(int n) {
  char prefix[8];
  std::snprintf(prefix, sizeof prefix, "c%02d_", n);
  for (const auto& e : fs::directory_iterator(RUDD_CONFIG_DIR))
    if (e.path().filename().string().rfind(prefix, 0) == 0) return e.path();
  throw std::runtime_error(std::string("no config ") + prefix + "* in " RUDD_CONFIG_DIR);
}

void evaluate(int n, const ScalingReport& r, Verdict& v) {
  switch (n) {
    case 1:
      for (const char* s : {"pi", "pi-short", "two-pi", "two-pi-short"}) metric_below(r, v, s, "max_normalized", 1e-4);
      runtime(r, v, 1.0);
      break;
    case 2:
      metric_below(r, v, "pi", "recovery", 1e-4);
      metric_below(r, v, "two-pi", "recovery", 1e-4);
      runtime(r, v, 30.0);
      break;
    case 3:
      for (int k = 1; k <= 4; ++k) slope_near(r, v, "n" + std::to_string(k), k + 1, 0.2);
      no_failed_points(r, v);
      runtime(r, v, 60.0);
      break;
    case 4:
      for (int k = 1; k <= 3; ++k) slope_near(r, v, "n" + std::to_string(k), k + 1, 0.2);
      no_failed_points(r, v);
      runtime(r, v, 60.0);
      break;
    case 5:
      slope_near(r, v, "naive", 1.0, 0.15);
      slope_near(r, v, "shaped", 3.0, 0.2);
      slope_near(r, v, "shaped-z", 3.0, 0.2);
      runtime(r, v, 120.0);
      break;
    case 6:
      slope_near(r, v, "width", 3.0, 0.3);
      slope_near(r, v, "coupling", 4.0, 0.3);
      no_failed_points(r, v);
      runtime(r, v, 300.0);
      break;
    case 7: {
      const SeriesReport* a = series(r, v, "rudd-vs-naive.rudd");
      const SeriesReport* b = series(r, v, "rudd-vs-naive.naive");
      if (!a || !b) break;
      std::map<std::pair<double, std::uint64_t>, double> naive;
      for (const auto& p : b->points)
        if (p.epsilon) naive[{p.x, p.seed}] = *p.epsilon;
      int wins = 0, pairs = 0;
      for (const auto& p : a->points) {
        const auto it = naive.find({p.x, p.seed});
        if (!p.epsilon || it == naive.end()) continue;
        ++pairs;
        wins += *p.epsilon < it->second ? 1 : 0;
      }
      v.require(pairs == 10, std::to_string(pairs) + " paired seeds");
      v.require(wins >= 9, std::to_string(wins) + " wins >= 9");
      runtime(r, v, 120.0);
      break;
    }
    case 8:
      metric_below(r, v, "cpmg", "cycle_duration_error", 1e-12);
      metric_below(r, v, "cpmg", "single_cycle_mismatch", 1e-12);
      no_failed_points(r, v);
      break;
    case 9:
      for (const char* f : {"udd", "rudd"})
        for (int k : {1, 3, 6}) {
          const std::string name = std::string(f) + "-n" + std::to_string(k);
          metric_below(r, v, name, "max_odd_error", 1e-10);
          metric_below(r, v, name, "max_even", 1e-12);
        }
      break;
    case 10:
      metric_below(r, v, "hahn-static", "distinguishability", 1e-12);
      metric_below(r, v, "zero-coupling", "max_error", 1e-10);
      break;
    case 11: {
      const SeriesReport* s = series(r, v, "qrudd");
      if (!s) break;
      const auto f = refit(*s);
      v.require(f && f->slope >= 2.7 && f->r2 >= 0.98,
                "qrudd slope " + (f ? fmt(f->slope) : std::string("n/a")) + " >= 2.7");
      no_failed_points(r, v);
      runtime(r, v, 300.0);
      break;
    }
    default:
      throw std::runtime_error("criterion must be 1..11");
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: rudd_acceptance N\n");
    return 2;
  }
  const int n = std::atoi(argv[1]);
  Verdict v;
  try {
    const ScalingReport r = run(load_config(find_config(n).string()));
    evaluate(n, r, v);
    v.require(r.passed(), "harness checks");
  } catch (const std::exception& e) {
    v.require(false, std::string("error: ") + e.what());
  }
  std::printf("criterion %d: %s  %s\n", n, v.ok ? "PASS" : "FAIL", v.detail.str().c_str());
  return v.ok ? 0 : 1;
}
