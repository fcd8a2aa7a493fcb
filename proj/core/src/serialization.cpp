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

#include "rudd/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace rudd {

namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

// Non-finite doubles are written as null and read back as NaN.
double number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string to_json(const Schedule& schedule) {
  Json segs = Json::array();
  for (const Segment& s : schedule.segments()) {
    segs.push_back({{"kind", s.is_pulse() ? "pulse" : "free"},
                    {"start", s.start},
                    {"end", s.end},
                    {"F", s.sign},
                    {"theta", s.theta},
                    {"axis", to_string(s.axis)}});
  }
  const Json j = {{"T", schedule.total()},
                  {"n", schedule.n()},
                  {"axis", to_string(schedule.axis())},
                  {"family", to_string(schedule.family())},
                  {"theta_p", schedule.theta_p()},
                  {"segments", segs}};
  return j.dump(2);
}

Schedule schedule_from_json(std::string_view text) {
  const Json j = parse(text, "schedule JSON");
  return guarded("schedule JSON", [&] {
    std::vector<Segment> segs;
    for (const Json& s : j.at("segments")) {
      const std::string kind = s.at("kind").get<std::string>();
      const double start = s.at("start").get<double>();
      const double end = s.at("end").get<double>();
      if (kind == "free") {
        segs.push_back(Segment::free_evolution(start, end, s.at("F").get<int>()));
      } else if (kind == "pulse") {
        segs.push_back(Segment::pulse(start, end, s.at("theta").get<double>(),
                                      parse_axis(s.at("axis").get<std::string>())));
      } else {
        throw InvalidArgument("schedule JSON: unknown segment kind '" + kind + "'");
      }
    }
    return Schedule(j.at("T").get<double>(), j.at("n").get<int>(), parse_axis(j.at("axis").get<std::string>()),
                    std::move(segs), parse_schedule_family(j.value("family", std::string("custom"))),
                    j.value("theta_p", 0.0));
  });
}

std::string to_json(const PulseShape& pulse) {
  const bool shaped = pulse.waveform() == PulseShape::Waveform::shaped;
  const Json j = {{"theta", pulse.theta()},
                  {"tau_p", pulse.tau_p()},
                  {"waveform", shaped ? "shaped" : "constant"},
                  {"a", pulse.coefficients().a},
                  {"b", pulse.coefficients().b},
                  {"c", pulse.coefficients().c},
                  {"axis", to_string(pulse.axis())}};
  return j.dump(2);
}

PulseShape pulse_from_json(std::string_view text) {
  const Json j = parse(text, "pulse JSON");
  return guarded("pulse JSON", [&] {
    const double theta = j.at("theta").get<double>();
    const double tau = j.at("tau_p").get<double>();
    const Axis axis = parse_axis(j.value("axis", std::string("y")));
    const std::string waveform = j.value("waveform", std::string("shaped"));
    if (waveform == "constant") return PulseShape::constant(theta, tau, axis);
    if (waveform != "shaped") throw InvalidArgument("pulse JSON: unknown waveform '" + waveform + "'");
    return PulseShape::shaped(theta, tau, {j.at("a").get<double>(), j.at("b").get<double>(), j.at("c").get<double>()},
                              axis);
  });
}

std::string to_json(const ScalingReport& report) {
  Json series = Json::array();
  for (const SeriesReport& s : report.series) {
    Json points = Json::array();
    for (const PointResult& p : s.points) {
      Json pj = {{"x", p.x}, {"seed", p.seed}, {"epsilon", p.epsilon ? Json(*p.epsilon) : Json(nullptr)}};
      if (!p.error.empty()) pj["error"] = p.error;
      points.push_back(std::move(pj));
    }
    Json agg = Json::array();
    for (const AggregatePoint& a : s.aggregated) {
      agg.push_back({{"x", a.x}, {"epsilon", a.epsilon}, {"count", a.count}, {"in_fit", a.in_fit}});
    }
    Json metrics = Json::object();
    for (const auto& [k, v] : s.metrics) metrics[k] = v;
    Json fit = nullptr;
    if (s.fit) fit = {{"slope", s.fit->slope}, {"intercept", s.fit->intercept}, {"r2", s.fit->r2}};
    series.push_back({{"name", s.name},
                      {"kind", s.kind},
                      {"sweep", s.sweep},
                      {"points", points},
                      {"aggregated", agg},
                      {"fit", fit},
                      {"slope_valid", s.slope_valid},
                      {"fit_note", s.fit_note},
                      {"metrics", metrics}});
  }
  Json checks = Json::array();
  for (const Check& c : report.checks) {
    checks.push_back({{"series", c.series},
                      {"name", c.name},
                      {"value", c.value},
                      {"expectation", c.expectation},
                      {"passed", c.passed}});
  }
  const Json j = {{"config", report.config_name},
                  {"config_hash", hex(report.config_hash)},
                  {"version", report.version},
                  {"wall_time", report.wall_time},
                  {"passed", report.passed()},
                  {"series", series},
                  {"checks", checks}};
  return j.dump(2);
}

ScalingReport report_from_json(std::string_view text) {
  const Json j = parse(text, "report JSON");
  return guarded("report JSON", [&] {
    ScalingReport r;
    r.config_name = j.at("config").get<std::string>();
    r.config_hash = std::stoull(j.at("config_hash").get<std::string>(), nullptr, 16);
    r.version = j.at("version").get<std::string>();
    r.wall_time = j.at("wall_time").get<double>();
    for (const Json& sj : j.at("series")) {
      SeriesReport s;
      s.name = sj.at("name").get<std::string>();
      s.kind = sj.at("kind").get<std::string>();
      s.sweep = sj.at("sweep").get<std::string>();
      for (const Json& pj : sj.at("points")) {
        PointResult p;
        p.x = pj.at("x").get<double>();
        p.seed = pj.at("seed").get<std::uint64_t>();
        if (!pj.at("epsilon").is_null()) p.epsilon = pj.at("epsilon").get<double>();
        p.error = pj.value("error", std::string());
        s.points.push_back(std::move(p));
      }
      for (const Json& aj : sj.at("aggregated")) {
        s.aggregated.push_back({aj.at("x").get<double>(), aj.at("epsilon").get<double>(), aj.at("count").get<int>(),
                                aj.at("in_fit").get<bool>()});
      }
      if (const Json& fj = sj.at("fit"); !fj.is_null()) {
        s.fit = LogLogFit{number(fj.at("slope")), number(fj.at("intercept")), number(fj.at("r2"))};
      }
      s.slope_valid = sj.at("slope_valid").get<bool>();
      s.fit_note = sj.at("fit_note").get<std::string>();
      for (const auto& [k, v] : sj.at("metrics").items()) s.metrics.emplace_back(k, number(v));
      r.series.push_back(std::move(s));
    }
    for (const Json& cj : j.at("checks")) {
      r.checks.push_back({cj.at("series").get<std::string>(), cj.at("name").get<std::string>(),
                          number(cj.at("value")), cj.at("expectation").get<std::string>(),
                          cj.at("passed").get<bool>()});
    }
    return r;
  });
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << contents;
  if (contents.empty() || contents.back() != '\n') out << '\n';
  if (!out) throw InvalidArgument("write to '" + path + "' failed");
}

}  // namespace rudd
