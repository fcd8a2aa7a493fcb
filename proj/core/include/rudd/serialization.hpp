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

#include "rudd/experiment.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"

namespace rudd {

/// JSON documents with a fixed key order. Doubles round-trip exactly.
///
/// schedule: {"T", "n", "axis", "family", "theta_p", "segments": [{"kind",
///   "start", "end", "F", "theta", "axis"}]}
/// pulse:    {"theta", "tau_p", "waveform", "a", "b", "c", "axis"}
std::string to_json(const Schedule& schedule);
std::string to_json(const PulseShape& pulse);
std::string to_json(const ScalingReport& report);

/// Throw InvalidArgument on malformed input.
Schedule schedule_from_json(std::string_view text);
PulseShape pulse_from_json(std::string_view text);
ScalingReport report_from_json(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace rudd
