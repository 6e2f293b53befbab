// Copyright 2026 The secobs Authors.
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

// File formats: JSON system and scenario files, CSV traces and bench
// summaries. Everything written here parses back into an equal structure.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "secobs/bench_family.hpp"
#include "secobs/simulation.hpp"

namespace secobs {

/// Malformed input. The message names the line or the field path.
class ParseError : public UsageError {
 public:
  using UsageError::UsageError;
};

struct SystemFile {
  LtiSystem sys;
  std::optional<UgvParams> ugv;
  /// Physical sensor groups; empty means one group per sensor.
  std::vector<SupportSet> sensor_groups;

  friend bool operator==(const SystemFile&, const SystemFile&) = default;
};

SystemFile parse_system(const std::string& text);
std::string format_system(const SystemFile& f);
SystemFile read_system_file(const std::string& path);

Scenario parse_scenario(const std::string& text);
std::string format_scenario(const Scenario& sc);
Scenario read_scenario_file(const std::string& path);

/// Shortest representation with 17 significant digits ("nan", "inf" kept).
std::string format_double(double v);
double parse_double(const std::string& s);

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows, int n, int p);
/// Reads a trace; n and p are recovered from the header.
std::vector<TraceRow> read_trace_csv(std::istream& is, int& n, int& p);
/// Entry-wise equality where NaN matches NaN.
bool same_trace(const std::vector<TraceRow>& a, const std::vector<TraceRow>& b);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_bench_csv(std::istream& is);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace secobs
