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

#include "secobs/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

#include <cstdlib>
#include <string>

namespace secobs::log {

namespace {

std::shared_ptr<spdlog::logger> make_logger() {
  auto lg = spdlog::stderr_color_mt("secobs");
  lg->set_pattern("[%l] %v");
  return lg;
}

bool apply_env(spdlog::logger& lg) {
  const char* env = std::getenv("SECOBS_LOG");
  if (env == nullptr || *env == '\0') {
    lg.set_level(spdlog::level::warn);
    return true;
  }
  const std::string v(env);
  const auto level = spdlog::level::from_str(v);
  // from_str maps unknown names to off; only accept that for "off".
  if (level == spdlog::level::off && v != "off") {
    lg.set_level(spdlog::level::warn);
    lg.warn("SECOBS_LOG='{}' not recognized; using warn", v);
    return false;
  }
  lg.set_level(level);
  return true;
}

}  // namespace

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> lg = [] {
    auto l = make_logger();
    apply_env(*l);
    return l;
  }();
  return *lg;
}

bool configure_from_env() { return apply_env(logger()); }

}  // namespace secobs::log
