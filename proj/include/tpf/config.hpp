// Copyright 2026 The tpfollow Authors
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

#ifndef TPF_CONFIG_HPP_
#define TPF_CONFIG_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpf/analysis.hpp"
#include "tpf/sim.hpp"

namespace tpf {

// Configuration problem: unknown key, bad value, failed validation.
// `line` is 0 when the problem is not tied to a file line (e.g. overrides).
struct ConfigError : std::runtime_error {
  int line;
  std::string key;
  ConfigError(std::string msg, int line_ = 0, std::string key_ = "")
      : std::runtime_error(std::move(msg)), line(line_), key(std::move(key_)) {}
};

struct ConfigEntry {
  std::string value;
  int line = 0;
};

// section -> key -> entry; sections and keys are lower-case.
using ParsedConfig = std::map<std::string, std::map<std::string, ConfigEntry>>;

// Flat INI: [section] headers, key = value lines, '#' or ';' comments.
ParsedConfig parse_ini_text(const std::string& text);
ParsedConfig parse_ini_file(const std::string& path);

// Environment overrides APP_<SECTION>_<KEY> (e.g. APP_SIM_DT=1e-4).
void apply_env_overrides(ParsedConfig& cfg);

// Command-line overrides "section.key=value".
void apply_set_overrides(ParsedConfig& cfg,
                         const std::vector<std::string>& sets);

struct AppConfig {
  SimConfig sim;
  AnalysisOptions analysis;
  std::vector<std::string> warnings;  // e.g. the dt*k2*D step-size rule
};

// Validates every section against the documented key set (unknown keys are
// rejected with line/key diagnostics), applies defaults, and builds the
// simulation and analysis configuration. Throws ConfigError.
AppConfig build_app_config(const ParsedConfig& cfg);

// parse_ini_file + env + --set overrides + build_app_config.
AppConfig load_config(const std::string& path,
                      const std::vector<std::string>& sets = {});

}  // namespace tpf

#endif  // TPF_CONFIG_HPP_
