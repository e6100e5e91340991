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

#include "tpf/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

extern char** environ;

namespace tpf {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const ConfigEntry& e, const std::string& where) {
  const std::string t = trim(e.value);
  if (t.empty())
    throw ConfigError("empty value for " + where, e.line, where);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw ConfigError("invalid number '" + t + "' for " + where, e.line, where);
  return v;
}

long parse_long(const ConfigEntry& e, const std::string& where) {
  const std::string t = trim(e.value);
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
    throw ConfigError("invalid integer '" + t + "' for " + where, e.line, where);
  return v;
}

// Accessor over one parsed section with presence tracking.
struct Section {
  const std::map<std::string, ConfigEntry>* entries = nullptr;
  std::string name;

  bool has(const std::string& key) const {
    return entries && entries->count(key) > 0;
  }
  const ConfigEntry& entry(const std::string& key) const {
    return entries->at(key);
  }
  double num(const std::string& key, double fallback) const {
    return has(key) ? parse_double(entries->at(key), name + "." + key)
                    : fallback;
  }
  double req_num(const std::string& key) const {
    if (!has(key))
      throw ConfigError("missing key '" + key + "' in [" + name + "]", 0, key);
    return parse_double(entries->at(key), name + "." + key);
  }
  long integer(const std::string& key, long fallback) const {
    return has(key) ? parse_long(entries->at(key), name + "." + key) : fallback;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? trim(entries->at(key).value) : fallback;
  }
};

Section section_of(const ParsedConfig& cfg, const std::string& name) {
  Section s;
  s.name = name;
  const auto it = cfg.find(name);
  if (it != cfg.end()) s.entries = &it->second;
  return s;
}

void check_keys(const ParsedConfig& cfg, const std::string& section,
                const std::set<std::string>& allowed) {
  const auto it = cfg.find(section);
  if (it == cfg.end()) return;
  for (const auto& [key, entry] : it->second) {
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + section + "." + key + "'",
                        entry.line, key);
  }
}

}  // namespace

ParsedConfig parse_ini_text(const std::string& text) {
  ParsedConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header", line_no);
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError("empty section name", line_no);
      cfg[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    if (section.empty())
      throw ConfigError("key outside any [section]", line_no);
    const std::string key = lower(trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("empty key", line_no);
    cfg[section][key] = {trim(line.substr(eq + 1)), line_no};
  }
  return cfg;
}

ParsedConfig parse_ini_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ini_text(ss.str());
}

void apply_env_overrides(ParsedConfig& cfg) {
  for (char** env = environ; env && *env; ++env) {
    const std::string kv = *env;
    if (kv.rfind("APP_", 0) != 0) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string name = kv.substr(4, eq - 4);
    const auto us = name.find('_');
    if (us == std::string::npos || us == 0 || us + 1 >= name.size()) continue;
    const std::string section = lower(name.substr(0, us));
    const std::string key = lower(name.substr(us + 1));
    cfg[section][key] = {kv.substr(eq + 1), 0};
  }
}

void apply_set_overrides(ParsedConfig& cfg,
                         const std::vector<std::string>& sets) {
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    const auto dot = s.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq ||
        dot == 0 || dot + 1 == eq)
      throw ConfigError("malformed --set '" + s + "', expected section.key=value");
    const std::string section = lower(trim(s.substr(0, dot)));
    const std::string key = lower(trim(s.substr(dot + 1, eq - dot - 1)));
    if (section.empty() || key.empty())
      throw ConfigError("malformed --set '" + s + "', expected section.key=value");
    cfg[section][key] = {trim(s.substr(eq + 1)), 0};
  }
}

AppConfig build_app_config(const ParsedConfig& cfg) {
  static const std::set<std::string> known_sections = {
      "path", "vehicle", "gains", "init", "sim", "analysis"};
  for (const auto& [name, entries] : cfg) {
    if (!known_sections.count(name)) {
      const int line = entries.empty() ? 0 : entries.begin()->second.line;
      throw ConfigError("unknown section '[" + name + "]'", line);
    }
  }
  check_keys(cfg, "path",
             {"kind", "kappa0", "amplitude", "freq", "sharpness", "s_min",
              "s_max", "file", "kappa_max", "rho_r_max"});
  check_keys(cfg, "vehicle", {"d", "v_x"});
  check_keys(cfg, "gains", {"mode", "k1", "k2", "c1", "c2", "d", "beta", "m"});
  check_keys(cfg, "init", {"e_p0", "e_q0", "xi0", "eta0", "p_r0", "q_r0",
                           "psi_r0", "s0", "kappa_init"});
  check_keys(cfg, "sim", {"dt", "t_end", "seed", "monitor_split"});
  check_keys(cfg, "analysis",
             {"riccati_tol", "gain_rel_tol", "slope_tol", "c_hat", "grid_n",
              "mc_runs", "seed"});

  AppConfig app;

  const Section path = section_of(cfg, "path");
  const std::string kind = lower(path.str("kind", "line"));
  try {
    if (kind == "line") {
      app.sim.path = make_line();
    } else if (kind == "circle") {
      app.sim.path = make_circle(path.req_num("kappa0"));
    } else if (kind == "sine") {
      app.sim.path = make_sine(path.req_num("amplitude"), path.req_num("freq"));
    } else if (kind == "clothoid") {
      app.sim.path = make_clothoid(path.req_num("sharpness"),
                                   path.req_num("s_min"), path.req_num("s_max"));
    } else if (kind == "table") {
      if (!path.has("file"))
        throw ConfigError("missing key 'file' in [path]", 0, "file");
      app.sim.path = make_table_from_csv(path.str("file", ""),
                                         path.req_num("kappa_max"),
                                         path.req_num("rho_r_max"));
    } else {
      throw ConfigError("unknown path kind '" + kind + "'",
                        path.has("kind") ? path.entry("kind").line : 0, "kind");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("path: ") + e.what(),
                      path.has("kind") ? path.entry("kind").line : 0, "kind");
  }

  const Section veh = section_of(cfg, "vehicle");
  app.sim.d = veh.num("d", 2.0);
  const double v_x = veh.num("v_x", 5.0);
  if (!(app.sim.d > 0.0))
    throw ConfigError("vehicle.d must be positive",
                      veh.has("d") ? veh.entry("d").line : 0, "d");
  if (!(v_x > 0.0))
    throw ConfigError("vehicle.v_x must be positive",
                      veh.has("v_x") ? veh.entry("v_x").line : 0, "v_x");
  app.sim.speed = SpeedProfile::constant(v_x);

  const H1Verdict h1 = validate_h1(app.sim.path, app.sim.d);
  if (!h1.ok) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "d*kappa_max = %.6g violates the strict bound < 1",
                  h1.d_kappa_max);
    throw ConfigError(buf, veh.has("d") ? veh.entry("d").line : 0, "d");
  }

  const Section gains = section_of(cfg, "gains");
  const std::string mode = lower(gains.str("mode", "theorem"));
  try {
    if (mode == "theorem") {
      app.sim.gains = synthesize_gains(gains.req_num("k2"),
                                       gains.req_num("beta"),
                                       gains.req_num("d"));
    } else if (mode == "manual") {
      app.sim.gains =
          manual_gains(gains.req_num("k1"), gains.req_num("k2"),
                       gains.req_num("c1"), gains.req_num("c2"),
                       gains.req_num("d"), gains.req_num("m"));
    } else {
      throw ConfigError("gains.mode must be 'theorem' or 'manual'",
                        gains.has("mode") ? gains.entry("mode").line : 0,
                        "mode");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("gains: ") + e.what(),
                      gains.has("mode") ? gains.entry("mode").line : 0, "mode");
  }

  const Section init = section_of(cfg, "init");
  app.sim.init.e_p0 = init.num("e_p0", 0.0);
  app.sim.init.e_q0 = init.num("e_q0", 0.0);
  app.sim.init.xi0 = init.num("xi0", 0.0);
  app.sim.init.eta0 = init.num("eta0", 0.0);
  app.sim.init.p_r0 = init.num("p_r0", 0.0);
  app.sim.init.q_r0 = init.num("q_r0", 0.0);
  app.sim.init.psi_r0 = init.num("psi_r0", 0.0);
  app.sim.init.s0 = init.num("s0", 0.0);
  if (init.has("kappa_init"))
    app.sim.init.kappa_init = init.num("kappa_init", 0.0);

  const Section sim = section_of(cfg, "sim");
  app.sim.dt = sim.num("dt", 1e-3);
  app.sim.t_end = sim.num("t_end", 60.0);
  app.sim.seed = static_cast<unsigned>(sim.integer("seed", 42));
  app.sim.monitor_split = sim.num("monitor_split", 0.5);
  if (!(app.sim.dt > 0.0))
    throw ConfigError("sim.dt must be positive",
                      sim.has("dt") ? sim.entry("dt").line : 0, "dt");
  if (!(app.sim.t_end > app.sim.dt))
    throw ConfigError("sim.t_end must exceed sim.dt",
                      sim.has("t_end") ? sim.entry("t_end").line : 0, "t_end");
  if (app.sim.monitor_split < 0.0 || app.sim.monitor_split > 1.0)
    throw ConfigError("sim.monitor_split must lie in [0, 1]",
                      sim.has("monitor_split") ? sim.entry("monitor_split").line
                                               : 0,
                      "monitor_split");

  const Section an = section_of(cfg, "analysis");
  app.analysis.riccati_tol = an.num("riccati_tol", app.analysis.riccati_tol);
  app.analysis.gain_rel_tol = an.num("gain_rel_tol", app.analysis.gain_rel_tol);
  app.analysis.slope_tol = an.num("slope_tol", app.analysis.slope_tol);
  app.analysis.c_hat = an.num("c_hat", app.analysis.c_hat);
  app.analysis.grid_n =
      static_cast<int>(an.integer("grid_n", app.analysis.grid_n));
  app.analysis.mc_runs =
      static_cast<int>(an.integer("mc_runs", app.analysis.mc_runs));
  app.analysis.seed = static_cast<unsigned>(an.integer("seed", app.analysis.seed));

  const double stiffness = app.sim.dt * app.sim.gains.k2 * app.sim.gains.D;
  if (stiffness > 5.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "dt*k2*D = %.3g exceeds 5; consider dt <= %.3g", stiffness,
                  5.0 / (app.sim.gains.k2 * app.sim.gains.D));
    app.warnings.emplace_back(buf);
  }
  if (app.sim.gains.coupling_warning)
    app.warnings.emplace_back("1/(k2*D) exceeds 0.01; the saturation "
                              "coupling assumption is weak for these gains");
  return app;
}

AppConfig load_config(const std::string& path,
                      const std::vector<std::string>& sets) {
  ParsedConfig cfg = parse_ini_file(path);
  apply_env_overrides(cfg);
  apply_set_overrides(cfg, sets);
  return build_app_config(cfg);
}

}  // namespace tpf
