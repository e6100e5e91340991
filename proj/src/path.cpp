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

#include "tpf/path.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tpf {

namespace {

constexpr int kValidationSamples = 10000;

// Dense-sampling validation of the declared bounds over [s_min, s_max].
void check_declared_bounds(const PathSpec& spec) {
  if (spec.s_max <= spec.s_min) return;
  const double span = spec.s_max - spec.s_min;
  for (int i = 0; i <= kValidationSamples; ++i) {
    const double s = spec.s_min + span * i / kValidationSamples;
    if (std::fabs(curvature_at(spec, s)) > spec.kappa_max * (1.0 + 1e-12) + 1e-300)
      throw std::invalid_argument("path samples exceed declared kappa_max");
  }
}

}  // namespace

PathSpec make_line() {
  PathSpec spec;
  spec.kind = PathKind::line;
  spec.kappa_max = 0.0;
  spec.rho_r_max = 0.0;
  return spec;
}

PathSpec make_circle(double kappa0) {
  PathSpec spec;
  spec.kind = PathKind::circle;
  spec.kappa0 = kappa0;
  spec.kappa_max = std::fabs(kappa0);
  spec.rho_r_max = 0.0;
  return spec;
}

PathSpec make_sine(double amplitude, double freq) {
  if (freq <= 0.0) throw std::invalid_argument("sine path requires freq > 0");
  PathSpec spec;
  spec.kind = PathKind::sine_curvature;
  spec.amplitude = amplitude;
  spec.freq = freq;
  spec.kappa_max = std::fabs(amplitude);
  spec.rho_r_max = std::fabs(amplitude) * 2.0 * std::numbers::pi * freq;
  return spec;
}

PathSpec make_clothoid(double sharpness, double s_min, double s_max) {
  if (s_max <= s_min)
    throw std::invalid_argument("clothoid requires s_min < s_max");
  PathSpec spec;
  spec.kind = PathKind::clothoid_segment;
  spec.sharpness = sharpness;
  spec.s_min = s_min;
  spec.s_max = s_max;
  spec.kappa_max =
      std::fabs(sharpness) * std::fmax(std::fabs(s_min), std::fabs(s_max));
  spec.rho_r_max = std::fabs(sharpness);
  return spec;
}

PathSpec make_table(std::vector<std::pair<double, double>> samples,
                    double kappa_max, double rho_r_max) {
  if (samples.size() < 2)
    throw std::invalid_argument("table path requires at least 2 samples");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].first <= samples[i - 1].first)
      throw std::invalid_argument("table path requires strictly ascending s");
  }
  if (kappa_max <= 0.0 || rho_r_max <= 0.0)
    throw std::invalid_argument(
        "table path must declare positive kappa_max and rho_r_max");
  PathSpec spec;
  spec.kind = PathKind::piecewise_table;
  spec.s_min = samples.front().first;
  spec.s_max = samples.back().first;
  spec.table = std::move(samples);
  spec.kappa_max = kappa_max;
  spec.rho_r_max = rho_r_max;
  check_declared_bounds(spec);
  for (std::size_t i = 1; i < spec.table.size(); ++i) {
    const double slope = (spec.table[i].second - spec.table[i - 1].second) /
                         (spec.table[i].first - spec.table[i - 1].first);
    if (std::fabs(slope) > rho_r_max * (1.0 + 1e-12))
      throw std::invalid_argument("table samples exceed declared rho_r_max");
  }
  return spec;
}

PathSpec make_table_from_csv(const std::string& file, double kappa_max,
                             double rho_r_max) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open table file: " + file);
  std::vector<std::pair<double, double>> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double s, k;
    if (!(row >> s >> k)) {
      if (samples.empty()) continue;  // header line
      throw std::invalid_argument("bad table row in " + file + ": " + line);
    }
    samples.emplace_back(s, k);
  }
  return make_table(std::move(samples), kappa_max, rho_r_max);
}

double curvature_at(const PathSpec& spec, double s) {
  switch (spec.kind) {
    case PathKind::line:
      return 0.0;
    case PathKind::circle:
      return spec.kappa0;
    case PathKind::sine_curvature:
      return spec.amplitude *
             std::sin(2.0 * std::numbers::pi * spec.freq * s);
    case PathKind::clothoid_segment:
      if (s < spec.s_min || s > spec.s_max)
        throw std::domain_error("clothoid queried outside its s-range");
      return spec.sharpness * s;
    case PathKind::piecewise_table: {
      if (s < spec.s_min || s > spec.s_max)
        throw std::domain_error("table path queried outside its s-range");
      auto it = std::upper_bound(
          spec.table.begin(), spec.table.end(), s,
          [](double v, const auto& pt) { return v < pt.first; });
      if (it == spec.table.begin()) return spec.table.front().second;
      if (it == spec.table.end()) return spec.table.back().second;
      const auto& [s1, k1] = *(it - 1);
      const auto& [s2, k2] = *it;
      return k1 + (k2 - k1) * (s - s1) / (s2 - s1);
    }
  }
  return 0.0;
}

double dcurvature_at(const PathSpec& spec, double s) {
  switch (spec.kind) {
    case PathKind::line:
    case PathKind::circle:
      return 0.0;
    case PathKind::sine_curvature:
      return spec.amplitude * 2.0 * std::numbers::pi * spec.freq *
             std::cos(2.0 * std::numbers::pi * spec.freq * s);
    case PathKind::clothoid_segment:
      if (s < spec.s_min || s > spec.s_max)
        throw std::domain_error("clothoid queried outside its s-range");
      return spec.sharpness;
    case PathKind::piecewise_table: {
      if (s < spec.s_min || s > spec.s_max)
        throw std::domain_error("table path queried outside its s-range");
      // Right-hand derivative at breakpoints.
      auto it = std::upper_bound(
          spec.table.begin(), spec.table.end(), s,
          [](double v, const auto& pt) { return v < pt.first; });
      if (it == spec.table.end()) it = spec.table.end() - 1;
      if (it == spec.table.begin()) it = spec.table.begin() + 1;
      const auto& [s1, k1] = *(it - 1);
      const auto& [s2, k2] = *it;
      return (k2 - k1) / (s2 - s1);
    }
  }
  return 0.0;
}

H1Verdict validate_h1(const PathSpec& spec, double d) {
  H1Verdict v;
  v.d_kappa_max = d * spec.kappa_max;
  v.margin = 1.0 - v.d_kappa_max;
  v.ok = d > 0.0 && v.d_kappa_max < 1.0;
  return v;
}

}  // namespace tpf
