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

#ifndef TPF_PATH_HPP_
#define TPF_PATH_HPP_

#include <string>
#include <utility>
#include <vector>

namespace tpf {

enum class PathKind { line, circle, sine_curvature, clothoid_segment, piecewise_table };

// Arclength-parameterized reference curvature profile kappa_r(s) with
// declared bounds. Immutable after construction; safe to share across
// concurrent simulation runs.
struct PathSpec {
  PathKind kind = PathKind::line;
  double kappa0 = 0.0;     // circle curvature [1/m]
  double amplitude = 0.0;  // sine amplitude [1/m]
  double freq = 0.0;       // sine spatial frequency [1/m]
  double sharpness = 0.0;  // clothoid dkappa/ds [1/m^2]
  double s_min = 0.0;      // clothoid/table domain [m]
  double s_max = 0.0;
  std::vector<std::pair<double, double>> table;  // sampled (s, kappa), s ascending
  double kappa_max = 0.0;  // sup |kappa_r| [1/m]
  double rho_r_max = 0.0;  // sup |dkappa_r/ds| [1/m^2]
};

PathSpec make_line();
PathSpec make_circle(double kappa0);
PathSpec make_sine(double amplitude, double freq);
PathSpec make_clothoid(double sharpness, double s_min, double s_max);
// Table paths interpolate kappa piecewise-linearly; the bounds cannot be
// derived from samples alone and must be declared by the caller.
PathSpec make_table(std::vector<std::pair<double, double>> samples,
                    double kappa_max, double rho_r_max);
PathSpec make_table_from_csv(const std::string& file, double kappa_max,
                             double rho_r_max);

// kappa_r(s). Throws std::domain_error outside a clothoid/table domain.
double curvature_at(const PathSpec& spec, double s);

// dkappa_r/ds. At table breakpoints returns the right-hand derivative.
double dcurvature_at(const PathSpec& spec, double s);

struct H1Verdict {
  bool ok = false;
  double d_kappa_max = 0.0;
  double margin = 0.0;  // 1 - d*kappa_max
};

// Checks d*kappa_max < 1 strictly.
H1Verdict validate_h1(const PathSpec& spec, double d);

}  // namespace tpf

#endif  // TPF_PATH_HPP_
