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

#ifndef TPF_CONTROLLER_HPP_
#define TPF_CONTROLLER_HPP_

#include "tpf/model.hpp"

namespace tpf {

// Tracking errors between target point and reference, plus the same
// position errors rotated into the reference frame.
struct ErrorState {
  double e_p = 0.0;  // [m]
  double e_q = 0.0;  // [m]
  double xi = 0.0;   // heading error theta - psi_r [rad]
  double eta = 0.0;  // curvature error omega - kappa_r [1/m]
  double y1 = 0.0;   // [m]
  double y2 = 0.0;   // [m]
};

enum class GainMode { theorem, manual };

struct Gains {
  double a = 3.0 / 16.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
  double D = 0.0;
  double beta = 0.0;  // 0 in manual mode
  double M = 0.0;
  GainMode mode = GainMode::manual;
  bool coupling_warning = false;  // 1/(k2*D) > 0.01
};

// Gain synthesis: k1 = a k2^2, C2 = 1/(2 beta k2), C1 = a C2 / (4 k2),
// M = beta k2, with a = 3/16. Requires k2 >= 20, beta > 8, D > 0;
// throws std::invalid_argument otherwise.
Gains synthesize_gains(double k2, double beta, double D);

// Arbitrary positive gain set (C1 < 1 required). Throws std::invalid_argument.
Gains manual_gains(double k1, double k2, double C1, double C2, double D, double M);

// sat(x) = x / max(1, |x|): identity on [-1, 1], clamped outside.
double sat(double x);

ErrorState compute_errors(const TargetState& target, const ReferenceState& ref,
                          double kappa_r);

struct Control {
  double u1 = 0.0;
  double u2 = 0.0;
  // Unsaturated outer argument (k1 xi + k2 eta + C2 sat(y2)) / D,
  // exposed for the saturation-deactivation monitor.
  double sat_arg = 0.0;
};

// u1 = C1 sat(y1); u2 = -D sat(sat_arg). The inner sat(y2) is evaluated
// first; the two saturations are never merged algebraically.
Control control(const ErrorState& err, const Gains& g);

struct PhysicalControls {
  double u = 0.0;     // reference speed [m/s]
  double rho = 0.0;   // target curvature control [1/m^2]
  double rho0 = 0.0;  // vehicle curvature control [1/m^2]
};

// u = v_d (1+u1); rho = rho_r (1+u1) + u2; rho0 = kappa_dot(kappa, omega)/V_x.
PhysicalControls physical_controls(double u1, double u2, double v_d, double rho_r,
                                   double kappa, double omega, double V_x, double d);

// mu = kappa_r (1 + u1); |mu| <= kappa_max (1 + C1).
double mu(double kappa_r, double u1);

}  // namespace tpf

#endif  // TPF_CONTROLLER_HPP_
