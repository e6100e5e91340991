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

#ifndef TPF_MODEL_HPP_
#define TPF_MODEL_HPP_

#include <array>
#include <utility>
#include <vector>

#include "tpf/path.hpp"

namespace tpf {

// Car-like vehicle in the plane: position, heading, geodesic curvature.
// Headings are not wrapped; heading errors live on the real line.
struct VehicleState {
  double x = 0.0;      // [m]
  double y = 0.0;      // [m]
  double psi = 0.0;    // [rad]
  double kappa = 0.0;  // [1/m]
};

// The point at distance d ahead of the vehicle on its axis.
struct TargetState {
  double p = 0.0;      // [m]
  double q = 0.0;      // [m]
  double theta = 0.0;  // [rad]
  double omega = 0.0;  // target curvature [1/m]
};

// Virtual vehicle moving along the reference path at controllable speed u.
struct ReferenceState {
  double p_r = 0.0;    // [m]
  double q_r = 0.0;    // [m]
  double psi_r = 0.0;  // [rad]
  double s = 0.0;      // arclength [m]
};

// Forward speed V_x(t): constant, or piecewise-constant steps (t_i, v_i)
// applied at ascending times. Values must stay within [v_min, v_max].
struct SpeedProfile {
  double v_min = 0.0;
  double v_max = 0.0;
  std::vector<std::pair<double, double>> steps;  // (t_from, value)

  static SpeedProfile constant(double v) { return {v, v, {}}; }
  double value(double t) const {
    double v = steps.empty() ? v_min : steps.front().second;
    for (const auto& [t0, vi] : steps) {
      if (t >= t0) v = vi;
    }
    return v;
  }
};

struct TargetPose {
  double p = 0.0;
  double q = 0.0;
  double theta = 0.0;
  double v_d = 0.0;  // target-point speed [m/s]
};

// p = x + d cos(psi), q = y + d sin(psi), theta = psi + atan(kappa*d),
// v_d = V_x * sqrt(1 + (kappa*d)^2).
TargetPose target_from_vehicle(const VehicleState& v, double d, double V_x);

/// Curvature dynamics of the target point:
// kappa_dot = V_x (1+(kappa d)^2) (sqrt(1+(kappa d)^2) omega - kappa) / d.
double kappa_dot(double kappa, double omega, double V_x, double d);

// Inverse of kappa_dot in omega, used to initialize omega consistently.
double omega_from_kappa(double kappa, double kappa_dot_value, double V_x, double d);

// Physical steering input: rho0 = kappa_dot / V_x.
double rho0_recover(double kappa_dot_value, double V_x);

// Composite closed-loop state, fixed component order.
struct ClosedLoopState {
  double x = 0.0, y = 0.0, psi = 0.0, kappa = 0.0, omega = 0.0;
  double p_r = 0.0, q_r = 0.0, psi_r = 0.0, s = 0.0;

  std::array<double, 9> to_array() const {
    return {x, y, psi, kappa, omega, p_r, q_r, psi_r, s};
  }
  static ClosedLoopState from_array(const std::array<double, 9>& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8]};
  }
};

// Names of ClosedLoopState components in declaration order (for diagnostics).
const char* closed_loop_component_name(int i);

// Derivative of the composite state under controls (u1, u2):
//   x' = V_x cos psi, y' = V_x sin psi, psi' = V_x kappa, kappa' as above,
//   omega' = v_d * rho with rho = rho_r (1+u1) + u2,
//   p_r' = u cos psi_r, q_r' = u sin psi_r, psi_r' = u kappa_r, s' = u,
// where u = v_d (1+u1).
ClosedLoopState closed_loop_rhs(const ClosedLoopState& st, double u1, double u2,
                                double V_x, double d, const PathSpec& spec);

}  // namespace tpf

#endif  // TPF_MODEL_HPP_
