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

#include "tpf/model.hpp"

#include <cmath>

namespace tpf {

TargetPose target_from_vehicle(const VehicleState& v, double d, double V_x) {
  TargetPose t;
  t.p = v.x + d * std::cos(v.psi);
  t.q = v.y + d * std::sin(v.psi);
  t.theta = v.psi + std::atan(v.kappa * d);
  t.v_d = V_x * std::sqrt(1.0 + (v.kappa * d) * (v.kappa * d));
  return t;
}

double kappa_dot(double kappa, double omega, double V_x, double d) {
  const double g = 1.0 + (kappa * d) * (kappa * d);
  return V_x * g * (std::sqrt(g) * omega - kappa) / d;
}

double omega_from_kappa(double kappa, double kappa_dot_value, double V_x,
                        double d) {
  const double g = 1.0 + (kappa * d) * (kappa * d);
  return (kappa + d * kappa_dot_value / (V_x * g)) / std::sqrt(g);
}

double rho0_recover(double kappa_dot_value, double V_x) {
  return kappa_dot_value / V_x;
}

const char* closed_loop_component_name(int i) {
  static const char* names[9] = {"x",   "y",   "psi",   "kappa", "omega",
                                 "p_r", "q_r", "psi_r", "s"};
  return (i >= 0 && i < 9) ? names[i] : "?";
}

ClosedLoopState closed_loop_rhs(const ClosedLoopState& st, double u1, double u2,
                                double V_x, double d, const PathSpec& spec) {
  const double kappa_r = curvature_at(spec, st.s);
  const double rho_r = dcurvature_at(spec, st.s);
  const double v_d =
      V_x * std::sqrt(1.0 + (st.kappa * d) * (st.kappa * d));
  const double u = v_d * (1.0 + u1);
  const double rho = rho_r * (1.0 + u1) + u2;

  ClosedLoopState f;
  f.x = V_x * std::cos(st.psi);
  f.y = V_x * std::sin(st.psi);
  f.psi = V_x * st.kappa;
  f.kappa = kappa_dot(st.kappa, st.omega, V_x, d);
  f.omega = v_d * rho;
  f.p_r = u * std::cos(st.psi_r);
  f.q_r = u * std::sin(st.psi_r);
  f.psi_r = u * kappa_r;
  f.s = u;
  return f;
}

}  // namespace tpf
