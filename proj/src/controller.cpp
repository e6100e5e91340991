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

#include "tpf/controller.hpp"

#include <cmath>
#include <stdexcept>

namespace tpf {

Gains synthesize_gains(double k2, double beta, double D) {
  if (k2 < 20.0) throw std::invalid_argument("gain synthesis requires k2 >= 20");
  if (beta <= 8.0) throw std::invalid_argument("gain synthesis requires beta > 8");
  if (D <= 0.0) throw std::invalid_argument("gain synthesis requires D > 0");
  Gains g;
  g.mode = GainMode::theorem;
  g.k2 = k2;
  g.beta = beta;
  g.D = D;
  g.k1 = g.a * k2 * k2;
  g.C2 = 1.0 / (2.0 * beta * k2);
  g.C1 = g.a * g.C2 / (4.0 * k2);
  g.M = beta * k2;
  g.coupling_warning = 1.0 / (k2 * D) > 0.01;
  return g;
}

Gains manual_gains(double k1, double k2, double C1, double C2, double D,
                   double M) {
  if (k1 <= 0.0 || k2 <= 0.0 || C1 <= 0.0 || C2 <= 0.0 || D <= 0.0 || M <= 0.0)
    throw std::invalid_argument("manual gains must all be strictly positive");
  if (C1 >= 1.0) throw std::invalid_argument("manual gains require C1 < 1");
  Gains g;
  g.mode = GainMode::manual;
  g.k1 = k1;
  g.k2 = k2;
  g.C1 = C1;
  g.C2 = C2;
  g.D = D;
  g.M = M;
  g.beta = 0.0;
  g.coupling_warning = 1.0 / (k2 * D) > 0.01;
  return g;
}

double sat(double x) { return x / std::fmax(1.0, std::fabs(x)); }

ErrorState compute_errors(const TargetState& target, const ReferenceState& ref,
                          double kappa_r) {
  ErrorState e;
  e.e_p = target.p - ref.p_r;
  e.e_q = target.q - ref.q_r;
  e.xi = target.theta - ref.psi_r;
  e.eta = target.omega - kappa_r;
  const double c = std::cos(ref.psi_r);
  const double s = std::sin(ref.psi_r);
  e.y1 = e.e_p * c + e.e_q * s;
  e.y2 = -e.e_p * s + e.e_q * c;
  return e;
}

Control control(const ErrorState& err, const Gains& g) {
  Control c;
  c.u1 = g.C1 * sat(err.y1);
  c.sat_arg = (g.k1 * err.xi + g.k2 * err.eta + g.C2 * sat(err.y2)) / g.D;
  c.u2 = -g.D * sat(c.sat_arg);
  return c;
}

PhysicalControls physical_controls(double u1, double u2, double v_d,
                                   double rho_r, double kappa, double omega,
                                   double V_x, double d) {
  PhysicalControls pc;
  pc.u = v_d * (1.0 + u1);
  pc.rho = rho_r * (1.0 + u1) + u2;
  pc.rho0 = kappa_dot(kappa, omega, V_x, d) / V_x;
  return pc;
}

double mu(double kappa_r, double u1) { return kappa_r * (1.0 + u1); }

}  // namespace tpf
