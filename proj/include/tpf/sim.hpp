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

#ifndef TPF_SIM_HPP_
#define TPF_SIM_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tpf/analysis.hpp"
#include "tpf/controller.hpp"
#include "tpf/model.hpp"
#include "tpf/path.hpp"

namespace tpf {

struct SimInit {
  double e_p0 = 0.0, e_q0 = 0.0;  // position errors [m]
  double xi0 = 0.0;               // heading error [rad]
  double eta0 = 0.0;              // curvature error [1/m]
  double p_r0 = 0.0, q_r0 = 0.0, psi_r0 = 0.0, s0 = 0.0;  // reference pose
  // When set, kappa(0) is taken directly and omega(0) derived via
  // omega_from_kappa with kappa_dot(0) = 0; otherwise omega(0) = kappa_r + eta0
  // and kappa(0) solves the curvature equilibrium by fixed-point iteration.
  std::optional<double> kappa_init;
};

struct SimConfig {
  double d = 2.0;  // target offset [m]
  SpeedProfile speed = SpeedProfile::constant(5.0);
  PathSpec path;
  Gains gains;
  SimInit init;
  double dt = 1e-3;   // [s]
  double t_end = 60.0;  // [s]
  unsigned seed = 42;
  double monitor_split = 0.5;  // fraction of horizon before asymptotic monitors
};

// One log row per integration step; column order is the file contract.
struct TraceRow {
  double t = 0.0, s = 0.0;
  double x = 0.0, y = 0.0, psi = 0.0, kappa = 0.0;
  double p = 0.0, q = 0.0, theta = 0.0, omega = 0.0;
  double p_r = 0.0, q_r = 0.0, psi_r = 0.0, kappa_r = 0.0;
  double e_p = 0.0, e_q = 0.0, xi = 0.0, eta = 0.0, y1 = 0.0, y2 = 0.0;
  double u1 = 0.0, u2 = 0.0, u = 0.0, rho = 0.0, rho0 = 0.0, v_d = 0.0;
  double V = 0.0, sat_arg = 0.0;

  std::array<double, 28> values() const;
  static const std::array<const char*, 28>& column_names();
};

struct Trace {
  std::vector<TraceRow> rows;
};

struct MonitorReport {
  long v_decrease_violations = 0;  // outside the non-certified box, 2nd half
  double sat_deactivation_time = -1.0;  // -1 when |sat_arg| never settles < 1
  double kappa_sup = 0.0;
  bool control_bounds_ok = true;
  double final_error_norm = 0.0;  // sqrt(e_p^2 + e_q^2) at the last row
  double xi_final = 0.0, eta_final = 0.0;
};

// Thrown by rk4_step when a stage evaluates non-finite.
struct BlowupError : std::runtime_error {
  double t;
  std::string component;
  BlowupError(double t_, std::string comp)
      : std::runtime_error("integration blowup at t=" + std::to_string(t_) +
                           " in component " + comp),
        t(t_),
        component(std::move(comp)) {}
};

// Builds the composite initial state from error-space initial conditions.
// Throws std::runtime_error when the curvature fixed point does not converge
// (|omega| too large relative to 1/d).
ClosedLoopState init_states(const SimConfig& cfg);

// Classical fixed-step RK4 over a flat state vector. Throws BlowupError on a
// non-finite stage value; `name` maps a component index to its diagnostic name.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& st, double t,
                               double dt, Rhs&& rhs,
                               const char* (*name)(int) = nullptr);

struct RunResult {
  Trace trace;
  MonitorReport report;
  bool blowup = false;
  double blowup_t = 0.0;
  std::string blowup_component;
  bool v_available = false;  // Riccati solve succeeded for these gains
  VdotBox monitor_box;       // non-certified box used by the decrease monitor
  bool kappa_trap_applicable = false;
  double kappa_trap_K = 0.0;
  std::vector<std::string> warnings;
};

// Integrates the closed loop from t = 0 to t_end, logging every step and
// aggregating monitors. A blowup truncates the trace and sets the flag
// instead of propagating. Deterministic for identical configs.
RunResult run(const SimConfig& cfg);

struct SweepRow {
  double value = 0.0;
  MonitorReport report;
  bool ok = false;        // run completed and all monitors clean
  bool blowup = false;
  std::string error;      // per-row failure, empty when ok
};

// Independent runs over `values` of `axis`, executed in parallel and merged
// in value order. axis is one of: k2, D, dt, xi0, kappa_max, d.
// A failing row is recorded and the sweep continues.
std::vector<SweepRow> sweep(const SimConfig& tmpl, const std::string& axis,
                            const std::vector<double>& values);

// --- implementation ---

template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& st, double t,
                               double dt, Rhs&& rhs, const char* (*name)(int)) {
  auto check = [&](const std::array<double, N>& k) {
    for (std::size_t i = 0; i < N; ++i) {
      if (!std::isfinite(k[i]))
        throw BlowupError(t, name ? name(static_cast<int>(i))
                                  : "state[" + std::to_string(i) + "]");
    }
  };
  auto axpy = [](const std::array<double, N>& a, double c,
                 const std::array<double, N>& b) {
    std::array<double, N> r = a;
    for (std::size_t i = 0; i < N; ++i) r[i] += c * b[i];
    return r;
  };
  const auto f1 = rhs(st, t);
  check(f1);
  const auto f2 = rhs(axpy(st, 0.5 * dt, f1), t + 0.5 * dt);
  check(f2);
  const auto f3 = rhs(axpy(st, 0.5 * dt, f2), t + 0.5 * dt);
  check(f3);
  const auto f4 = rhs(axpy(st, dt, f3), t + dt);
  check(f4);
  std::array<double, N> out = st;
  for (std::size_t i = 0; i < N; ++i)
    out[i] += (dt / 6.0) * (f1[i] + 2.0 * f2[i] + 2.0 * f3[i] + f4[i]);
  return out;
}

}  // namespace tpf

#endif  // TPF_SIM_HPP_
