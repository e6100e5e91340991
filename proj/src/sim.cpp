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

#include "tpf/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>

namespace tpf {

namespace {

struct StepSample {
  TraceRow row;
  Control ctl;
  double kappa_r = 0.0;
  double rho_r = 0.0;
};

// Per-state feedback evaluation shared by logging and the RK4 stages.
StepSample evaluate(const ClosedLoopState& st, double t, double V_x,
                    const SimConfig& cfg) {
  StepSample smp;
  smp.kappa_r = curvature_at(cfg.path, st.s);
  smp.rho_r = dcurvature_at(cfg.path, st.s);

  const VehicleState veh{st.x, st.y, st.psi, st.kappa};
  const TargetPose pose = target_from_vehicle(veh, cfg.d, V_x);
  const TargetState target{pose.p, pose.q, pose.theta, st.omega};
  const ReferenceState ref{st.p_r, st.q_r, st.psi_r, st.s};
  const ErrorState err = compute_errors(target, ref, smp.kappa_r);
  smp.ctl = control(err, cfg.gains);
  const PhysicalControls phy =
      physical_controls(smp.ctl.u1, smp.ctl.u2, pose.v_d, smp.rho_r, st.kappa,
                        st.omega, V_x, cfg.d);

  TraceRow& r = smp.row;
  r.t = t;
  r.s = st.s;
  r.x = st.x;
  r.y = st.y;
  r.psi = st.psi;
  r.kappa = st.kappa;
  r.p = pose.p;
  r.q = pose.q;
  r.theta = pose.theta;
  r.omega = st.omega;
  r.p_r = st.p_r;
  r.q_r = st.q_r;
  r.psi_r = st.psi_r;
  r.kappa_r = smp.kappa_r;
  r.e_p = err.e_p;
  r.e_q = err.e_q;
  r.xi = err.xi;
  r.eta = err.eta;
  r.y1 = err.y1;
  r.y2 = err.y2;
  r.u1 = smp.ctl.u1;
  r.u2 = smp.ctl.u2;
  r.u = phy.u;
  r.rho = phy.rho;
  r.rho0 = phy.rho0;
  r.v_d = pose.v_d;
  r.sat_arg = smp.ctl.sat_arg;
  return smp;
}

double lyapunov_value(const TraceRow& r, const Gains& g, const SymMatrix2& P) {
  const double zPz = r.xi * (P.a11 * r.xi + P.a12 * r.eta) +
                     r.eta * (P.a12 * r.xi + P.a22 * r.eta);
  return g.M * zPz + 0.5 * g.k1 * (r.y1 * r.y1 + r.y2 * r.y2) +
         r.eta * r.y2 + g.k2 * r.y2 * r.xi;
}

bool row_finite(const TraceRow& r) {
  for (double v : r.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

std::array<double, 28> TraceRow::values() const {
  return {t,   s,   x,  y,   psi, kappa, p,  q,  theta, omega,
          p_r, q_r, psi_r, kappa_r, e_p, e_q, xi, eta, y1, y2,
          u1,  u2,  u,  rho, rho0, v_d, V, sat_arg};
}

const std::array<const char*, 28>& TraceRow::column_names() {
  static const std::array<const char*, 28> names = {
      "t",   "s",   "x",  "y",   "psi", "kappa", "p",  "q",  "theta", "omega",
      "p_r", "q_r", "psi_r", "kappa_r", "e_p", "e_q", "xi", "eta", "y1", "y2",
      "u1",  "u2",  "u",  "rho", "rho0", "v_d", "V", "sat_arg"};
  return names;
}

ClosedLoopState init_states(const SimConfig& cfg) {
  const SimInit& in = cfg.init;
  const double V_x0 = cfg.speed.value(0.0);
  const double kappa_r0 = curvature_at(cfg.path, in.s0);
  const double theta0 = in.psi_r0 + in.xi0;
  const double p0 = in.p_r0 + in.e_p0;
  const double q0 = in.q_r0 + in.e_q0;

  double kappa0, omega0;
  if (in.kappa_init) {
    kappa0 = *in.kappa_init;
    omega0 = omega_from_kappa(kappa0, 0.0, V_x0, cfg.d);
  } else {
    omega0 = kappa_r0 + in.eta0;
    // kappa solving kappa = omega sqrt(1 + (kappa d)^2), by fixed point.
    double k = omega0;
    bool converged = false;
    for (int i = 0; i < 200; ++i) {
      const double next = omega0 * std::sqrt(1.0 + (k * cfg.d) * (k * cfg.d));
      if (std::fabs(next - k) <= 1e-14 * std::fmax(1.0, std::fabs(next))) {
        k = next;
        converged = true;
        break;
      }
      k = next;
    }
    if (!converged || !std::isfinite(k))
      throw std::runtime_error(
          "initial curvature fixed point did not converge "
          "(|omega(0)| too large relative to 1/d)");
    kappa0 = k;
  }

  ClosedLoopState st;
  st.psi = theta0 - std::atan(kappa0 * cfg.d);
  st.x = p0 - cfg.d * std::cos(st.psi);
  st.y = q0 - cfg.d * std::sin(st.psi);
  st.kappa = kappa0;
  st.omega = omega0;
  st.p_r = in.p_r0;
  st.q_r = in.q_r0;
  st.psi_r = in.psi_r0;
  st.s = in.s0;
  return st;
}

RunResult run(const SimConfig& cfg) {
  RunResult res;
  const Gains& g = cfg.gains;

  const double ups = l2_gain_upper_bound(g.k1, g.k2);
  const RiccatiResult rr = riccati_solve(g.k1, g.k2, ups);
  res.v_available = rr.ok;
  res.monitor_box = vdot_noncertified_box(g, cfg.path.kappa_max);

  const double eta_bar =
      iss_bounds(g, cfg.path.kappa_max, IssMode::asymptotic).eta_bound;
  const BlowupMargin bm = blowup_margin(cfg.d, cfg.path.kappa_max, eta_bar);
  res.kappa_trap_applicable = bm.verdict;
  res.kappa_trap_K = bm.trap_K;

  const double stiffness = cfg.dt * g.k2 * g.D;
  if (stiffness > 5.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "dt*k2*D = %.3g exceeds 5; the saturation loop may be "
                  "under-resolved at dt = %.3g",
                  stiffness, cfg.dt);
    res.warnings.emplace_back(buf);
  }

  const long n = std::lround(cfg.t_end / cfg.dt);
  const double t_monitor = cfg.monitor_split * cfg.t_end;
  ClosedLoopState st = init_states(cfg);

  MonitorReport& rep = res.report;
  const double u1_cap = g.C1 * (1.0 + 1e-12);
  const double u2_cap = g.D * (1.0 + 1e-12);

  for (long i = 0; i <= n; ++i) {
    const double t = i * cfg.dt;
    const double V_x = cfg.speed.value(t);
    StepSample smp = evaluate(st, t, V_x, cfg);
    if (res.v_available) smp.row.V = lyapunov_value(smp.row, g, rr.P);
    if (!row_finite(smp.row)) {
      res.blowup = true;
      res.blowup_t = t;
      const auto vals = smp.row.values();
      const auto names = TraceRow::column_names();
      res.blowup_component = "trace";
      for (std::size_t k = 0; k < vals.size(); ++k) {
        if (!std::isfinite(vals[k])) {
          res.blowup_component = names[k];
          break;
        }
      }
      break;
    }
    res.trace.rows.push_back(smp.row);

    rep.kappa_sup = std::fmax(rep.kappa_sup, std::fabs(smp.row.kappa));
    if (std::fabs(smp.row.u1) > u1_cap || std::fabs(smp.row.u2) > u2_cap)
      rep.control_bounds_ok = false;

    if (res.v_available && t >= t_monitor) {
      const bool inside_box =
          std::fabs(smp.row.y1) <= res.monitor_box.y1_dim &&
          std::fabs(smp.row.y2) <= res.monitor_box.y2_dim;
      if (!inside_box) {
        const VdotSample vs =
            vdot_decrease_check(smp.row.xi, smp.row.eta, smp.row.y1,
                                smp.row.y2, smp.row.kappa_r, g, rr.P, ups);
        if (!vs.in_decrease_set) ++rep.v_decrease_violations;
      }
    }

    if (i == n) break;
    auto rhs = [&](const std::array<double, 9>& arr, double tt) {
      const ClosedLoopState s9 = ClosedLoopState::from_array(arr);
      const double vx = cfg.speed.value(tt);
      const StepSample stage = evaluate(s9, tt, vx, cfg);
      return closed_loop_rhs(s9, stage.ctl.u1, stage.ctl.u2, vx, cfg.d,
                             cfg.path)
          .to_array();
    };
    try {
      st = ClosedLoopState::from_array(
          rk4_step<9>(st.to_array(), t, cfg.dt, rhs, closed_loop_component_name));
    } catch (const BlowupError& e) {
      res.blowup = true;
      res.blowup_t = e.t;
      res.blowup_component = e.component;
      break;
    }
  }

  if (!res.trace.rows.empty()) {
    const TraceRow& last = res.trace.rows.back();
    rep.final_error_norm = std::hypot(last.e_p, last.e_q);
    rep.xi_final = last.xi;
    rep.eta_final = last.eta;
    // Start of the trailing window on which the outer saturation stays inactive.
    if (std::fabs(last.sat_arg) < 1.0) {
      std::size_t first = res.trace.rows.size() - 1;
      while (first > 0 &&
             std::fabs(res.trace.rows[first - 1].sat_arg) < 1.0)
        --first;
      rep.sat_deactivation_time = res.trace.rows[first].t;
    }
  }
  return res;
}

std::vector<SweepRow> sweep(const SimConfig& tmpl, const std::string& axis,
                            const std::vector<double>& values) {
  static const std::array<const char*, 6> kAxes = {"k2", "D",  "dt",
                                                   "xi0", "kappa_max", "d"};
  if (std::find_if(kAxes.begin(), kAxes.end(), [&](const char* a) {
        return axis == a;
      }) == kAxes.end()) {
    throw std::invalid_argument("unknown sweep axis: " + axis);
  }
  auto make_cfg = [&](double v) {
    SimConfig cfg = tmpl;
    const Gains& g = tmpl.gains;
    if (axis == "k2") {
      cfg.gains = g.mode == GainMode::theorem
                      ? synthesize_gains(v, g.beta, g.D)
                      : manual_gains(g.k1, v, g.C1, g.C2, g.D, g.M);
    } else if (axis == "D") {
      cfg.gains = g.mode == GainMode::theorem
                      ? synthesize_gains(g.k2, g.beta, v)
                      : manual_gains(g.k1, g.k2, g.C1, g.C2, v, g.M);
    } else if (axis == "dt") {
      cfg.dt = v;
      if (!(v > 0.0)) throw std::invalid_argument("dt must be positive");
    } else if (axis == "xi0") {
      cfg.init.xi0 = v;
    } else if (axis == "kappa_max") {
      switch (tmpl.path.kind) {
        case PathKind::circle:
          cfg.path = make_circle(v);
          break;
        case PathKind::sine_curvature:
          cfg.path = make_sine(v, tmpl.path.freq);
          break;
        default:
          throw std::invalid_argument(
              "kappa_max sweep requires a circle or sine path");
      }
      if (!validate_h1(cfg.path, cfg.d).ok)
        throw std::invalid_argument("d*kappa_max >= 1 for this row");
    } else if (axis == "d") {
      cfg.d = v;
      if (!(v > 0.0) || !validate_h1(cfg.path, v).ok)
        throw std::invalid_argument("d*kappa_max >= 1 for this row");
    } else {
      throw std::invalid_argument("unknown sweep axis: " + axis);
    }
    return cfg;
  };

  std::vector<std::future<SweepRow>> futs;
  futs.reserve(values.size());
  for (double v : values) {
    futs.push_back(std::async(std::launch::async, [&make_cfg, v]() {
      SweepRow row;
      row.value = v;
      try {
        const RunResult r = run(make_cfg(v));
        row.report = r.report;
        row.blowup = r.blowup;
        const bool trap_ok =
            !r.kappa_trap_applicable || r.report.kappa_sup < r.kappa_trap_K;
        row.ok = !r.blowup && r.report.v_decrease_violations == 0 &&
                 r.report.control_bounds_ok && trap_ok;
        if (r.blowup) row.error = "blowup in " + r.blowup_component;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (auto& f : futs) rows.push_back(f.get());
  return rows;
}

}  // namespace tpf
