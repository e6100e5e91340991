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

#include "tpf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace tpf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sqr(double v) { return v * v; }

// Least-squares slope of y over x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double l2_gain_closed_form(double k1, double k2) {
  const double B = 1.0 + k1 * k1 + k2 * k2;
  const double ups2 = (B + std::sqrt(B * B - 4.0 * k1 * k1)) / (2.0 * k1 * k1);
  return std::sqrt(ups2);
}

double l2_gain_upper_bound(double k1, double k2) {
  const double c = (1.0 + k2 * k2) / (k1 * k1);
  const double x = sqr(2.0 * k2 / k1) + 4.0 * c * c;
  const double ups2_minus_1 = 0.5 * (c + x / (1.0 + std::sqrt(1.0 + x)));
  return std::sqrt(1.0 + ups2_minus_1);
}

double lambda_min_at(double k1, double k2, double w) {
  const double w2 = w * w;
  const double T = 1.0 + k1 * k1 + k2 * k2 + 2.0 * w2;
  const double Delta = w2 * k2 * k2 + sqr(w2 - k1);
  return 2.0 * Delta / (T + std::sqrt(T * T - 4.0 * Delta));
}

SweepResult l2_gain_sweep(double k1, double k2, int grid_n) {
  if (k1 <= 0.0 || k2 <= 0.0)
    throw std::invalid_argument("l2_gain_sweep requires k1 > 0 and k2 > 0");
  const double w_hi = 10.0 * std::fmax(k2, std::sqrt(k1));
  int best = 0;
  double best_val = kInf;
  for (int i = 0; i <= grid_n; ++i) {
    const double w = w_hi * i / grid_n;
    const double v = lambda_min_at(k1, k2, w);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = w_hi * std::max(best - 1, 0) / grid_n;
  double hi = w_hi * std::min(best + 1, grid_n) / grid_n;
  // Golden-section refinement of the bracketed minimum.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = lambda_min_at(k1, k2, c);
  double fd = lambda_min_at(k1, k2, d);
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * (1.0 + hi); ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = lambda_min_at(k1, k2, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = lambda_min_at(k1, k2, d);
    }
  }
  SweepResult r;
  r.omega_at_min = 0.5 * (lo + hi);
  r.lambda_min = std::fmin(lambda_min_at(k1, k2, r.omega_at_min),
                           std::fmin(fc, fd));
  r.upsilon = 1.0 / std::sqrt(r.lambda_min);
  return r;
}

RiccatiResult riccati_solve(double k1, double k2, double upsilon_L) {
  RiccatiResult out;
  using ld = long double;
  const ld U = static_cast<ld>(upsilon_L);
  const ld K1 = static_cast<ld>(k1);
  const ld K2 = static_cast<ld>(k2);
  const ld u = (U - 1.0L) * (U + 1.0L);  // Ups^2 - 1

  const ld S11 = U * U * K1 * K1 - 1.0L;
  const ld S12 = U * U * K1 * K2;
  const ld S22 = U * U * (1.0L + K2 * K2) - 1.0L;
  // Expanded det S; avoids the catastrophic cancellation of S11*S22 - S12^2.
  const ld detS = u * u * K1 * K1 + u * (K1 * K1 - K2 * K2 - 1.0L) - K2 * K2;

  out.s_positive_definite = detS > 0.0L && S11 + S22 > 0.0L && S11 > 0.0L;
  if (!out.s_positive_definite) {
    out.note = "S = -I + Ups^2 A^T A is not positive definite";
    out.residual = kInf;
    return out;
  }

  const ld sq = std::sqrt(detS);
  const ld den = std::sqrt(S11 + S22 + 2.0L * sq);
  const ld R11 = (S11 + sq) / den;
  const ld R12 = S12 / den;
  const ld R22 = (S22 + sq) / den;

  const ld sinphi = -U * (1.0L + K1) / (R11 + R22);
  out.sin_phi = static_cast<double>(sinphi);
  if (sinphi < -1.0L || sinphi > 1.0L) {
    out.note = "rotation angle out of range (|sin phi| > 1)";
    out.residual = kInf;
    return out;
  }

  const ld a_cos = std::sqrt(std::fmax(0.0L, 1.0L - sinphi * sinphi));
  for (const ld cosphi : {a_cos, -a_cos}) {
    const ld X11 = cosphi * R11 - sinphi * R12;
    const ld X12 = cosphi * R12 - sinphi * R22;
    const ld X21 = sinphi * R11 + cosphi * R12;
    const ld X22 = sinphi * R12 + cosphi * R22;
    // P = Ups (R_phi sqrt(S) - Ups A), A = [[0, 1], [-k1, -k2]].
    const ld P11 = U * X11;
    const ld P12a = U * (X12 - U);
    const ld P21a = U * (X21 + U * K1);
    const ld P22 = U * (X22 + U * K2);
    const ld P12 = 0.5L * (P12a + P21a);
    if (P11 > 0.0L && P11 * P22 - P12 * P12 > 0.0L) {
      out.P.a11 = static_cast<double>(P11);
      out.P.a12 = static_cast<double>(P12);
      out.P.a22 = static_cast<double>(P22);
      out.ok = true;
      break;
    }
  }
  if (!out.ok) {
    out.note = "no rotation branch yields a positive definite P";
    out.residual = kInf;
    return out;
  }

  // Residual in double, exactly as downstream consumers evaluate P.
  const double P11 = out.P.a11, P12 = out.P.a12, P22 = out.P.a22;
  const double iu2 = 1.0 / (upsilon_L * upsilon_L);
  SymMatrix2 E;
  E.a11 = -2.0 * P12 * k1 + (P11 * P11 + P12 * P12) * iu2 + 1.0;
  E.a12 = (P11 - P12 * k2) - P22 * k1 + (P11 * P12 + P12 * P22) * iu2;
  E.a22 = 2.0 * (P12 - P22 * k2) + (P12 * P12 + P22 * P22) * iu2 + 1.0;
  out.residual = E.operator_norm();
  return out;
}

AsymptoticsResult pk_asymptotics(const std::vector<double>& k2_list,
                                 double slope_tol) {
  if (k2_list.size() < 2)
    throw std::invalid_argument("pk_asymptotics needs at least two k2 samples");
  AsymptoticsResult r;
  r.structure_ok = true;
  std::vector<double> lx, l11, l12, l22;
  const double a = 3.0 / 16.0;
  for (double k2 : k2_list) {
    if (k2 < 100.0)
      throw std::invalid_argument("pk_asymptotics requires k2 >= 100");
    const double k1 = a * k2 * k2;
    const auto rr = riccati_solve(k1, k2, l2_gain_upper_bound(k1, k2));
    if (!rr.ok || rr.P.det() <= 0.0) r.structure_ok = false;
    lx.push_back(std::log(k2));
    l11.push_back(std::log(std::fabs(rr.P.a11)));
    l12.push_back(std::log(std::fabs(rr.P.a12)));
    l22.push_back(std::log(std::fabs(rr.P.a22)));
  }
  r.slope_p11 = fit_slope(lx, l11);
  r.slope_p12 = fit_slope(lx, l12);
  r.slope_p22 = fit_slope(lx, l22);
  const double k2_top = k2_list.back();
  const double k1_top = a * k2_top * k2_top;
  const auto rr = riccati_solve(k1_top, k2_top, l2_gain_upper_bound(k1_top, k2_top));
  r.F1 = rr.P.a11 / k2_top;
  r.F2 = rr.P.a12;
  r.F3 = rr.P.a22 * k2_top;
  r.slopes_ok = std::fabs(r.slope_p11 - 1.0) <= slope_tol &&
                std::fabs(r.slope_p12) <= slope_tol &&
                std::fabs(r.slope_p22 + 1.0) <= slope_tol;
  return r;
}

SymMatrix4 lyapunov_matrix(const Gains& g, const SymMatrix2& P) {
  SymMatrix4 Q;
  Q.set(0, 0, g.M * P.a11);
  Q.set(0, 1, g.M * P.a12);
  Q.set(1, 1, g.M * P.a22);
  Q.set(2, 2, 0.5 * g.k1);
  Q.set(3, 3, 0.5 * g.k1);
  Q.set(1, 3, 0.5);
  Q.set(0, 3, 0.5 * g.k2);
  return Q;
}

PdResult v_positive_definite(const SymMatrix4& Q) {
  const auto eig = sym4_eigenvalues(Q);
  return {eig[0], eig[0] > 0.0};
}

SandwichResult v_sandwich(const SymMatrix4& Q, double k2) {
  const std::array<double, 4> w = {std::sqrt(k2), 1.0 / std::sqrt(k2), k2, k2};
  SymMatrix4 W;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j)
      W.set(i, j, Q.at(i, j) / (w[i] * w[j]));
  const auto eig = sym4_eigenvalues(W);
  return {eig[0], eig[3], eig[0] > 0.0};
}

IssBounds iss_bounds(const Gains& g, double kappa_max, IssMode mode,
                     double y1_sup, double y2_sup) {
  IssBounds b;
  switch (mode) {
    case IssMode::asymptotic:
      b.xi_bound =
          (8.0 / g.k2) * (kappa_max * g.C1 + 4.0 * g.C2 / (3.0 * g.k2));
      b.eta_bound = 2.0 * kappa_max * g.C1 + 32.0 * g.C2 / (3.0 * g.k2);
      break;
    case IssMode::transient:
      b.xi_bound =
          (4.0 / g.k2) * (kappa_max * g.C1 + 4.0 * g.C2 / (3.0 * g.k2));
      b.eta_bound = kappa_max * g.C1 + 16.0 * g.C2 / (3.0 * g.k2);
      break;
    case IssMode::refined:
      if (!(y1_sup < kappa_max))
        throw std::invalid_argument("refined bounds require y1_sup < kappa_max");
      if (!(y2_sup < 1.0))
        throw std::invalid_argument("refined bounds require y2_sup < 1");
      b.xi_bound = (8.0 / g.k2) *
                   (g.C1 * y1_sup + 4.0 * g.C2 * y2_sup / (3.0 * g.k2));
      b.eta_bound = 2.0 * g.C1 * y1_sup + 32.0 * g.C2 * y2_sup / (3.0 * g.k2);
      break;
  }
  return b;
}

IssMcResult iss_monte_carlo(const Gains& g, double kappa_max, int runs,
                            unsigned seed) {
  IssMcResult r;
  const auto b = iss_bounds(g, kappa_max, IssMode::asymptotic);
  r.bound_xi = b.xi_bound;
  r.bound_eta = b.eta_bound;
  const double bd1 = kappa_max * g.C1;
  const double bd2 = g.C2;

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto draw = [&](double bound) {
    if (u01(rng) < 0.3) return u01(rng) < 0.5 ? bound : -bound;  // corners
    return (2.0 * u01(rng) - 1.0) * bound;
  };

  const double dt = 0.1 / g.k2;
  for (int run = 0; run < runs; ++run) {
    double xi = 0.0, eta = 0.0;
    for (int seg = 0; seg < 40; ++seg) {
      const double dur = (0.2 + 0.8 * u01(rng)) * (20.0 / g.k2);
      const double d1 = draw(bd1);
      const double d2 = draw(bd2);
      const int steps = std::max(1, static_cast<int>(std::ceil(dur / dt)));
      const double h = dur / steps;
      for (int i = 0; i < steps; ++i) {
        auto f = [&](double z1, double z2, double* f1, double* f2) {
          *f1 = z2 + d1;
          *f2 = -g.k1 * z1 - g.k2 * z2 + d2;
        };
        double a1, a2, b1, b2, c1, c2, e1, e2;
        f(xi, eta, &a1, &a2);
        f(xi + 0.5 * h * a1, eta + 0.5 * h * a2, &b1, &b2);
        f(xi + 0.5 * h * b1, eta + 0.5 * h * b2, &c1, &c2);
        f(xi + h * c1, eta + h * c2, &e1, &e2);
        xi += (h / 6.0) * (a1 + 2.0 * b1 + 2.0 * c1 + e1);
        eta += (h / 6.0) * (a2 + 2.0 * b2 + 2.0 * c2 + e2);
        r.sup_xi = std::fmax(r.sup_xi, std::fabs(xi));
        r.sup_eta = std::fmax(r.sup_eta, std::fabs(eta));
      }
    }
  }
  r.ok = r.sup_xi <= r.bound_xi && r.sup_eta <= r.bound_eta;
  return r;
}

VdotSample vdot_decrease_check(double xi, double eta, double y1, double y2,
                               double kappa_r, const Gains& g,
                               const SymMatrix2& P, double upsilon_L) {
  (void)upsilon_L;  // P already encodes the gain level
  const double s1 = sat(y1);
  const double s2 = sat(y2);
  const double u1 = g.C1 * s1;
  const double mu_v = kappa_r * (1.0 + u1);
  const double arg = (g.k1 * xi + g.k2 * eta + g.C2 * s2) / g.D;
  const double eta_d = -g.D * sat(arg);
  const double xi_d = eta - kappa_r * g.C1 * s1;
  const double y1_d = -g.C1 * s1 + (std::cos(xi) - 1.0) + mu_v * y2;
  const double y2_d = std::sin(xi) - mu_v * y1;

  const double vk_d = 2.0 * (xi * P.a11 + eta * P.a12) * xi_d +
                      2.0 * (xi * P.a12 + eta * P.a22) * eta_d;
  VdotSample s;
  s.vdot = g.M * vk_d + g.k1 * (y1 * y1_d + y2 * y2_d) + eta_d * y2 +
           eta * y2_d + g.k2 * (y2_d * xi + y2 * xi_d);
  s.rhs_bound = -0.5 * g.M * (xi * xi + eta * eta) -
                0.5 * g.k1 * g.C1 * y1 * s1 - 0.5 * g.C2 * y2 * s2;
  s.in_decrease_set =
      s.vdot <= s.rhs_bound + 1e-9 * std::fmax(1.0, std::fabs(s.rhs_bound));
  return s;
}

VdotBox vdot_noncertified_box(const Gains& g, double kappa_max) {
  const auto b = iss_bounds(g, kappa_max, IssMode::asymptotic);
  VdotBox box;
  const double r1 = 4.0 * g.k2 * b.xi_bound / (g.k1 * g.C1);
  box.y1_dim = r1 < 1.0 ? r1 : kInf;
  if (!std::isfinite(box.y1_dim)) {
    box.y2_dim = kInf;
    return box;
  }
  const double r2 = (4.0 * g.k2 * b.xi_bound / g.C2) * box.y1_dim;
  box.y2_dim = r2 < 1.0 ? std::sqrt(r2) : r2;
  return box;
}

VdotGridResult vdot_grid_scan(const Gains& g, double kappa_max,
                              const SymMatrix2& P, double upsilon_L, int ny) {
  VdotGridResult r;
  r.box_formula = vdot_noncertified_box(g, kappa_max);
  const auto b = iss_bounds(g, kappa_max, IssMode::asymptotic);
  r.xi_star = b.xi_bound;
  r.eta_star = b.eta_bound;

  const double y1_range =
      std::isfinite(r.box_formula.y1_dim) ? 1.5 * r.box_formula.y1_dim : 1.0;
  const double y2_range =
      std::isfinite(r.box_formula.y2_dim) ? 1.5 * r.box_formula.y2_dim : 1.0;
  const std::array<double, 5> xis = {-r.xi_star, -0.5 * r.xi_star, 0.0,
                                     0.5 * r.xi_star, r.xi_star};
  const std::array<double, 3> etas = {-r.eta_star, 0.0, r.eta_star};
  const std::array<double, 3> krs = {-kappa_max, 0.0, kappa_max};

  for (int i = 0; i < ny; ++i) {
    const double y1 = -y1_range + 2.0 * y1_range * i / (ny - 1);
    for (int j = 0; j < ny; ++j) {
      const double y2 = -y2_range + 2.0 * y2_range * j / (ny - 1);
      for (double xi : xis) {
        for (double eta : etas) {
          for (double kr : krs) {
            ++r.points;
            const auto s = vdot_decrease_check(xi, eta, y1, y2, kr, g, P,
                                               upsilon_L);
            if (!s.in_decrease_set) {
              ++r.violations;
              r.violation_extent.y1_dim =
                  std::fmax(r.violation_extent.y1_dim, std::fabs(y1));
              r.violation_extent.y2_dim =
                  std::fmax(r.violation_extent.y2_dim, std::fabs(y2));
            }
            // Region where neither budget term dominates k2 |y1 xi|.
            const double lhs = g.k2 * std::fabs(y1 * xi);
            const bool f1 = lhs > 0.25 * g.k1 * g.C1 * y1 * sat(y1);
            const bool f2 = lhs > 0.25 * g.C2 * y2 * sat(y2);
            if (f1 && f2) {
              r.box.y1_dim = std::fmax(r.box.y1_dim, std::fabs(y1));
              r.box.y2_dim = std::fmax(r.box.y2_dim, std::fabs(y2));
            }
          }
        }
      }
    }
  }
  if (r.violations > 0) {
    r.contained = r.violation_extent.y1_dim <= r.box.y1_dim &&
                  r.violation_extent.y2_dim <= r.box.y2_dim;
  }
  return r;
}

BlowupMargin blowup_margin(double d, double kappa_max, double eta_inf_bound) {
  if (!(d > 0.0) || d * kappa_max >= 1.0)
    throw std::invalid_argument("blowup_margin requires d > 0 and d*kappa_max < 1");
  BlowupMargin m;
  m.margin = 1.0 - d * kappa_max - d * eta_inf_bound;
  m.verdict = m.margin > 0.0;
  if (!m.verdict) return m;

  auto h = [&](double k) {
    return d * eta_inf_bound + d * kappa_max - 1.0 + 1.0 / (1.0 + sqr(d * k));
  };
  if (h(0.0) <= 0.0) {
    m.trap_K = 0.0;  // every |kappa| > 0 already decays
    return m;
  }
  double hi = 1.0 / d;
  while (h(hi) > 0.0) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  m.trap_K = 0.5 * (lo + hi);
  return m;
}

DeactivationResult deactivation_bound(const Gains& g, double d1_inf,
                                      double d2_inf, double c_hat, double x0,
                                      double y0) {
  DeactivationResult r;
  r.predicted = c_hat / (g.k2 * g.D) * (d1_inf + d2_inf);

  const double a = g.a;
  const double t_end = 400.0;
  const double dt = std::fmin(0.01, 0.1 / g.D);
  const int n = static_cast<int>(t_end / dt);
  const int tail_from = 3 * n / 4;

  for (const double s1 : {1.0, -1.0}) {
    for (const double s2 : {1.0, -1.0}) {
      const double w1 = (g.k2 * g.C1 / g.D) * s1 * d1_inf;
      const double w2 = (g.C2 / g.D) * s2 * d2_inf;
      double X = x0, Y = y0, tail_sup = 0.0;
      auto f = [&](double x, double y, double* fx, double* fy) {
        *fx = y + w1;
        *fy = -(1.0 / a) * sat(x + y + w2);
      };
      for (int i = 0; i < n; ++i) {
        double a1, a2, b1, b2, c1, c2, e1, e2;
        f(X, Y, &a1, &a2);
        f(X + 0.5 * dt * a1, Y + 0.5 * dt * a2, &b1, &b2);
        f(X + 0.5 * dt * b1, Y + 0.5 * dt * b2, &c1, &c2);
        f(X + dt * c1, Y + dt * c2, &e1, &e2);
        X += (dt / 6.0) * (a1 + 2.0 * b1 + 2.0 * c1 + e1);
        Y += (dt / 6.0) * (a2 + 2.0 * b2 + 2.0 * c2 + e2);
        if (i >= tail_from)
          tail_sup = std::fmax(tail_sup, std::fabs(X) + std::fabs(Y));
      }
      r.empirical = std::fmax(r.empirical, tail_sup);
    }
  }
  return r;
}

BootstrapResult bootstrap_recursion(double C, double k2, double y10, double y20,
                                    int n_steps) {
  if (C <= 0.0 || k2 <= 0.0)
    throw std::invalid_argument("bootstrap_recursion requires C > 0, k2 > 0");
  BootstrapResult r;
  r.factor_bound = C * (1.0 + C / std::pow(k2, 2.5)) / std::sqrt(k2);
  r.contractive = r.factor_bound < 1.0;
  r.y1.push_back(y10);
  r.y2.push_back(y20);
  for (int n = 0; n < n_steps; ++n) {
    const double s = r.y1.back() + r.y2.back();
    const double xi = C * s / (k2 * k2 * k2);
    const double eta = C * s / (k2 * k2);
    r.xi.push_back(xi);
    r.eta.push_back(eta);
    const double y1n = C * xi;
    const double y2n = std::sqrt(C * k2 * k2 * xi * r.y1.back());
    if (s > 0.0)
      r.max_factor = std::fmax(r.max_factor, (y1n + y2n) / s);
    r.y1.push_back(y1n);
    r.y2.push_back(y2n);
  }
  return r;
}

GainCertificate certify(const Gains& g, double kappa_max, double d,
                        const AnalysisOptions& opt) {
  GainCertificate cert;
  const bool theorem_family =
      std::fabs(g.k1 - g.a * g.k2 * g.k2) <= 1e-9 * g.k1;
  auto add = [&](const std::string& name, double value, double bound,
                 bool pass, bool info = false) {
    cert.rows.push_back({name, value, bound, pass, info});
  };

  add("h1_d_kappa_max", d * kappa_max, 1.0, d * kappa_max < 1.0);

  // Gain relations: hard in theorem mode, recorded otherwise.
  const bool info_rel = g.mode != GainMode::theorem;
  const double rel_k1 = g.k1 / (g.a * g.k2 * g.k2);
  const double rel_c1 = 4.0 * g.k2 * g.C1 / (g.a * g.C2);
  add("gain_relation_k1", rel_k1, 1.0, std::fabs(rel_k1 - 1.0) <= 1e-12,
      info_rel);
  add("gain_relation_c1", rel_c1, 1.0, std::fabs(rel_c1 - 1.0) <= 1e-12,
      info_rel);
  if (g.mode == GainMode::theorem) {
    const double rel_c2 = 2.0 * g.beta * g.k2 * g.C2;
    const double rel_m = g.M / (g.beta * g.k2);
    add("gain_relation_c2", rel_c2, 1.0, std::fabs(rel_c2 - 1.0) <= 1e-12);
    add("gain_relation_m", rel_m, 1.0, std::fabs(rel_m - 1.0) <= 1e-12);
  }

  cert.upsilon_L = l2_gain_closed_form(g.k1, g.k2);
  const double ups_series = l2_gain_upper_bound(g.k1, g.k2);
  const auto sweep = l2_gain_sweep(g.k1, g.k2);
  cert.lambda_min = sweep.lambda_min;
  const double agree =
      std::fabs(cert.upsilon_L - sweep.upsilon) / cert.upsilon_L;
  add("l2_gain_interval", cert.upsilon_L, 1.2,
      cert.upsilon_L > 1.0 && cert.upsilon_L < 1.2, !theorem_family);
  add("l2_gain_agreement", agree, opt.gain_rel_tol, agree <= opt.gain_rel_tol);
  add("l2_gain_series", ups_series, 1.2, ups_series < 1.2, true);
  add("lambda_min_interval", sweep.lambda_min, 1.0,
      sweep.lambda_min > 0.93 && sweep.lambda_min < 1.0, !theorem_family);

  // Eigen-structure of A for the synthesized family: roots -k2/4, -3k2/4.
  if (theorem_family) {
    auto chpoly = [&](double lam) { return lam * lam + g.k2 * lam + g.k1; };
    const double e1 = std::fabs(chpoly(-0.25 * g.k2)) / g.k1;
    const double e2 = std::fabs(chpoly(-0.75 * g.k2)) / g.k1;
    add("eigen_structure", std::fmax(e1, e2), 1e-12,
        std::fmax(e1, e2) <= 1e-12);
  }

  const auto rr = riccati_solve(g.k1, g.k2, ups_series);
  cert.P_k = rr.P;
  cert.riccati_residual = rr.residual;
  add("riccati_s_pd", rr.s_positive_definite ? 1.0 : 0.0, 1.0,
      rr.s_positive_definite);
  add("riccati_residual", rr.residual, opt.riccati_tol,
      rr.ok && rr.residual <= opt.riccati_tol);
  add("p_positive_definite", rr.P.det(), 0.0, rr.ok && rr.P.positive_definite());

  cert.V_matrix = lyapunov_matrix(g, rr.P);
  const auto pd = v_positive_definite(cert.V_matrix);
  cert.V_min_eig = pd.min_eig;
  add("v_min_eig", pd.min_eig, 0.0, pd.verdict);
  const auto sw = v_sandwich(cert.V_matrix, g.k2);
  add("v_sandwich_lo", sw.lo, 0.0, sw.ok);
  add("v_sandwich_hi", sw.hi, 0.0, sw.hi > 0.0, true);

  const auto iss = iss_bounds(g, kappa_max, IssMode::asymptotic);
  cert.iss_xi = iss.xi_bound;
  cert.iss_eta = iss.eta_bound;
  add("iss_xi_bound", iss.xi_bound, 0.0, iss.xi_bound > 0.0, true);
  add("iss_eta_bound", iss.eta_bound, 0.0, iss.eta_bound > 0.0, true);
  const auto mc = iss_monte_carlo(g, kappa_max, opt.mc_runs, opt.seed);
  add("iss_mc_xi", mc.sup_xi, mc.bound_xi, mc.sup_xi <= mc.bound_xi);
  add("iss_mc_eta", mc.sup_eta, mc.bound_eta, mc.sup_eta <= mc.bound_eta);

  const auto bm = blowup_margin(d, kappa_max, iss.eta_bound);
  cert.blowup_margin_value = bm.margin;
  add("blowup_margin", bm.margin, 0.0, bm.verdict);
  add("blowup_trap_level", bm.trap_K, 0.0, true, true);

  cert.sat_margin = opt.c_hat / (g.k2 * g.D) * (kappa_max + 1.0);
  add("sat_deactivation_margin", cert.sat_margin, 1.0, cert.sat_margin < 1.0,
      true);
  add("sat_coupling", 1.0 / (g.k2 * g.D), 0.01,
      1.0 / (g.k2 * g.D) <= 0.01, true);

  cert.verdict_all = true;
  for (const auto& row : cert.rows) {
    if (!row.informational && !row.pass) cert.verdict_all = false;
  }
  return cert;
}

}  // namespace tpf
