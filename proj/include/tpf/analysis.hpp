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

#ifndef TPF_ANALYSIS_HPP_
#define TPF_ANALYSIS_HPP_

#include <string>
#include <vector>

#include "tpf/controller.hpp"
#include "tpf/linalg.hpp"

namespace tpf {

// ---------------------------------------------------------------------------
// L2 gain of the linear error subsystem Z' = A Z + disturbance,
// A = [[0, 1], [-k1, -k2]].
// ---------------------------------------------------------------------------

// Exact algebraic supremum of the frequency response:
// Upsilon^2 = (B + sqrt(B^2 - 4 k1^2)) / (2 k1^2) with B = 1 + k1^2 + k2^2.
// Agrees with l2_gain_sweep to full precision.
double l2_gain_closed_form(double k1, double k2);

// Series-form gain estimate. Exceeds the exact gain by O(1/k2^2) for the
// synthesized gain family; used by riccati_solve, where the extra slack
// keeps the matrix S positive definite.
double l2_gain_upper_bound(double k1, double k2);

// Smallest eigenvalue of the frequency-domain matrix at angular frequency w,
// evaluated in a cancellation-free form.
double lambda_min_at(double k1, double k2, double w);

struct SweepResult {
  double upsilon = 0.0;
  double lambda_min = 0.0;   // min over frequency
  double omega_at_min = 0.0;
};

// Frequency-sweep oracle: coarse grid over [0, 10*k2] plus golden-section
// refinement of lambda_min; upsilon = 1/sqrt(min lambda).
// Throws std::invalid_argument when k1 <= 0 or k2 <= 0 (A not Hurwitz).
SweepResult l2_gain_sweep(double k1, double k2, int grid_n = 4000);

// ---------------------------------------------------------------------------
// Riccati equation P A + A^T P + P^2 / Upsilon^2 = -I.
// ---------------------------------------------------------------------------

struct RiccatiResult {
  SymMatrix2 P;
  double residual = 0.0;  // operator norm of P A + A^T P + P^2/Ups^2 + I
  bool s_positive_definite = false;
  bool ok = false;        // S PD, |sin phi| <= 1, and P PD
  double sin_phi = 0.0;
  std::string note;
};

// Closed-form 2x2 solve via S = -I + Ups^2 A^T A, its matrix square root
// (S + sqrt(det S) I)/sqrt(tr S + 2 sqrt(det S)), and a rotation R_phi with
// sin phi = -Ups (1 + k1)/tr(sqrt S); then P = Ups (R_phi sqrt S - Ups A).
// Internals run in long double; det S uses the expanded cancellation-free
// polynomial in u = Ups^2 - 1. Failure (S not PD, no PD branch) is reported
// in the result, not thrown.
RiccatiResult riccati_solve(double k1, double k2, double upsilon_L);

struct AsymptoticsResult {
  double F1 = 0.0, F2 = 0.0, F3 = 0.0;   // fitted P = [[F1 k2, F2],[F2, F3/k2]]
  double slope_p11 = 0.0, slope_p12 = 0.0, slope_p22 = 0.0;  // log-log slopes
  bool structure_ok = false;  // det P > 0 at every sample
  bool slopes_ok = false;     // slopes within tolerance of (1, 0, -1)
};

// Fits the large-k2 structure of P over k2_list (each >= 100, ascending),
// with k1 = (3/16) k2^2 and the series-form gain.
AsymptoticsResult pk_asymptotics(const std::vector<double>& k2_list,
                                 double slope_tol = 0.05);

// ---------------------------------------------------------------------------
// Lyapunov function V = M Z^T P Z + k1 (y1^2 + y2^2)/2 + eta y2 + k2 y2 xi,
// coordinates ordered (xi, eta, y1, y2).
// ---------------------------------------------------------------------------

SymMatrix4 lyapunov_matrix(const Gains& g, const SymMatrix2& P);

struct PdResult {
  double min_eig = 0.0;
  bool verdict = false;
};

PdResult v_positive_definite(const SymMatrix4& Q);

struct SandwichResult {
  // Positive constants with
  //   lo*(k2 xi^2 + eta^2/k2 + k2^2(y1^2+y2^2)) <= V <= hi*(same form).
  double lo = 0.0, hi = 0.0;
  bool ok = false;  // lo > 0
};

// Tight sandwich constants from the extreme eigenvalues of the weighted
// matrix D^-1 Q D^-1, D = diag(sqrt(k2), 1/sqrt(k2), k2, k2).
SandwichResult v_sandwich(const SymMatrix4& Q, double k2);

// ---------------------------------------------------------------------------
// ISS bounds for (xi, eta) under disturbances |d1| <= kappa_max*C1, |d2| <= C2.
// ---------------------------------------------------------------------------

enum class IssMode { transient, asymptotic, refined };

struct IssBounds {
  double xi_bound = 0.0;
  double eta_bound = 0.0;
};

// asymptotic: xi <= (8/k2)(kappa_max C1 + 4 C2/(3 k2)),
//             eta <= 2 kappa_max C1 + 32 C2/(3 k2).
// transient: the half-size constants valid during the decay phase
//            (reported for reference; the asymptotic mode is the one
//            validated by simulation).
// refined:   substitutes C1*y1_sup for kappa_max*C1 and C2*y2_sup for C2;
//            requires y1_sup < kappa_max and y2_sup < 1, else throws.
IssBounds iss_bounds(const Gains& g, double kappa_max, IssMode mode,
                     double y1_sup = 0.0, double y2_sup = 0.0);

struct IssMcResult {
  double sup_xi = 0.0, sup_eta = 0.0;
  double bound_xi = 0.0, bound_eta = 0.0;
  bool ok = false;  // no observed sup exceeds the asymptotic bound
};

// Monte-Carlo oracle: integrates Z' = A Z + (d1, d2) from Z0 = 0 for `runs`
// random piecewise-constant disturbances with |d1| <= kappa_max C1,
// |d2| <= C2, and compares observed sups against the asymptotic bounds.
// Deterministic for a fixed seed.
IssMcResult iss_monte_carlo(const Gains& g, double kappa_max, int runs,
                            unsigned seed);

// ---------------------------------------------------------------------------
// Lyapunov decrease: exact dV/ds along the error system versus the budget
//   -M/2 (xi^2+eta^2) - k1 C1/2 y1 sat(y1) - C2/2 y2 sat(y2).
// ---------------------------------------------------------------------------

struct VdotSample {
  double vdot = 0.0;       // exact dV/ds by chain rule
  double rhs_bound = 0.0;  // decrease budget
  bool in_decrease_set = false;
};

VdotSample vdot_decrease_check(double xi, double eta, double y1, double y2,
                               double kappa_r, const Gains& g,
                               const SymMatrix2& P, double upsilon_L);

struct VdotBox {
  double y1_dim = 0.0;
  double y2_dim = 0.0;
};

// Non-certified box: the (y1, y2) region where, at the ISS-asymptotic level
// of |xi|, neither budget term dominates the cross term k2|y1 xi|. Outside
// this box the decrease inequality is certified; the box shrinks as
// k2^-2 x k2^-3/2 along the synthesized gain family.
VdotBox vdot_noncertified_box(const Gains& g, double kappa_max);

struct VdotGridResult {
  long points = 0;
  long violations = 0;            // exact-inequality failures
  VdotBox violation_extent;       // componentwise max |y1|, |y2| over failures
  VdotBox box;                    // non-certified box measured on the grid
  VdotBox box_formula;            // same box from the closed-form thresholds
  double xi_star = 0.0;           // ISS levels spanned by the grid
  double eta_star = 0.0;
  bool contained = true;          // every violation inside `box`
};

// Scans ny x ny points of (y1, y2) over 1.5x the non-certified box, crossed
// with 5 xi levels, 3 eta levels and 3 kappa_r levels (45 ny^2 points).
VdotGridResult vdot_grid_scan(const Gains& g, double kappa_max,
                              const SymMatrix2& P, double upsilon_L,
                              int ny = 65);

// ---------------------------------------------------------------------------
// Curvature no-blow-up margin and trap level.
// ---------------------------------------------------------------------------

struct BlowupMargin {
  double margin = 0.0;  // 1 - d kappa_max - d eta_inf
  bool verdict = false;
  double trap_K = 0.0;  // |kappa| level below which trajectories are trapped
};

// Requires H1 (d*kappa_max < 1); throws std::invalid_argument otherwise.
// trap_K is the bisected root of d eta_inf + d kappa_max - 1 + 1/(1+(d k)^2).
BlowupMargin blowup_margin(double d, double kappa_max, double eta_inf_bound);

// ---------------------------------------------------------------------------
// Saturation deactivation of the rescaled (X, Y) system
//   X' = Y + (k2 C1/D) d1,  Y' = -(1/a) sat(X + Y + (C2/D) d2).
// ---------------------------------------------------------------------------

struct DeactivationResult {
  double predicted = 0.0;  // c_hat/(k2 D) (d1_inf + d2_inf) -- heuristic c_hat
  double empirical = 0.0;  // limsup |X|+|Y| under worst-case constant inputs
};

DeactivationResult deactivation_bound(const Gains& g, double d1_inf,
                                      double d2_inf, double c_hat = 10.0,
                                      double x0 = 0.0, double y0 = 0.0);

// ---------------------------------------------------------------------------
// Bootstrap contraction.
// ---------------------------------------------------------------------------

struct BootstrapResult {
  std::vector<double> y1, y2, xi, eta;  // n_steps+1 entries for y1/y2
  double max_factor = 0.0;              // max step ratio of y1_n + y2_n
  double factor_bound = 0.0;            // C(1 + C/k2^{5/2})/sqrt(k2)
  bool contractive = false;             // factor_bound < 1
};

// Iterates xi_n = C(y1_n+y2_n)/k2^3, eta_n = C(y1_n+y2_n)/k2^2,
// y1_{n+1} = C xi_n, y2_{n+1} = sqrt(C k2^2 xi_n y1_n), with equalities in
// place of the defining inequalities.
BootstrapResult bootstrap_recursion(double C, double k2, double y10, double y20,
                                    int n_steps);

// ---------------------------------------------------------------------------
// Aggregate certification.
// ---------------------------------------------------------------------------

struct AnalysisOptions {
  double riccati_tol = 1e-8;
  double gain_rel_tol = 1e-6;
  double slope_tol = 0.05;
  double c_hat = 10.0;
  int grid_n = 65;
  int mc_runs = 100;
  unsigned seed = 42;
};

struct CertRow {
  std::string check;
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool informational = false;  // recorded, never drives the overall verdict
};

struct GainCertificate {
  double upsilon_L = 0.0;
  double lambda_min = 0.0;
  SymMatrix2 P_k;
  double riccati_residual = 0.0;
  SymMatrix4 V_matrix;
  double V_min_eig = 0.0;
  double iss_xi = 0.0, iss_eta = 0.0;
  double blowup_margin_value = 0.0;
  double sat_margin = 0.0;  // predicted deactivation limsup
  bool verdict_all = false;
  std::vector<CertRow> rows;
};

// Runs every analytical check for one gain set against a path bound.
// Theorem-mode gain relations are hard checks; in manual mode the relation
// rows are informational (recorded verdicts only).
GainCertificate certify(const Gains& g, double kappa_max, double d,
                        const AnalysisOptions& opt = {});

}  // namespace tpf

#endif  // TPF_ANALYSIS_HPP_
