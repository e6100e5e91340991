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

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpf/config.hpp"
#include "tpf/csv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitBlowup = 3;

struct GlobalOpts {
  std::string config;
  std::string out_dir = "out";
  std::vector<std::string> sets;
  bool quiet = false;
  bool seed_given = false;
  unsigned seed = 0;
};

void say(const GlobalOpts& g, const std::string& line) {
  if (!g.quiet) std::printf("%s\n", line.c_str());
}

tpf::AppConfig load(const GlobalOpts& g) {
  if (g.config.empty())
    throw tpf::ConfigError("--config is required for this command");
  tpf::AppConfig app = tpf::load_config(g.config, g.sets);
  if (g.seed_given) {
    app.sim.seed = g.seed;
    app.analysis.seed = g.seed;
  }
  return app;
}

std::string gains_block(const tpf::Gains& g) {
  std::string out;
  out += "mode=" + std::string(g.mode == tpf::GainMode::theorem ? "theorem"
                                                                : "manual") + "\n";
  out += "a=" + tpf::fmt_double(g.a) + "\n";
  out += "k1=" + tpf::fmt_double(g.k1) + "\n";
  out += "k2=" + tpf::fmt_double(g.k2) + "\n";
  out += "C1=" + tpf::fmt_double(g.C1) + "\n";
  out += "C2=" + tpf::fmt_double(g.C2) + "\n";
  out += "D=" + tpf::fmt_double(g.D) + "\n";
  out += "M=" + tpf::fmt_double(g.M) + "\n";
  if (g.mode == tpf::GainMode::theorem)
    out += "beta=" + tpf::fmt_double(g.beta) + "\n";
  const double coupling = 1.0 / (g.k2 * g.D);
  out += "coupling_1_over_k2D=" + tpf::fmt_double(coupling) +
         (g.coupling_warning ? " (weak: exceeds 0.01)" : " (ok)") + "\n";
  return out;
}

int cmd_gains(const GlobalOpts& g, double k2, double beta, double D) {
  const tpf::Gains gains = tpf::synthesize_gains(k2, beta, D);
  std::fputs(gains_block(gains).c_str(), stdout);
  (void)g;
  return kExitOk;
}

int cmd_simulate(const GlobalOpts& g) {
  const tpf::AppConfig app = load(g);
  for (const std::string& w : app.warnings) say(g, "warning: " + w);

  const tpf::RunResult res = tpf::run(app.sim);
  for (const std::string& w : res.warnings) say(g, "warning: " + w);

  std::filesystem::create_directories(g.out_dir);
  tpf::write_file(g.out_dir + "/trace.csv", tpf::trace_to_csv(res.trace));
  tpf::write_file(g.out_dir + "/monitors.csv", tpf::monitors_to_csv(res.report));

  std::string rep;
  rep += "gains:\n" + gains_block(app.sim.gains);
  rep += "rows=" + std::to_string(res.trace.rows.size()) + "\n";
  rep += "v_available=" + std::string(res.v_available ? "1" : "0") + "\n";
  rep += "monitor_box_y1=" + tpf::fmt_double(res.monitor_box.y1_dim) + "\n";
  rep += "monitor_box_y2=" + tpf::fmt_double(res.monitor_box.y2_dim) + "\n";
  rep += "v_decrease_violations=" +
         std::to_string(res.report.v_decrease_violations) + "\n";
  rep += "sat_deactivation_time=" +
         tpf::fmt_double(res.report.sat_deactivation_time) + "\n";
  rep += "kappa_sup=" + tpf::fmt_double(res.report.kappa_sup) + "\n";
  rep += "kappa_trap_applicable=" +
         std::string(res.kappa_trap_applicable ? "1" : "0") + "\n";
  rep += "kappa_trap_K=" + tpf::fmt_double(res.kappa_trap_K) + "\n";
  rep += "control_bounds_ok=" +
         std::string(res.report.control_bounds_ok ? "1" : "0") + "\n";
  rep += "final_error_norm=" + tpf::fmt_double(res.report.final_error_norm) + "\n";
  rep += "xi_final=" + tpf::fmt_double(res.report.xi_final) + "\n";
  rep += "eta_final=" + tpf::fmt_double(res.report.eta_final) + "\n";
  for (const std::string& w : res.warnings) rep += "warning: " + w + "\n";
  if (res.blowup) {
    rep += "blowup=1\nblowup_t=" + tpf::fmt_double(res.blowup_t) +
           "\nblowup_component=" + res.blowup_component + "\n";
  } else {
    rep += "blowup=0\n";
  }
  tpf::write_file(g.out_dir + "/report.txt", rep);

  if (res.blowup) {
    say(g, "blowup at t=" + tpf::fmt_double(res.blowup_t) + " in " +
               res.blowup_component);
    return kExitBlowup;
  }
  const bool trap_ok = !res.kappa_trap_applicable ||
                       res.report.kappa_sup < res.kappa_trap_K;
  const bool ok = res.report.v_decrease_violations == 0 &&
                  res.report.control_bounds_ok && trap_ok;
  say(g, std::string("monitors ") + (ok ? "clean" : "FAILED") + ", wrote " +
             g.out_dir + "/trace.csv");
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_certify(const GlobalOpts& g) {
  const tpf::AppConfig app = load(g);
  for (const std::string& w : app.warnings) say(g, "warning: " + w);

  const tpf::GainCertificate cert =
      tpf::certify(app.sim.gains, app.sim.path.kappa_max, app.sim.d,
                   app.analysis);

  std::filesystem::create_directories(g.out_dir);
  tpf::write_file(g.out_dir + "/certificate.csv", tpf::certificate_to_csv(cert));

  std::string sum;
  for (const tpf::CertRow& row : cert.rows) {
    sum += row.check + ": value=" + tpf::fmt_double(row.value) +
           " bound=" + tpf::fmt_double(row.bound) + " " +
           (row.pass ? "pass" : "FAIL") +
           (row.informational ? " (informational)" : "") + "\n";
  }
  sum += std::string("verdict: ") + (cert.verdict_all ? "PASS" : "FAIL") + "\n";
  tpf::write_file(g.out_dir + "/summary.txt", sum);

  say(g, std::string("certificate ") + (cert.verdict_all ? "PASS" : "FAIL") +
             ", wrote " + g.out_dir + "/certificate.csv");
  if (!g.quiet) std::fputs(sum.c_str(), stdout);
  return cert.verdict_all ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const GlobalOpts& g, const std::string& axis,
              const std::vector<double>& values) {
  const tpf::AppConfig app = load(g);
  for (const std::string& w : app.warnings) say(g, "warning: " + w);
  if (values.empty())
    throw tpf::ConfigError("sweep needs at least one --values entry");

  const std::vector<tpf::SweepRow> rows = tpf::sweep(app.sim, axis, values);
  std::filesystem::create_directories(g.out_dir);
  tpf::write_file(g.out_dir + "/sweep.csv", tpf::sweep_to_csv(axis, rows));

  std::size_t ok = 0;
  for (const auto& r : rows) ok += r.ok ? 1 : 0;
  say(g, "sweep done: " + std::to_string(ok) + "/" +
             std::to_string(rows.size()) + " rows clean, wrote " + g.out_dir +
             "/sweep.csv");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Saturated target-point path following: simulation and "
               "numerical certification"};
  cli.require_subcommand(1);

  GlobalOpts g;
  cli.add_option("--config", g.config, "INI configuration file");
  cli.add_option("--out", g.out_dir, "output directory (default: out)");
  cli.add_option("--set", g.sets,
                 "override a config entry as section.key=value (repeatable)");
  cli.add_flag("--quiet", g.quiet, "suppress informational output");
  auto* seed_opt =
      cli.add_option("--seed", g.seed, "override sim and analysis seeds");

  auto* sub_gains =
      cli.add_subcommand("gains", "synthesize the gain set for (k2, beta, D)");
  double k2 = 20.0, beta = 8.1, D = 1.0;
  sub_gains->add_option("--k2", k2, "curvature-error gain, >= 20")->required();
  sub_gains->add_option("--beta", beta, "margin parameter, > 8")->required();
  sub_gains->add_option("--D", D, "saturation level D, > 0")->required();

  auto* sub_sim = cli.add_subcommand("simulate", "integrate the closed loop");
  auto* sub_cert =
      cli.add_subcommand("certify", "run the numerical certificate checks");
  auto* sub_sweep = cli.add_subcommand("sweep", "batch runs over one axis");
  std::string axis;
  std::vector<double> values;
  sub_sweep->add_option("--axis", axis,
                        "one of: k2, D, dt, xi0, kappa_max, d")->required();
  sub_sweep
      ->add_option("--values", values, "comma-separated axis values")
      ->required()
      ->delimiter(',');

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*sub_gains) return cmd_gains(g, k2, beta, D);
    if (*sub_sim) return cmd_simulate(g);
    if (*sub_cert) return cmd_certify(g);
    if (*sub_sweep) return cmd_sweep(g, axis, values);
  } catch (const tpf::ConfigError& e) {
    if (e.line > 0)
      std::fprintf(stderr, "config error (line %d, key '%s'): %s\n", e.line,
                   e.key.c_str(), e.what());
    else
      std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
