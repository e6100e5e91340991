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

#include "tpf/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace tpf {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // %.17g honors the C locale of the process; normalize just in case.
  for (char& c : buf) {
    if (c == ',') c = '.';
  }
  return buf;
}

std::string trace_to_csv(const Trace& trace) {
  std::string out;
  out.reserve(64 * (trace.rows.size() + 1));
  const auto& names = TraceRow::column_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  out += '\n';
  for (const TraceRow& row : trace.rows) {
    const auto vals = row.values();
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (i) out += ',';
      out += fmt_double(vals[i]);
    }
    out += '\n';
  }
  return out;
}

std::string monitors_to_csv(const MonitorReport& r) {
  std::string out = "monitor,value\n";
  out += "v_decrease_violations," + std::to_string(r.v_decrease_violations) + "\n";
  out += "sat_deactivation_time," + fmt_double(r.sat_deactivation_time) + "\n";
  out += "kappa_sup," + fmt_double(r.kappa_sup) + "\n";
  out += "control_bounds_ok," + std::string(r.control_bounds_ok ? "1" : "0") + "\n";
  out += "final_error_norm," + fmt_double(r.final_error_norm) + "\n";
  out += "xi_final," + fmt_double(r.xi_final) + "\n";
  out += "eta_final," + fmt_double(r.eta_final) + "\n";
  return out;
}

std::string certificate_to_csv(const GainCertificate& cert) {
  std::string out = "check,value,bound,pass,informational\n";
  for (const CertRow& row : cert.rows) {
    out += row.check + ',' + fmt_double(row.value) + ',' +
           fmt_double(row.bound) + ',' + (row.pass ? "1" : "0") + ',' +
           (row.informational ? "1" : "0") + '\n';
  }
  return out;
}

std::string sweep_to_csv(const std::string& axis,
                         const std::vector<SweepRow>& rows) {
  std::string out =
      axis +
      ",ok,blowup,v_decrease_violations,sat_deactivation_time,kappa_sup,"
      "control_bounds_ok,final_error_norm,xi_final,eta_final,error\n";
  for (const SweepRow& r : rows) {
    out += fmt_double(r.value);
    out += r.ok ? ",1" : ",0";
    out += r.blowup ? ",1" : ",0";
    out += ',' + std::to_string(r.report.v_decrease_violations);
    out += ',' + fmt_double(r.report.sat_deactivation_time);
    out += ',' + fmt_double(r.report.kappa_sup);
    out += r.report.control_bounds_ok ? ",1" : ",0";
    out += ',' + fmt_double(r.report.final_error_norm);
    out += ',' + fmt_double(r.report.xi_final);
    out += ',' + fmt_double(r.report.eta_final);
    out += ',';
    // Commas inside error messages would break the row shape.
    std::string msg = r.error;
    for (char& c : msg) {
      if (c == ',' || c == '\n') c = ';';
    }
    out += msg;
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write: " + path);
}

}  // namespace tpf
